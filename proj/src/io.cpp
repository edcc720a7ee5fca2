#include "nlft/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace nlft::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
  return v;
}

Index integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<Index>();
}

CoefficientSequence sequence_from(const json& j) {
  if (!j.is_object()) throw InputError("sequence must be a JSON object");
  if (!j.contains("support") || !j.contains("coeffs")) throw InputError("sequence needs \"support\" and \"coeffs\"");
  const auto& coeffs = j.at("coeffs");
  if (!coeffs.is_array()) throw InputError("\"coeffs\" must be an array");
  const auto& support = j.at("support");
  if (support.is_null()) {
    if (!coeffs.empty()) throw InputError("empty support with nonempty coeffs");
    return {};
  }
  if (!support.is_array() || support.size() != 2) throw InputError("\"support\" must be [m, M] or null");
  const Index lo = integer(support[0], "support_lo");
  const Index hi = integer(support[1], "support_hi");
  if (hi < lo) throw InputError("support_hi < support_lo");
  if (coeffs.size() != static_cast<std::size_t>(hi - lo + 1))
    throw InputError("\"coeffs\" has " + std::to_string(coeffs.size()) + " entries for support [" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]");
  std::vector<Complex> values;
  values.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (c.is_number()) {
      values.emplace_back(number(c, "coefficient"), 0.0);
    } else if (c.is_array() && c.size() == 2) {
      values.emplace_back(number(c[0], "coefficient real part"), number(c[1], "coefficient imaginary part"));
    } else {
      throw InputError("each coefficient must be [re, im]");
    }
  }
  return {lo, std::move(values)};
}

std::string quoted(const std::string& s) { return json(s).dump(); }

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Config

void Config::validate() const {
  if (grid_size != 0 && (!is_power_of_two(grid_size) || grid_size < 2))
    throw InputError("grid_size must be a power of two >= 2 or \"auto\"");
  if (!(szego_margin > 0.0) || !(szego_margin < 1.0)) throw InputError("szego_margin must lie in (0, 1)");
  if (!(solver_tol > 0.0)) throw InputError("solver_tol must be positive");
  if (!(round_trip_tol > 0.0)) throw InputError("round_trip_tol must be positive");
  parse_weight(weight);
  if (window && window->empty()) throw InputError("window must satisfy m <= M");
}

Config parse_config(const std::string& text, Config base) {
  const json j = parse_json(text, "config");
  if (!j.is_object()) throw InputError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "grid_size") {
      if (value.is_string() && value.get<std::string>() == "auto")
        base.grid_size = 0;
      else if (value.is_number_unsigned())
        base.grid_size = value.get<std::size_t>();
      else
        throw InputError("grid_size must be a power of two or \"auto\"");
    } else if (key == "szego_margin") {
      base.szego_margin = number(value, key.c_str());
    } else if (key == "solver_tol") {
      base.solver_tol = number(value, key.c_str());
    } else if (key == "round_trip_tol") {
      base.round_trip_tol = number(value, key.c_str());
    } else if (key == "weight") {
      if (!value.is_string()) throw InputError("weight must be a string");
      base.weight = value.get<std::string>();
    } else if (key == "window") {
      if (value.is_null())
        base.window.reset();
      else if (value.is_string())
        base.window = parse_interval(value.get<std::string>());
      else if (value.is_array() && value.size() == 2)
        base.window = Interval{integer(value[0], "window lo"), integer(value[1], "window hi")};
      else
        throw InputError("window must be \"m..M\" or [m, M]");
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw InputError("seed must be a nonnegative integer");
      base.seed = value.get<std::uint64_t>();
    } else {
      throw InputError("unknown config key \"" + key + "\"");
    }
  }
  base.validate();
  return base;
}

Config load_config(const std::filesystem::path& path, Config base) { return parse_config(read_file(path), base); }

Config config_from_env() {
  const char* path = std::getenv("NLFT_CONFIG");
  if (path == nullptr || *path == '\0') return {};
  return load_config(path);
}

BeurlingWeight parse_weight(const std::string& spec) {
  if (spec == "one") return BeurlingWeight::one();
  const std::string prefix = "poly:alpha=";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string tail = spec.substr(prefix.size());
    char* end = nullptr;
    const double alpha = std::strtod(tail.c_str(), &end);
    if (tail.empty() || end != tail.c_str() + tail.size() || !std::isfinite(alpha) || alpha < 0.0)
      throw InputError("bad weight exponent in \"" + spec + "\"");
    return BeurlingWeight::polynomial(alpha);
  }
  throw InputError("unknown weight \"" + spec + "\" (expected one or poly:alpha=<a>)");
}

Interval parse_interval(const std::string& spec) {
  const auto dots = spec.find("..");
  if (dots == std::string::npos) throw InputError("interval must look like m..M, got \"" + spec + "\"");
  auto part = [&](const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw InputError("interval bound \"" + s + "\" is not an integer");
    }
    if (used != s.size()) throw InputError("interval bound \"" + s + "\" is not an integer");
    return static_cast<Index>(v);
  };
  const Interval out{part(spec.substr(0, dots)), part(spec.substr(dots + 2))};
  if (out.empty()) throw InputError("interval \"" + spec + "\" has m > M");
  return out;
}

// ---------------------------------------------------------------------------
// Sequences and pairs

std::string write_sequence(const CoefficientSequence& s) {
  std::ostringstream os;
  if (s.empty()) {
    os << "{\"support\": null, \"coeffs\": []}";
    return os.str();
  }
  os << "{\"support\": [" << s.support_lo() << ", " << s.support_hi() << "], \"coeffs\": [";
  bool first = true;
  for (const auto& c : s.coeffs()) {
    if (!first) os << ", ";
    first = false;
    os << "[" << format_number(c.real()) << ", " << format_number(c.imag()) << "]";
  }
  os << "]}";
  return os.str();
}

CoefficientSequence parse_sequence(const std::string& text) { return sequence_from(parse_json(text, "sequence")); }

std::string write_pair(const NlftPair& pair) {
  return "{\"a\": " + write_sequence(pair.a) + ",\n \"b\": " + write_sequence(pair.b) +
         ",\n \"grid_residual\": " + format_number(pair.grid_residual) + "}";
}

NlftPair parse_pair(const std::string& text) {
  const json j = parse_json(text, "pair");
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) throw InputError("pair needs \"a\" and \"b\"");
  NlftPair out{sequence_from(j.at("a")), sequence_from(j.at("b")), 0.0};
  if (j.contains("grid_residual") && !j.at("grid_residual").is_null())
    out.grid_residual = number(j.at("grid_residual"), "grid_residual");
  return out;
}

bool looks_like_pair(const std::string& text) {
  const json j = parse_json(text, "input");
  return j.is_object() && j.contains("a") && j.contains("b");
}

// ---------------------------------------------------------------------------
// Reports

std::string write_report(const VerificationReport& report) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& r : report.records) {
    os << (first ? "\n" : ",\n");
    first = false;
    const char* comparison = r.comparison == Comparison::residual_at_most  ? "residual_at_most"
                             : r.comparison == Comparison::margin_at_least ? "margin_at_least"
                                                                           : "monitored";
    os << "  {\"name\": " << quoted(r.name) << ", \"anchor\": " << quoted(r.anchor)
       << ", \"kind\": " << quoted(r.kind == CheckKind::hard ? "hard" : "monitored")
       << ", \"comparison\": " << quoted(comparison) << ", \"applicable\": " << (r.applicable ? "true" : "false")
       << ", \"pass\": " << (r.pass ? "true" : "false") << ", \"lhs\": " << format_number(r.lhs)
       << ", \"rhs\": " << format_number(r.rhs) << ", \"residual\": " << format_number(r.residual)
       << ", \"tolerance\": " << format_number(r.tolerance) << ", \"note\": " << quoted(r.note) << "}";
  }
  os << "\n]\n";
  return os.str();
}

std::string write_decay_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << "n,abs_F_n,first_order_rhs,convergence_a1\n";
  for (const auto& row : report.decay) {
    os << row.n << "," << format_number(row.abs_f) << ",";
    if (row.first_order_rhs) os << format_number(*row.first_order_rhs);
    os << ",";
    if (row.convergence_a1) os << format_number(*row.convergence_a1);
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Files

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace nlft::io
