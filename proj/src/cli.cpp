#include "nlft/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <optional>

#include "nlft/estimates.hpp"
#include "nlft/forward.hpp"
#include "nlft/inverse_rh.hpp"
#include "nlft/io.hpp"
#include "nlft/spectral_factor.hpp"

namespace nlft::cli {

namespace {

struct Flags {
  std::string input, b, a, out, support, weight, csv;
  std::optional<std::size_t> grid;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  bool imaginary = false;
};

io::Config merged(const Flags& f) {
  auto cfg = io::config_from_env();
  if (f.grid) cfg.grid_size = *f.grid;
  if (f.tol) cfg.solver_tol = *f.tol;
  if (!f.weight.empty()) cfg.weight = f.weight;
  if (!f.support.empty()) cfg.window = io::parse_interval(f.support);
  if (f.seed) cfg.seed = *f.seed;
  cfg.validate();
  return cfg;
}

RhOptions rh_options(const io::Config& cfg) {
  RhOptions o;
  o.grid_size = cfg.grid_size;
  o.solver_tol = cfg.solver_tol;
  o.szego_margin = cfg.szego_margin;
  return o;
}

SuiteOptions suite_options(const io::Config& cfg) {
  SuiteOptions o;
  o.grid_size = cfg.grid_size == 0 ? kDefaultSpectralGrid : cfg.grid_size;
  o.szego_margin = cfg.szego_margin;
  o.solver_tol = cfg.solver_tol;
  o.round_trip_tol = cfg.round_trip_tol;
  o.seed = cfg.seed;
  const auto w = io::parse_weight(cfg.weight);
  bool present = false;
  for (const auto& v : o.weights) present = present || v.describe() == w.describe();
  if (!present) o.weights.push_back(w);
  return o;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text << "\n";
  else
    io::write_file(path, text + "\n");
}

int cmd_forward(const Flags& f, std::ostream& out) {
  const auto cfg = merged(f);
  const auto potential = io::parse_sequence(io::read_file(f.input));
  auto pair = nlft_forward(potential);
  const std::size_t grid = spectral_grid_size(cfg.grid_size, 2 * std::max(pair.a.width(), pair.b.width()));
  pair.grid_residual = determinant_residual(pair.a, pair.b, grid);
  emit(f.out, io::write_pair(pair), out);
  if (!f.out.empty()) {
    out << "a*(0) = " << io::format_number(pair.a[0].real()) << "\n";
    out << "determinant residual = " << io::format_number(pair.grid_residual) << " (N = " << grid << ")\n";
  }
  return 0;
}

int cmd_inverse(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = merged(f);
  const auto b = io::parse_sequence(io::read_file(f.b));
  const auto opts = rh_options(cfg);

  CoefficientSequence potential;
  std::ostringstream report;
  if (!f.a.empty()) {
    const NlftPair pair{io::parse_sequence(io::read_file(f.a)), b, 0.0};
    const auto window = cfg.window.value_or(b.support());
    potential = b.trimmed().empty() ? CoefficientSequence(window.lo, std::vector<Complex>(window.count(), 0.0))
                                    : layer_strip(pair, window, opts);
    const auto again = nlft_forward(potential);
    report << "b round-trip error = " << io::format_number((again.b - b).max_abs()) << "\n";
    report << "a round-trip error = " << io::format_number((again.a - pair.a).max_abs()) << "\n";
  } else {
    const auto result = inverse_nlft(b, cfg.window, opts);
    potential = result.potential;
    const auto& r = result.report;
    report << "grid = " << r.outer.grid_size << "\n";
    report << "a*(0) = " << io::format_number(r.outer.a_star_zero) << "\n";
    report << "outer tail mass = " << io::format_number(r.outer.tail_mass) << "\n";
    report << "determinant residual = " << io::format_number(r.determinant_residual) << "\n";
    report << "max solver residual = " << io::format_number(r.max_solver_residual) << "\n";
    report << "max iterations = " << r.max_iterations << "\n";
    report << "b round-trip error = " << io::format_number(r.b_round_trip_error) << "\n";
  }
  emit(f.out, io::write_sequence(potential), out);
  out << report.str();

  if (f.imaginary) {
    double worst = 0.0;
    for (const auto& c : potential.coeffs()) worst = std::max(worst, std::abs(c.real()));
    if (worst > cfg.round_trip_tol) {
      err << "error: recovered F is not purely imaginary: max |Re F_n| = " << io::format_number(worst) << "\n";
      return 2;
    }
  }
  return 0;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  const auto cfg = merged(f);
  const auto opts = suite_options(cfg);
  VerificationReport report;
  if (!f.b.empty()) {
    report = run_suite_from_b(io::parse_sequence(io::read_file(f.b)), opts);
  } else {
    const auto text = io::read_file(f.input);
    if (io::looks_like_pair(text))
      report = run_suite(io::parse_pair(text), opts);
    else
      report = run_suite(io::parse_sequence(text), opts);
  }
  if (!f.out.empty()) io::write_file(f.out, io::write_report(report));
  if (!f.csv.empty()) io::write_file(f.csv, io::write_decay_csv(report));

  int hard = 0, failed = 0;
  for (const auto& r : report.records) {
    if (!r.applicable || r.kind != CheckKind::hard) continue;
    ++hard;
    if (!r.pass) {
      ++failed;
      out << "FAIL " << r.name << ": residual " << io::format_number(r.residual) << " (tol "
          << io::format_number(r.tolerance) << ")" << (r.note.empty() ? "" : " " + r.note) << "\n";
    }
  }
  out << (report.passed() ? "PASS" : "FAIL") << " " << hard - failed << "/" << hard << " hard checks, grid "
      << report.grid_size << "\n";
  return report.passed() ? 0 : 2;
}

int cmd_norms(const Flags& f, std::ostream& out) {
  const auto cfg = merged(f);
  const auto w = io::parse_weight(cfg.weight);
  const auto text = io::read_file(f.input);
  auto line = [&](const std::string& name, double v) { out << name << " = " << io::format_number(v) << "\n"; };
  if (io::looks_like_pair(text)) {
    const auto pair = io::parse_pair(text);
    const std::size_t grid = spectral_grid_size(cfg.grid_size, 2 * std::max(pair.a.width(), pair.b.width()));
    line("||a||_" + w.describe(), weighted_l1_norm(pair.a, w));
    line("||b||_" + w.describe(), weighted_l1_norm(pair.b, w));
    line("max |b|", sample_on_grid(pair.b, grid).max_abs());
    line("determinant residual", determinant_residual(pair.a, pair.b, grid));
    line("||b/a*||_" + w.describe(), weighted_l1_norm(symbol_ratio(pair, grid, std::nullopt, cfg.szego_margin), w));
  } else {
    const auto s = io::parse_sequence(text);
    line("||s||_" + w.describe(), weighted_l1_norm(s, w));
    line("||s||_l2", l2_norm(s));
    line("||s||_H1", sobolev_norm(s, 1.0));
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SU(2) nonlinear Fourier transform"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--grid", f.grid, "grid size (power of two)");
    cmd->add_option("--tol", f.tol, "solver tolerance");
    cmd->add_option("--weight", f.weight, "one | poly:alpha=<a>");
    cmd->add_option("--seed", f.seed, "seed for random probes");
  };
  auto* forward = app.add_subcommand("forward", "F -> (a, b)");
  forward->add_option("--input", f.input, "sequence file")->required();
  forward->add_option("--out", f.out, "pair file (stdout if omitted)");
  common(forward);

  auto* inverse = app.add_subcommand("inverse", "b -> F by outer completion and layer stripping");
  inverse->add_option("--b", f.b, "sequence file for b")->required();
  inverse->add_option("--a", f.a, "sequence file for a (skips outer completion)");
  inverse->add_option("--support", f.support, "window m..M for F");
  inverse->add_option("--out", f.out, "sequence file for F (stdout if omitted)");
  inverse->add_flag("--imaginary", f.imaginary, "require purely imaginary F");
  common(inverse);

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  auto* in_opt = verify->add_option("--input", f.input, "sequence F or pair file");
  auto* b_opt = verify->add_option("--b", f.b, "sequence file for b (inverse path)");
  in_opt->excludes(b_opt);
  verify->add_option("--out", f.out, "report file");
  verify->add_option("--csv", f.csv, "per-index decay and convergence CSV");
  common(verify);

  auto* norms = app.add_subcommand("norms", "weighted and Sobolev norms");
  norms->add_option("--input", f.input, "sequence or pair file")->required();
  common(norms);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*forward) return cmd_forward(f, out);
    if (*inverse) return cmd_inverse(f, out, err);
    if (*verify) {
      if (f.input.empty() && f.b.empty()) throw InputError("verify needs --input or --b");
      return cmd_verify(f, out);
    }
    return cmd_norms(f, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.category() == ErrorCategory::input ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace nlft::cli
