#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "nlft/core_types.hpp"
#include "nlft/estimates.hpp"

namespace nlft::io {

/// Runtime configuration. Tolerances must be positive; an explicit grid size
/// must be a power of two (0 means "auto").
struct Config {
  std::size_t grid_size = 0;
  double szego_margin = 1e-6;
  double solver_tol = 1e-12;
  double round_trip_tol = 1e-8;
  std::string weight = "one";
  std::optional<Interval> window;
  std::uint64_t seed = 0;

  /// Throws InputError on the first invalid field.
  void validate() const;
};

/// Fields present in the JSON object override `base`. Unknown keys are an error.
Config parse_config(const std::string& text, Config base = {});
Config load_config(const std::filesystem::path& path, Config base = {});
/// Config from $NLFT_CONFIG when set, defaults otherwise.
Config config_from_env();

/// "one" | "poly:alpha=<a>".
BeurlingWeight parse_weight(const std::string& spec);
/// "m..M" with m <= M.
Interval parse_interval(const std::string& spec);

// Sequence: {"support": [m, M], "coeffs": [[re, im], ...]}; the empty
// sequence is {"support": null, "coeffs": []}.
std::string write_sequence(const CoefficientSequence& s);
CoefficientSequence parse_sequence(const std::string& text);

// Pair: {"a": <sequence>, "b": <sequence>, "grid_residual": r}.
std::string write_pair(const NlftPair& pair);
NlftPair parse_pair(const std::string& text);

/// Array of check records.
std::string write_report(const VerificationReport& report);

/// Columns n, abs_F_n, first_order_rhs, convergence_a1; missing values empty.
std::string write_decay_csv(const VerificationReport& report);

/// 17 significant digits, "null" for non-finite values.
std::string format_number(double x);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// True when the JSON document has "a" and "b" members.
bool looks_like_pair(const std::string& text);

}  // namespace nlft::io
