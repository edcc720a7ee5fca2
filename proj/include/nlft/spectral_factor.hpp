#pragma once

#include <cstddef>
#include <optional>

#include "nlft/core_types.hpp"

namespace nlft {

/// Grid used by the log/exp and division steps when the caller passes 0.
inline constexpr std::size_t kDefaultSpectralGrid = 1024;

struct OuterReport {
  std::size_t grid_size = 0;
  Interval window;
  double max_abs_b = 0.0;
  /// Sum of |a*_k| over grid coefficients outside the window.
  double tail_mass = 0.0;
  /// Winding number of a* around 0 on |z| = winding_radius.
  int winding = 0;
  double a_star_zero = 0.0;
};

struct OuterOptions {
  std::size_t grid_size = 0;             // 0: max(kDefaultSpectralGrid, default_grid_size(4 width(b)))
  std::optional<Interval> window;        // default [0, 4 width(b)]
  double szego_margin = 1e-6;            // require max |b| <= 1 - margin
  double winding_radius = 0.999;
};

/// Outer completion: a* = exp(g^(0) + 2 sum_{n>0} g^(n) z^n) with
/// g = log(1 - |b|^2) / 2 sampled on the grid. Returns the pair (a, b) with
/// a = star_reflect(a*) truncated to the window.
///
/// Throws SzegoMarginError if max |b| > 1 - margin and OuterFactorError if
/// the result winds around zero on |z| = winding_radius.
NlftPair outer_complement(const CoefficientSequence& b, const OuterOptions& options = {},
                          OuterReport* report = nullptr);

/// Winding number of an analytic polynomial around 0 on |z| = radius,
/// from `samples` equispaced evaluations (rounded to the nearest integer).
int winding_number(const CoefficientSequence& analytic, double radius, std::size_t samples);

/// Zeros of an analytic polynomial in the open unit disk, by the argument
/// principle on |z| = 1 with sampling refined until consecutive phase steps
/// stay below pi/4. When the polynomial (nearly) vanishes on the circle the
/// count is taken on |z| = fallback_radius instead.
int disk_zero_count(const CoefficientSequence& analytic, double fallback_radius = 0.999);

struct SymbolReport {
  std::size_t grid_size = 0;
  Interval window;
  double tail_mass = 0.0;
  double min_abs_a = 0.0;
};

/// Coefficients of b/a* on `window` (default [lo(b), lo(b) + N/2]) by grid
/// division. Throws VanishingSymbolError if min |a| < delta.
CoefficientSequence symbol_ratio(const NlftPair& pair, std::size_t grid_size = 0,
                                 std::optional<Interval> window = std::nullopt, double delta = 1e-6,
                                 SymbolReport* report = nullptr);

/// Grid samples of b/a*; same hypothesis check as symbol_ratio.
GridFunction symbol_ratio_samples(const NlftPair& pair, std::size_t grid_size, double delta = 1e-6);

/// Spectral grid size for a pair or sequence when the caller passes 0.
std::size_t spectral_grid_size(std::size_t requested, Index width);

}  // namespace nlft
