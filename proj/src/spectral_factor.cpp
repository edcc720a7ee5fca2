#include "nlft/spectral_factor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"

namespace nlft {

std::size_t spectral_grid_size(std::size_t requested, Index width) {
  if (requested != 0) {
    if (!is_power_of_two(requested) || requested < 2)
      throw SizeError("grid size must be a power of two, got " + std::to_string(requested));
    return requested;
  }
  return std::max(kDefaultSpectralGrid, default_grid_size(width));
}

int winding_number(const CoefficientSequence& analytic, double radius, std::size_t samples) {
  if (analytic.empty()) throw OuterFactorError("winding number of the zero function is undefined");
  std::vector<Complex> scaled(analytic.coeffs().begin(), analytic.coeffs().end());
  for (std::size_t j = 0; j < scaled.size(); ++j)
    scaled[j] *= std::pow(radius, static_cast<double>(analytic.support_lo() + static_cast<Index>(j)));
  const auto g = sample_on_grid({analytic.support_lo(), std::move(scaled)}, samples);
  double total = 0.0;
  for (std::size_t j = 0; j < samples; ++j) total += std::arg(g[(j + 1) % samples] / g[j]);
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

int disk_zero_count(const CoefficientSequence& analytic, double fallback_radius) {
  if (analytic.empty()) throw OuterFactorError("zero count of the zero function is undefined");
  std::size_t samples = 4096;
  while (samples < 16 * static_cast<std::size_t>(analytic.support_hi() + 1)) samples *= 2;
  const auto on_circle = sample_on_grid(analytic, samples);
  const double radius = on_circle.min_abs() < 1e-8 * on_circle.max_abs() ? fallback_radius : 1.0;

  std::vector<Complex> scaled(analytic.coeffs().begin(), analytic.coeffs().end());
  for (std::size_t j = 0; j < scaled.size(); ++j)
    scaled[j] *= std::pow(radius, static_cast<double>(analytic.support_lo() + static_cast<Index>(j)));
  const CoefficientSequence p{analytic.support_lo(), std::move(scaled)};
  for (; samples <= (std::size_t{1} << 22); samples *= 2) {
    const auto g = sample_on_grid(p, samples);
    double total = 0.0, worst = 0.0;
    for (std::size_t j = 0; j < samples; ++j) {
      const double step = std::arg(g[(j + 1) % samples] / g[j]);
      worst = std::max(worst, std::abs(step));
      total += step;
    }
    if (worst < std::numbers::pi / 4) return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
  }
  throw OuterFactorError("argument principle did not resolve the phase of a*");
}

NlftPair outer_complement(const CoefficientSequence& b, const OuterOptions& options, OuterReport* report) {
  const Index width = b.width();
  const Interval window = options.window.value_or(Interval{0, 4 * width});
  if (window.empty() || window.lo != 0) throw InputError("outer factor window must start at 0");
  const std::size_t n = spectral_grid_size(options.grid_size, 4 * width);
  if (static_cast<std::size_t>(window.width()) >= n) throw AliasingError("outer factor window wider than grid");

  const auto samples = sample_on_grid(b, n);
  const double peak = samples.max_abs();
  if (peak > 1.0 - options.szego_margin) {
    std::ostringstream os;
    os << "Szego margin violated: max |b| on the " << n << "-point grid is " << peak << " > 1 - "
       << options.szego_margin;
    throw SzegoMarginError(os.str());
  }

  // log |a| on the circle, then its analytic extension (Herglotz projection).
  std::vector<Complex> buffer(n);
  for (std::size_t j = 0; j < n; ++j) buffer[j] = 0.5 * std::log1p(-std::norm(samples[j]));
  detail::forward_fft(buffer);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<Complex> log_a_star(n, 0.0);
  log_a_star[0] = buffer[0].real() * inv_n;
  for (std::size_t k = 1; k < n / 2; ++k) log_a_star[k] = 2.0 * buffer[k] * inv_n;
  log_a_star[n / 2] = buffer[n / 2] * inv_n;
  detail::inverse_fft(log_a_star);
  for (auto& v : log_a_star) v = std::exp(v);
  detail::forward_fft(log_a_star);
  for (auto& v : log_a_star) v *= inv_n;

  std::vector<Complex> kept(window.count());
  double tail = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < kept.size())
      kept[k] = log_a_star[k];
    else
      tail += std::abs(log_a_star[k]);
  }
  kept[0] = kept[0].real();
  const CoefficientSequence a_star{0, std::move(kept)};

  const int winding = winding_number(a_star, options.winding_radius, 4 * n);
  if (winding != 0) {
    throw OuterFactorError("computed a* winds " + std::to_string(winding) +
                           " times around 0 on |z| = " + std::to_string(options.winding_radius));
  }

  NlftPair pair{star_reflect(a_star), b, 0.0};
  pair.grid_residual = determinant_residual(pair.a, pair.b, n);
  if (report) {
    *report = OuterReport{n, window, peak, tail, winding, a_star[0].real()};
  }
  return pair;
}

GridFunction symbol_ratio_samples(const NlftPair& pair, std::size_t grid_size, double delta) {
  const auto a = sample_on_grid(pair.a, grid_size);
  const double floor = a.min_abs();
  if (floor < delta) {
    std::ostringstream os;
    os << "|a| vanishes on the circle: min |a| = " << floor << " < " << delta;
    throw VanishingSymbolError(os.str());
  }
  return sample_on_grid(pair.b, grid_size) / a.conj();
}

CoefficientSequence symbol_ratio(const NlftPair& pair, std::size_t grid_size, std::optional<Interval> window,
                                 double delta, SymbolReport* report) {
  const std::size_t n = spectral_grid_size(grid_size, std::max(pair.a.width(), pair.b.width()));
  const auto ratio = symbol_ratio_samples(pair, n, delta);
  const Index lo = pair.b.empty() ? 0 : pair.b.support_lo();
  const Interval win = window.value_or(Interval{lo, lo + static_cast<Index>(n / 2)});
  auto coeffs = from_grid(ratio, win);
  if (report) {
    const auto all = from_grid(ratio, {win.lo, win.lo + static_cast<Index>(n) - 1});
    double tail = 0.0;
    for (Index k = win.hi + 1; k <= all.support_hi(); ++k) tail += std::abs(all[k]);
    *report = SymbolReport{n, win, tail, sample_on_grid(pair.a, n).min_abs()};
  }
  return coeffs;
}

}  // namespace nlft
