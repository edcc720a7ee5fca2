#include "nlft/inverse_rh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "nlft/forward.hpp"
#include "nlft/krylov.hpp"

namespace nlft {

// ---------------------------------------------------------------------------
// RhSystem

RhSystem::RhSystem(const NlftPair& pair, Index n, std::size_t grid_size, Index bandwidth, double delta) {
  const std::size_t grid = spectral_grid_size(grid_size, 2 * std::max(pair.a.width(), pair.b.width()));
  auto ratio = symbol_ratio_samples(pair, grid, delta);
  auto adjoint = ratio.conj();
  std::optional<Index> lo_b;
  if (!pair.b.empty()) lo_b = pair.b.support_lo();
  symbols_ = std::make_shared<const Symbols>(Symbols{pair, grid, std::move(ratio), std::move(adjoint), lo_b});
  n_ = n;
  width_ = closing_width(*symbols_, n, bandwidth);
}

RhSystem::RhSystem(std::shared_ptr<const Symbols> symbols, Index n, Index bandwidth)
    : symbols_(std::move(symbols)), n_(n), width_(closing_width(*symbols_, n, bandwidth)) {}

RhSystem RhSystem::at_index(Index n, Index bandwidth) const { return RhSystem(symbols_, n, bandwidth); }

Index RhSystem::closing_width(const Symbols& s, Index n, Index requested) {
  const Index needed = s.lo_b ? std::max<Index>(n - *s.lo_b + 1, 1) : 1;
  const Index width = std::max(requested, needed);
  if (static_cast<std::size_t>(2 * width) > s.grid_size) {
    throw SizeError("Riemann-Hilbert bandwidth " + std::to_string(width) + " needs a grid of at least " +
                    std::to_string(2 * width) + " points, have " + std::to_string(s.grid_size));
  }
  return width;
}

std::vector<Complex> RhSystem::pack(const SequencePair& x) const {
  auto check = [](const CoefficientSequence& s, Interval window, const char* slot) {
    if (!s.empty() && (s.support_lo() < window.lo || s.support_hi() > window.hi)) {
      for (Index k = s.support_lo(); k <= s.support_hi(); ++k) {
        if (!window.contains(k) && s[k] != 0.0)
          throw InputError(std::string(slot) + " slot has support outside its Riemann-Hilbert window");
      }
    }
  };
  check(x.first, plus_window(), "first");
  check(x.second, lower_window(), "second");
  auto v = x.first.dense(plus_window());
  auto tail = x.second.dense(lower_window());
  v.insert(v.end(), tail.begin(), tail.end());
  return v;
}

SequencePair RhSystem::unpack(std::span<const Complex> v) const {
  const auto w = static_cast<std::size_t>(width_);
  return {CoefficientSequence(0, {v.begin(), v.begin() + w}),
          CoefficientSequence(lower_window().lo, {v.begin() + w, v.begin() + 2 * w})};
}

void RhSystem::apply_m(std::span<const Complex> x, std::span<Complex> y) const {
  const std::size_t grid = symbols_->grid_size;
  const auto w = static_cast<std::size_t>(width_);
  const Index lower = lower_window().lo;
  const double inv = 1.0 / static_cast<double>(grid);
  std::vector<Complex> buffer(grid);

  // First slot: P_+ (b*/a) x2.
  std::fill(buffer.begin(), buffer.end(), 0.0);
  for (std::size_t i = 0; i < w; ++i) buffer[detail::wrap(lower + static_cast<Index>(i), grid)] = x[w + i];
  detail::inverse_fft(buffer);
  for (std::size_t j = 0; j < grid; ++j) buffer[j] *= symbols_->adjoint_ratio[j];
  detail::forward_fft(buffer);
  for (std::size_t i = 0; i < w; ++i) y[i] = buffer[i] * inv;

  // Second slot: -P_{<=n} (b/a*) x1.
  std::fill(buffer.begin(), buffer.end(), 0.0);
  for (std::size_t i = 0; i < w; ++i) buffer[i] = x[i];
  detail::inverse_fft(buffer);
  for (std::size_t j = 0; j < grid; ++j) buffer[j] *= symbols_->ratio[j];
  detail::forward_fft(buffer);
  for (std::size_t i = 0; i < w; ++i) y[w + i] = -buffer[detail::wrap(lower + static_cast<Index>(i), grid)] * inv;
}

SequencePair apply_m(const RhSystem& system, const SequencePair& x) {
  const auto v = system.pack(x);
  std::vector<Complex> y(v.size());
  system.apply_m(v, y);
  return system.unpack(y);
}

// ---------------------------------------------------------------------------
// Solves

namespace {

GmresResult solve_flat(const RhSystem& system, std::span<const Complex> rhs, double tol, std::size_t max_iterations) {
  const std::size_t dim = system.dimension();
  if (max_iterations == 0) max_iterations = 10 * dim;
  LinearOperator op = [&system](std::span<const Complex> x, std::span<Complex> y) {
    system.apply_m(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += x[i];
  };
  auto result = gmres(op, rhs, tol, max_iterations, std::min<std::size_t>(dim, 300));
  if (!result.converged) {
    std::ostringstream os;
    os << "GMRES did not reach relative residual " << tol << " at n = " << system.index() << " within "
       << max_iterations << " iterations (residual " << result.residual_norm / result.rhs_norm << ")";
    throw ConvergenceError(os.str());
  }
  return result;
}

}  // namespace

ProjectedSolve solve_projected(const RhSystem& system, const SequencePair& rhs, double tol,
                               std::size_t max_iterations) {
  const auto y = system.pack(rhs);
  auto result = solve_flat(system, y, tol, max_iterations);
  ProjectedSolve out;
  out.rhs_norm = result.rhs_norm;
  out.solution_norm = norm2(result.x);
  out.residual = result.rhs_norm > 0.0 ? result.residual_norm / result.rhs_norm : 0.0;
  out.iterations = result.iterations;
  out.x = system.unpack(result.x);
  return out;
}

RhSolution rh_solve(const RhSystem& system, double tol, std::size_t max_iterations) {
  std::vector<Complex> rhs(system.dimension(), 0.0);
  rhs[0] = 1.0;
  const auto result = solve_flat(system, rhs, tol, max_iterations);

  const Complex head = result.x[0];
  if (!(head.real() > 0.0) || std::abs(head.imag()) > 1e-10) {
    std::ostringstream os;
    os << "normalized a_n*(0) at n = " << system.index() << " is " << head << ", not a positive real";
    throw ConsistencyError(os.str());
  }
  RhSolution out;
  out.n = system.index();
  out.a_n_star_0 = std::sqrt(head.real());
  out.normalized = system.unpack(result.x);
  out.a_n = star_reflect((out.normalized.first * (1.0 / out.a_n_star_0)).trimmed(1e-13));
  out.b_n = (out.normalized.second * (1.0 / out.a_n_star_0)).trimmed(1e-13);
  out.residual = result.residual_norm / result.rhs_norm;
  out.solution_norm = norm2(result.x);
  out.rhs_norm = result.rhs_norm;
  out.iterations = result.iterations;
  return out;
}

// ---------------------------------------------------------------------------
// Layer stripping

Index default_bandwidth(Interval window, const CoefficientSequence& b) { return 4 * window.width() + b.width(); }

std::vector<RhSolution> truncated_solutions(const NlftPair& pair, Interval window, const RhOptions& options) {
  std::vector<RhSolution> out;
  if (window.empty()) return out;
  const Index bandwidth = options.bandwidth > 0 ? options.bandwidth : default_bandwidth(window, pair.b);
  const std::size_t grid =
      spectral_grid_size(options.grid_size, 2 * std::max(bandwidth, std::max(pair.a.width(), pair.b.width())));

  const double peak = sample_on_grid(pair.b, grid).max_abs();
  if (peak > 1.0 - options.szego_margin) {
    std::ostringstream os;
    os << "Szego margin violated: max |b| on the " << grid << "-point grid is " << peak;
    throw SzegoMarginError(os.str());
  }

  const RhSystem base(pair, window.lo, grid, bandwidth, options.szego_margin);
  out.reserve(window.count());
  for (Index n = window.lo; n <= window.hi; ++n)
    out.push_back(rh_solve(base.at_index(n, bandwidth), options.solver_tol, options.max_iterations));
  return out;
}

CoefficientSequence layer_strip(std::span<const RhSolution> solutions, double zero_tol) {
  if (solutions.empty()) return {};
  std::vector<Complex> values;
  values.reserve(solutions.size());
  for (const auto& s : solutions) {
    const Complex f = s.normalized.second[s.n] / s.normalized.first[0];
    values.push_back(std::abs(f) < zero_tol ? Complex(0.0) : f);
  }
  return {solutions.front().n, std::move(values)};
}

CoefficientSequence layer_strip(const NlftPair& pair, Interval window, const RhOptions& options) {
  return layer_strip(truncated_solutions(pair, window, options), options.zero_tol);
}

InverseResult inverse_nlft(const CoefficientSequence& b, std::optional<Interval> window, const RhOptions& options) {
  InverseResult out;
  out.report.window = window.value_or(b.support());
  if (b.trimmed().empty()) {
    out.pair = NlftPair{CoefficientSequence::constant(1.0), {}, 0.0};
    if (!out.report.window.empty())
      out.potential = CoefficientSequence(out.report.window.lo, std::vector<Complex>(out.report.window.count(), 0.0));
    return out;
  }

  OuterOptions outer;
  outer.grid_size = options.grid_size;
  outer.szego_margin = options.szego_margin;
  out.pair = outer_complement(b, outer, &out.report.outer);
  while (out.report.outer.tail_mass > options.aliasing_tol && 2 * out.report.outer.grid_size <= options.max_grid_size) {
    outer.grid_size = 2 * out.report.outer.grid_size;
    out.pair = outer_complement(b, outer, &out.report.outer);
  }
  out.report.determinant_residual = out.pair.grid_residual;

  RhOptions strip = options;
  strip.grid_size = out.report.outer.grid_size;
  const auto solutions = truncated_solutions(out.pair, out.report.window, strip);
  out.potential = layer_strip(solutions, options.zero_tol);
  for (const auto& s : solutions) {
    out.report.max_solver_residual = std::max(out.report.max_solver_residual, s.residual);
    out.report.max_iterations = std::max(out.report.max_iterations, s.iterations);
  }

  const auto reproduced = nlft_forward(out.potential).b;
  const auto diff = reproduced - b;
  out.report.b_round_trip_error = diff.max_abs();
  return out;
}

double truncation_certificate(const NlftPair& pair, Index n, const BeurlingWeight& w, std::size_t grid_size) {
  if (pair.b.empty() || n >= pair.b.support_hi()) return 0.0;
  const auto tail = pair.b.restricted({n + 1, pair.b.support_hi()});
  const std::size_t grid = spectral_grid_size(grid_size, 2 * std::max(pair.a.width(), pair.b.width()));
  const auto ratio = symbol_ratio_samples(NlftPair{pair.a, tail, 0.0}, grid);
  return weighted_l1_norm(from_grid(ratio, {n + 1, n + static_cast<Index>(grid)}), w);
}

}  // namespace nlft
