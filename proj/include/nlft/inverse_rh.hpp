#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nlft/core_types.hpp"
#include "nlft/spectral_factor.hpp"

namespace nlft {

/// Two-slot vector (first slot in P_+, second in P_{<=n}).
struct SequencePair {
  CoefficientSequence first;
  CoefficientSequence second;
};

/// Truncated Riemann-Hilbert system at index n:
///
///   (Id + M) (x1, x2) = y,   M = [ 0                    P_+ (b*/a) P_{<=n} ]
///                                [ -P_{<=n} (b/a*) P_+   0                 ]
///
/// restricted to x1 on [0, W) and x2 on (n - W, n]. Because b/a* lives on
/// [lo(b), inf), these windows are invariant under M once W > n - lo(b), so
/// the finite system is exact, not a Galerkin approximation.
///
/// Immutable; copies share the cached symbol samples.
class RhSystem {
 public:
  /// bandwidth 0 picks the smallest closing window. Throws
  /// VanishingSymbolError if min |a| < delta on the grid.
  RhSystem(const NlftPair& pair, Index n, std::size_t grid_size = 0, Index bandwidth = 0, double delta = 1e-6);

  /// Same symbols, different truncation index.
  RhSystem at_index(Index n, Index bandwidth = 0) const;

  Index index() const { return n_; }
  Index bandwidth() const { return width_; }
  std::size_t grid_size() const { return symbols_->grid_size; }
  std::size_t dimension() const { return 2 * static_cast<std::size_t>(width_); }
  Interval plus_window() const { return {0, width_ - 1}; }
  Interval lower_window() const { return {n_ - width_ + 1, n_}; }
  const NlftPair& pair() const { return symbols_->pair; }
  /// Grid samples of b/a*.
  const GridFunction& symbol() const { return symbols_->ratio; }
  /// Grid samples of b*/a.
  const GridFunction& adjoint_symbol() const { return symbols_->adjoint_ratio; }

  /// Flat layout: W coefficients of x1 on [0, W), then W of x2 on (n - W, n].
  /// Throws InputError if a slot has support outside its window.
  std::vector<Complex> pack(const SequencePair& x) const;
  SequencePair unpack(std::span<const Complex> v) const;

  /// y = M x in the flat layout (four FFTs).
  void apply_m(std::span<const Complex> x, std::span<Complex> y) const;

 private:
  struct Symbols {
    NlftPair pair;
    std::size_t grid_size;
    GridFunction ratio;
    GridFunction adjoint_ratio;
    std::optional<Index> lo_b;
  };

  RhSystem(std::shared_ptr<const Symbols> symbols, Index n, Index bandwidth);
  static Index closing_width(const Symbols& s, Index n, Index requested);

  std::shared_ptr<const Symbols> symbols_;
  Index n_ = 0;
  Index width_ = 1;
};

/// M applied to a pair of sequences supported in the system windows.
SequencePair apply_m(const RhSystem& system, const SequencePair& x);

struct ProjectedSolve {
  SequencePair x;
  double residual = 0.0;  // ||y - (Id + M) x||_2 / ||y||_2
  double solution_norm = 0.0;
  double rhs_norm = 0.0;
  std::size_t iterations = 0;
};

/// Solves (Id + M) x = y by GMRES. Throws ConvergenceError when the
/// relative residual does not reach tol within max_iterations
/// (0: 10 x dimension).
ProjectedSolve solve_projected(const RhSystem& system, const SequencePair& rhs, double tol = 1e-12,
                               std::size_t max_iterations = 0);

struct RhSolution {
  Index n = 0;
  CoefficientSequence a_n;
  CoefficientSequence b_n;
  double a_n_star_0 = 1.0;
  /// Raw normalized solution (a_n*(0) a_n*, a_n*(0) b_n) before clamping.
  SequencePair normalized;
  double residual = 0.0;
  double solution_norm = 0.0;
  double rhs_norm = 1.0;
  std::size_t iterations = 0;
};

/// Solves the normalized system with right side (1, 0) and denormalizes:
/// a_n*(0) = sqrt(x1(0)). Throws ConsistencyError when x1(0) is not a
/// positive real to 1e-10.
RhSolution rh_solve(const RhSystem& system, double tol = 1e-12, std::size_t max_iterations = 0);

struct RhOptions {
  std::size_t grid_size = 0;  // 0: spectral default
  Index bandwidth = 0;        // 0: default_bandwidth(window, b)
  double solver_tol = 1e-12;
  std::size_t max_iterations = 0;
  double szego_margin = 1e-6;
  double zero_tol = 1e-12;  // |F_n| below this is reported as 0
  /// inverse_nlft doubles the grid while the outer factor's coefficient mass
  /// outside its window exceeds aliasing_tol, up to max_grid_size.
  double aliasing_tol = 1e-12;
  std::size_t max_grid_size = 65536;
};

/// 4 width(window) + width(b).
Index default_bandwidth(Interval window, const CoefficientSequence& b);

/// One rh_solve per n in `window`, in ascending order.
std::vector<RhSolution> truncated_solutions(const NlftPair& pair, Interval window, const RhOptions& options = {});

/// F_n = b_n^(n) / a_n*(0) for each n in `window`.
CoefficientSequence layer_strip(const NlftPair& pair, Interval window, const RhOptions& options = {});
CoefficientSequence layer_strip(std::span<const RhSolution> solutions, double zero_tol = 1e-12);

struct InverseReport {
  OuterReport outer;
  Interval window;
  double determinant_residual = 0.0;
  double max_solver_residual = 0.0;
  std::size_t max_iterations = 0;
  /// max_k |b_k - forward(F).b_k|.
  double b_round_trip_error = 0.0;
};

struct InverseResult {
  CoefficientSequence potential;
  NlftPair pair;
  InverseReport report;
};

/// Outer completion of b followed by layer stripping over `window`
/// (default: the support of b). Zeros of a* close to the circle make log a*
/// and b/a* decay slowly, so the grid is refined until the outer factor's
/// tail is below options.aliasing_tol.
InverseResult inverse_nlft(const CoefficientSequence& b, std::optional<Interval> window = std::nullopt,
                           const RhOptions& options = {});

/// || P_{>n}(b) / a* ||_{A_w}; once below 1/2 the truncated operator is
/// boundedly invertible in A_w.
double truncation_certificate(const NlftPair& pair, Index n, const BeurlingWeight& w, std::size_t grid_size = 0);

}  // namespace nlft
