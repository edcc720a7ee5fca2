#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlft/errors.hpp"

namespace nlft {

using Complex = std::complex<double>;
using Index = std::int64_t;

/// Closed integer interval [lo, hi]; empty when hi < lo.
struct Interval {
  Index lo = 0;
  Index hi = -1;

  bool empty() const { return hi < lo; }
  /// Span hi - lo. This is the "width" used by all grid-size rules.
  Index width() const { return empty() ? 0 : hi - lo; }
  std::size_t count() const { return empty() ? 0 : static_cast<std::size_t>(hi - lo + 1); }
  bool contains(Index k) const { return lo <= k && k <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Compactly supported map Z -> C. Entry j of coeffs() is the coefficient of
/// z^(support_lo() + j). Leading/trailing zeros are allowed; the empty
/// sequence has no coefficients at all.
class CoefficientSequence {
 public:
  CoefficientSequence() = default;
  CoefficientSequence(Index lo, std::vector<Complex> coeffs);

  static CoefficientSequence monomial(Index k, Complex c);
  static CoefficientSequence constant(Complex c) { return monomial(0, c); }

  bool empty() const { return coeffs_.empty(); }
  Index support_lo() const { return lo_; }
  Index support_hi() const { return lo_ + static_cast<Index>(coeffs_.size()) - 1; }
  Interval support() const { return empty() ? Interval{} : Interval{support_lo(), support_hi()}; }
  Index width() const { return support().width(); }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Coefficient of z^k; zero outside the support.
  Complex operator[](Index k) const;

  /// Projection P_I onto the coefficients inside `window`.
  CoefficientSequence restricted(Interval window) const;
  /// Zero entries with modulus below `clamp`, then drop zero ends.
  CoefficientSequence trimmed(double clamp = 0.0) const;
  /// Multiplication by z^k.
  CoefficientSequence shifted(Index k) const;
  /// Same values laid out on `window` (which must contain the support).
  std::vector<Complex> dense(Interval window) const;

  double max_abs() const;

  CoefficientSequence& operator+=(const CoefficientSequence& other);
  CoefficientSequence& operator-=(const CoefficientSequence& other);
  CoefficientSequence& operator*=(Complex scale);

  friend CoefficientSequence operator+(CoefficientSequence lhs, const CoefficientSequence& rhs) {
    return lhs += rhs;
  }
  friend CoefficientSequence operator-(CoefficientSequence lhs, const CoefficientSequence& rhs) {
    return lhs -= rhs;
  }
  friend CoefficientSequence operator*(CoefficientSequence lhs, Complex scale) { return lhs *= scale; }
  friend CoefficientSequence operator*(Complex scale, CoefficientSequence rhs) { return rhs *= scale; }

  friend bool operator==(const CoefficientSequence&, const CoefficientSequence&) = default;

 private:
  Index lo_ = 0;
  std::vector<Complex> coeffs_;
};

/// Samples of a circle function at e^(2 pi i j / N), N a power of two >= 2.
class GridFunction {
 public:
  explicit GridFunction(std::vector<Complex> samples);
  static GridFunction filled(std::size_t n_points, Complex value);

  std::size_t n_points() const { return samples_.size(); }
  std::span<const Complex> samples() const { return samples_; }
  Complex operator[](std::size_t j) const { return samples_[j]; }

  GridFunction conj() const;
  double max_abs() const;
  double min_abs() const;
  Complex mean() const;

  friend GridFunction operator*(const GridFunction& lhs, const GridFunction& rhs);
  friend GridFunction operator/(const GridFunction& lhs, const GridFunction& rhs);
  friend GridFunction operator+(const GridFunction& lhs, const GridFunction& rhs);
  friend GridFunction operator-(const GridFunction& lhs, const GridFunction& rhs);

 private:
  std::vector<Complex> samples_;
};

/// Symmetric, submultiplicative, subexponential weight w: Z -> [1, inf).
class BeurlingWeight {
 public:
  enum class Kind { constant_one, polynomial, custom };

  static BeurlingWeight one();
  /// w(n) = (1 + |n|)^alpha, alpha >= 0.
  static BeurlingWeight polynomial(double alpha);
  /// Subexponential growth cannot be checked finitely, so the caller has to
  /// attest it. Throws InputError when `attested` is false.
  static BeurlingWeight custom(std::function<double(Index)> fn, bool attested, std::string label);

  double operator()(Index n) const;
  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  /// "one", "poly:alpha=<a>" or "custom:<label>".
  std::string describe() const;

  /// Spot-checks symmetry, w >= 1 and submultiplicativity on all pairs in
  /// [-2 span, 2 span]. Throws InputError on the first violation.
  void validate(Index span) const;

 private:
  Kind kind_ = Kind::constant_one;
  double alpha_ = 0.0;
  std::function<double(Index)> fn_;
  std::string label_;
};

/// The pair (a, b) with |a|^2 + |b|^2 = 1 on the circle. `a` lives on
/// non-positive indices, so a* = star_reflect(a) is analytic in the disk.
struct NlftPair {
  CoefficientSequence a;
  CoefficientSequence b;
  double grid_residual = 0.0;
};

// ---------------------------------------------------------------------------
// Grid conversions

bool is_power_of_two(std::size_t n);
/// Smallest power of two >= 8 (width + 1).
std::size_t default_grid_size(Index width);

/// Samples on the N-point grid. Requires N >= 4 (width + 1).
GridFunction to_grid(const CoefficientSequence& s, std::size_t n_points);
/// Samples on the N-point grid with only the exactness requirement width < N.
GridFunction sample_on_grid(const CoefficientSequence& s, std::size_t n_points);
/// Coefficients restricted to `window`, which must satisfy width < N.
CoefficientSequence from_grid(const GridFunction& g, Interval window);
/// All N coefficients laid out on [-N/2, N/2 - 1].
CoefficientSequence centered_coefficients(const GridFunction& g);

/// Laurent polynomial evaluated at an arbitrary nonzero point.
Complex evaluate(const CoefficientSequence& s, Complex z);

// ---------------------------------------------------------------------------
// Algebra

/// f*(z) = conj(f(1 / conj z)): conjugate and negate indices.
CoefficientSequence star_reflect(const CoefficientSequence& s);
/// Cauchy product, i.e. pointwise product on the circle.
CoefficientSequence convolve(const CoefficientSequence& s, const CoefficientSequence& t);

struct GridReciprocal {
  CoefficientSequence coeffs;
  /// max over the grid of |s * (windowed 1/s) - 1|.
  double residual = 0.0;
};

/// Coefficients of 1/s on `window`, computed by sampling. Throws
/// VanishingSymbolError when min |s| on the grid is below `delta`.
GridReciprocal reciprocal_on_grid(const CoefficientSequence& s, std::size_t n_points, Interval window,
                                  double delta = 1e-6);

// ---------------------------------------------------------------------------
// Norms and multipliers

/// Sum |s_n| w(n): the A_w norm.
double weighted_l1_norm(const CoefficientSequence& s, const BeurlingWeight& w);
/// (Sum (1 + n^2)^order |s_n|^2)^(1/2). Square-root convention.
double sobolev_norm(const CoefficientSequence& s, double order);
/// Multiplier (1 + n^2)^(order/2).
CoefficientSequence fractional_derivative(const CoefficientSequence& s, double order);
/// d/dtheta: multiplier i n.
CoefficientSequence derivative(const CoefficientSequence& s);
/// L^2(T) norm with normalized measure: the l^2 norm of the coefficients.
double l2_norm(const CoefficientSequence& s);

/// max over the N-point grid of | |a|^2 + |b|^2 - 1 |.
double determinant_residual(const CoefficientSequence& a, const CoefficientSequence& b, std::size_t n_points);

}  // namespace nlft
