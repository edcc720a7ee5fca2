#include "nlft/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fft.hpp"

namespace nlft {
namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void require_finite(std::span<const Complex> values, const char* what) {
  for (const auto& c : values) {
    if (!finite(c)) throw InputError(std::string(what) + ": non-finite value");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CoefficientSequence

CoefficientSequence::CoefficientSequence(Index lo, std::vector<Complex> coeffs)
    : lo_(coeffs.empty() ? 0 : lo), coeffs_(std::move(coeffs)) {
  require_finite(coeffs_, "CoefficientSequence");
}

CoefficientSequence CoefficientSequence::monomial(Index k, Complex c) { return {k, {c}}; }

Complex CoefficientSequence::operator[](Index k) const {
  if (empty() || k < lo_ || k > support_hi()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k - lo_)];
}

CoefficientSequence CoefficientSequence::restricted(Interval window) const {
  if (empty() || window.empty()) return {};
  const Index lo = std::max(window.lo, support_lo());
  const Index hi = std::min(window.hi, support_hi());
  if (hi < lo) return {};
  return {lo, std::vector<Complex>(coeffs_.begin() + (lo - lo_), coeffs_.begin() + (hi - lo_) + 1)};
}

CoefficientSequence CoefficientSequence::trimmed(double clamp) const {
  std::vector<Complex> values = coeffs_;
  for (auto& c : values) {
    if (std::abs(c) < clamp) c = 0.0;
  }
  auto first = std::find_if(values.begin(), values.end(), [](Complex c) { return c != 0.0; });
  if (first == values.end()) return {};
  auto last = std::find_if(values.rbegin(), values.rend(), [](Complex c) { return c != 0.0; }).base();
  const Index lo = lo_ + (first - values.begin());
  return {lo, std::vector<Complex>(first, last)};
}

CoefficientSequence CoefficientSequence::shifted(Index k) const {
  if (empty()) return {};
  return {lo_ + k, coeffs_};
}

std::vector<Complex> CoefficientSequence::dense(Interval window) const {
  std::vector<Complex> out(window.count(), 0.0);
  for (Index k = window.lo; k <= window.hi; ++k) out[static_cast<std::size_t>(k - window.lo)] = (*this)[k];
  return out;
}

double CoefficientSequence::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

CoefficientSequence& CoefficientSequence::operator+=(const CoefficientSequence& other) {
  if (other.empty()) return *this;
  if (empty()) return *this = other;
  const Interval span{std::min(support_lo(), other.support_lo()), std::max(support_hi(), other.support_hi())};
  auto values = dense(span);
  for (Index k = other.support_lo(); k <= other.support_hi(); ++k)
    values[static_cast<std::size_t>(k - span.lo)] += other[k];
  lo_ = span.lo;
  coeffs_ = std::move(values);
  return *this;
}

CoefficientSequence& CoefficientSequence::operator-=(const CoefficientSequence& other) {
  return *this += other * Complex(-1.0);
}

CoefficientSequence& CoefficientSequence::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

// ---------------------------------------------------------------------------
// GridFunction

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

GridFunction::GridFunction(std::vector<Complex> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2 || !is_power_of_two(samples_.size()))
    throw SizeError("grid size must be a power of two >= 2, got " + std::to_string(samples_.size()));
  require_finite(samples_, "GridFunction");
}

GridFunction GridFunction::filled(std::size_t n_points, Complex value) {
  return GridFunction(std::vector<Complex>(n_points, value));
}

GridFunction GridFunction::conj() const {
  auto out = samples_;
  for (auto& c : out) c = std::conj(c);
  return GridFunction(std::move(out));
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (const auto& c : samples_) m = std::max(m, std::abs(c));
  return m;
}

double GridFunction::min_abs() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : samples_) m = std::min(m, std::abs(c));
  return m;
}

Complex GridFunction::mean() const {
  Complex sum = 0.0;
  for (const auto& c : samples_) sum += c;
  return sum / static_cast<double>(samples_.size());
}

namespace {

template <class Op>
GridFunction zip(const GridFunction& lhs, const GridFunction& rhs, Op op) {
  if (lhs.n_points() != rhs.n_points()) throw SizeError("grid functions of different sizes");
  std::vector<Complex> out(lhs.n_points());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = op(lhs[j], rhs[j]);
  return GridFunction(std::move(out));
}

}  // namespace

GridFunction operator*(const GridFunction& lhs, const GridFunction& rhs) {
  return zip(lhs, rhs, std::multiplies<>{});
}
GridFunction operator/(const GridFunction& lhs, const GridFunction& rhs) {
  return zip(lhs, rhs, std::divides<>{});
}
GridFunction operator+(const GridFunction& lhs, const GridFunction& rhs) { return zip(lhs, rhs, std::plus<>{}); }
GridFunction operator-(const GridFunction& lhs, const GridFunction& rhs) {
  return zip(lhs, rhs, std::minus<>{});
}

// ---------------------------------------------------------------------------
// BeurlingWeight

BeurlingWeight BeurlingWeight::one() { return {}; }

BeurlingWeight BeurlingWeight::polynomial(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InputError("polynomial weight needs alpha >= 0");
  BeurlingWeight w;
  w.kind_ = alpha == 0.0 ? Kind::constant_one : Kind::polynomial;
  w.alpha_ = alpha;
  return w;
}

BeurlingWeight BeurlingWeight::custom(std::function<double(Index)> fn, bool attested, std::string label) {
  if (!attested) throw InputError("custom weight '" + label + "' lacks the subexponential-growth attestation");
  if (!fn) throw InputError("custom weight without evaluator");
  BeurlingWeight w;
  w.kind_ = Kind::custom;
  w.fn_ = std::move(fn);
  w.label_ = std::move(label);
  return w;
}

double BeurlingWeight::operator()(Index n) const {
  switch (kind_) {
    case Kind::constant_one:
      return 1.0;
    case Kind::polynomial:
      return std::pow(1.0 + static_cast<double>(n < 0 ? -n : n), alpha_);
    case Kind::custom:
      return fn_(n);
  }
  return 1.0;
}

std::string BeurlingWeight::describe() const {
  switch (kind_) {
    case Kind::constant_one:
      return "one";
    case Kind::polynomial: {
      std::ostringstream os;
      os << "poly:alpha=" << alpha_;
      return os.str();
    }
    case Kind::custom:
      return "custom:" + label_;
  }
  return "one";
}

void BeurlingWeight::validate(Index span) const {
  const Index r = 2 * std::max<Index>(span, 1);
  constexpr double rel = 1e-12;
  for (Index n = -r; n <= r; ++n) {
    const double wn = (*this)(n);
    if (!(wn >= 1.0 - rel)) throw InputError(describe() + ": w(" + std::to_string(n) + ") < 1");
    if (std::abs(wn - (*this)(-n)) > rel * wn) throw InputError(describe() + ": not symmetric at " + std::to_string(n));
  }
  for (Index n = -r; n <= r; ++n) {
    for (Index m = -r; m <= r; ++m) {
      if ((*this)(n + m) > (*this)(n) * (*this)(m) * (1.0 + rel))
        throw InputError(describe() + ": not submultiplicative at (" + std::to_string(n) + ", " +
                         std::to_string(m) + ")");
    }
  }
}

// ---------------------------------------------------------------------------
// Grid conversions

std::size_t default_grid_size(Index width) {
  const auto target = static_cast<std::size_t>(8 * (std::max<Index>(width, 0) + 1));
  std::size_t n = 2;
  while (n < target) n <<= 1;
  return n;
}

GridFunction sample_on_grid(const CoefficientSequence& s, std::size_t n_points) {
  if (n_points < 2 || !is_power_of_two(n_points))
    throw SizeError("grid size must be a power of two >= 2, got " + std::to_string(n_points));
  if (!s.empty() && static_cast<std::size_t>(s.width()) >= n_points)
    throw SizeError("support width " + std::to_string(s.width()) + " does not fit a grid of " +
                    std::to_string(n_points));
  std::vector<Complex> buffer(n_points, 0.0);
  if (!s.empty()) {
    for (Index k = s.support_lo(); k <= s.support_hi(); ++k) buffer[detail::wrap(k, n_points)] += s[k];
  }
  detail::inverse_fft(buffer);
  return GridFunction(std::move(buffer));
}

GridFunction to_grid(const CoefficientSequence& s, std::size_t n_points) {
  if (n_points < 2 || !is_power_of_two(n_points))
    throw SizeError("grid size must be a power of two >= 2, got " + std::to_string(n_points));
  if (n_points < static_cast<std::size_t>(4 * (s.width() + 1)))
    throw SizeError("grid of " + std::to_string(n_points) + " points is too small for support width " +
                    std::to_string(s.width()) + " (need N >= 4 (width + 1))");
  return sample_on_grid(s, n_points);
}

namespace {

std::vector<Complex> periodic_coefficients(const GridFunction& g) {
  std::vector<Complex> buffer(g.samples().begin(), g.samples().end());
  detail::forward_fft(buffer);
  const double scale = 1.0 / static_cast<double>(buffer.size());
  for (auto& c : buffer) c *= scale;
  return buffer;
}

}  // namespace

CoefficientSequence from_grid(const GridFunction& g, Interval window) {
  if (window.empty()) return {};
  const std::size_t n = g.n_points();
  if (static_cast<std::size_t>(window.width()) >= n)
    throw AliasingError("window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                        "] is wider than N - 1 = " + std::to_string(n - 1));
  const auto coeffs = periodic_coefficients(g);
  std::vector<Complex> out(window.count());
  for (Index k = window.lo; k <= window.hi; ++k) out[static_cast<std::size_t>(k - window.lo)] = coeffs[detail::wrap(k, n)];
  return {window.lo, std::move(out)};
}

CoefficientSequence centered_coefficients(const GridFunction& g) {
  const auto half = static_cast<Index>(g.n_points() / 2);
  return from_grid(g, {-half, half - 1});
}

Complex evaluate(const CoefficientSequence& s, Complex z) {
  if (s.empty()) return 0.0;
  Complex acc = 0.0;
  const auto c = s.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  const Index lo = s.support_lo();
  return lo >= 0 ? acc * std::pow(z, static_cast<int>(lo)) : acc / std::pow(z, static_cast<int>(-lo));
}

// ---------------------------------------------------------------------------
// Algebra

CoefficientSequence star_reflect(const CoefficientSequence& s) {
  if (s.empty()) return {};
  const auto c = s.coeffs();
  std::vector<Complex> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = std::conj(c[c.size() - 1 - j]);
  return {-s.support_hi(), std::move(out)};
}

CoefficientSequence convolve(const CoefficientSequence& s, const CoefficientSequence& t) {
  if (s.empty() || t.empty()) return {};
  const auto x = s.coeffs();
  const auto y = t.coeffs();
  std::vector<Complex> out(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return {s.support_lo() + t.support_lo(), std::move(out)};
}

GridReciprocal reciprocal_on_grid(const CoefficientSequence& s, std::size_t n_points, Interval window,
                                  double delta) {
  const auto samples = sample_on_grid(s, n_points);
  const double floor = samples.min_abs();
  if (floor < delta) {
    std::ostringstream os;
    os << "symbol vanishes on the circle: min |s| = " << floor << " < " << delta;
    throw VanishingSymbolError(os.str());
  }
  const auto inverse = GridFunction::filled(n_points, 1.0) / samples;
  GridReciprocal out;
  out.coeffs = from_grid(inverse, window);
  const auto product = samples * sample_on_grid(out.coeffs, n_points);
  for (const auto& c : product.samples()) out.residual = std::max(out.residual, std::abs(c - 1.0));
  return out;
}

// ---------------------------------------------------------------------------
// Norms

double weighted_l1_norm(const CoefficientSequence& s, const BeurlingWeight& w) {
  double sum = 0.0;
  for (Index k = s.support_lo(); !s.empty() && k <= s.support_hi(); ++k) sum += std::abs(s[k]) * w(k);
  return sum;
}

double sobolev_norm(const CoefficientSequence& s, double order) {
  double sum = 0.0;
  for (Index k = s.support_lo(); !s.empty() && k <= s.support_hi(); ++k) {
    const double n = static_cast<double>(k);
    sum += std::pow(1.0 + n * n, order) * std::norm(s[k]);
  }
  return std::sqrt(sum);
}

CoefficientSequence fractional_derivative(const CoefficientSequence& s, double order) {
  if (s.empty()) return {};
  std::vector<Complex> out(s.coeffs().begin(), s.coeffs().end());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double n = static_cast<double>(s.support_lo() + static_cast<Index>(j));
    out[j] *= std::pow(1.0 + n * n, order / 2.0);
  }
  return {s.support_lo(), std::move(out)};
}

CoefficientSequence derivative(const CoefficientSequence& s) {
  if (s.empty()) return {};
  std::vector<Complex> out(s.coeffs().begin(), s.coeffs().end());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] *= Complex(0.0, static_cast<double>(s.support_lo() + static_cast<Index>(j)));
  return {s.support_lo(), std::move(out)};
}

double l2_norm(const CoefficientSequence& s) { return sobolev_norm(s, 0.0); }

double determinant_residual(const CoefficientSequence& a, const CoefficientSequence& b, std::size_t n_points) {
  const auto ga = sample_on_grid(a, n_points);
  const auto gb = sample_on_grid(b, n_points);
  double worst = 0.0;
  for (std::size_t j = 0; j < n_points; ++j)
    worst = std::max(worst, std::abs(std::norm(ga[j]) + std::norm(gb[j]) - 1.0));
  return worst;
}

}  // namespace nlft
