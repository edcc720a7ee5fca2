#include "nlft/forward.hpp"

#include <cmath>
#include <map>
#include <string>

namespace nlft {

void advance(RecursionState& state, Index k, Complex f_k) {
  const double scale = 1.0 / std::sqrt(1.0 + std::norm(f_k));
  CoefficientSequence a = state.a - state.b.shifted(-k) * std::conj(f_k);
  CoefficientSequence b = state.b + state.a.shifted(k) * f_k;
  state.a = a * scale;
  state.b = b * scale;
  state.k = k;
}

NlftPair nlft_forward(const CoefficientSequence& potential) {
  RecursionState state;
  for (Index k = potential.support_lo(); !potential.empty() && k <= potential.support_hi(); ++k) {
    if (potential[k] == 0.0) continue;
    advance(state, k, potential[k]);
  }
  NlftPair pair{state.a.trimmed(kForwardClamp), state.b.trimmed(kForwardClamp), 0.0};
  const Index width = std::max(pair.a.width(), pair.b.width());
  pair.grid_residual = determinant_residual(pair.a, pair.b, default_grid_size(2 * width));
  return pair;
}

NlftPair su2_product(const NlftPair& left, const NlftPair& right) {
  NlftPair out;
  out.a = convolve(left.a, right.a) - convolve(left.b, star_reflect(right.b));
  out.b = convolve(left.a, right.b) + convolve(left.b, star_reflect(right.a));
  return out;
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

struct TupleSum {
  const std::vector<std::pair<Index, Complex>>& points;
  int arity;
  std::map<Index, Complex> terms;

  // Position `depth` (0-based) is odd in 1-based counting when depth is even.
  void recurse(std::size_t start, int depth, Index exponent, Complex value) {
    if (depth == arity) {
      terms[exponent] += value;
      return;
    }
    for (std::size_t i = start; i < points.size(); ++i) {
      const auto [j, f] = points[i];
      if (depth % 2 == 0)
        recurse(i + 1, depth + 1, exponent + j, value * f);
      else
        recurse(i + 1, depth + 1, exponent - j, value * -std::conj(f));
    }
  }
};

CoefficientSequence from_terms(const std::map<Index, Complex>& terms) {
  if (terms.empty()) return {};
  const Index lo = terms.begin()->first;
  const Index hi = terms.rbegin()->first;
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& [k, c] : terms) out[static_cast<std::size_t>(k - lo)] = c;
  return {lo, std::move(out)};
}

}  // namespace

CoefficientSequence multilinear_term(int arity, const CoefficientSequence& potential) {
  if (arity < 0) throw InputError("multilinear arity must be >= 0");
  if (arity == 0) return CoefficientSequence::constant(1.0);
  std::vector<std::pair<Index, Complex>> points;
  for (Index k = potential.support_lo(); !potential.empty() && k <= potential.support_hi(); ++k) {
    if (potential[k] != 0.0) points.emplace_back(k, potential[k]);
  }
  if (binomial(points.size(), static_cast<std::size_t>(arity)) > 1e6)
    throw SizeError("multilinear term of arity " + std::to_string(arity) + " over " +
                    std::to_string(points.size()) + " support points exceeds 10^6 tuples");
  TupleSum sum{points, arity, {}};
  sum.recurse(0, 0, 0, 1.0);
  return from_terms(sum.terms);
}

std::pair<CoefficientSequence, CoefficientSequence> multilinear_partial_sum(const CoefficientSequence& potential,
                                                                          int max_arity) {
  std::pair<CoefficientSequence, CoefficientSequence> sums{CoefficientSequence::constant(1.0), {}};
  for (int n = 1; n <= max_arity; ++n) {
    auto term = multilinear_term(n, potential);
    if (n % 2 == 0)
      sums.first += term;
    else
      sums.second += term;
  }
  return sums;
}

double a_star_at_zero(const CoefficientSequence& potential) {
  double log_sum = 0.0;
  for (const auto& f : potential.coeffs()) log_sum += std::log1p(std::norm(f));
  return std::exp(-0.5 * log_sum);
}

}  // namespace nlft
