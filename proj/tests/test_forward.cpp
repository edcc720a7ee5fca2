#include <doctest.h>

#include <cmath>
#include <random>

#include "nlft/forward.hpp"
#include "oracles.hpp"

using namespace nlft;

namespace {

CoefficientSequence seq(Index lo, std::vector<Complex> c) { return {lo, std::move(c)}; }

double gap(const CoefficientSequence& x, const CoefficientSequence& y) { return (x - y).max_abs(); }

CoefficientSequence reversed(const CoefficientSequence& f) {
  if (f.empty()) return f;
  std::vector<Complex> v(f.coeffs().rbegin(), f.coeffs().rend());
  return {-f.support_hi(), std::move(v)};
}

}  // namespace

TEST_CASE("forward examples") {
  const auto empty = nlft_forward(CoefficientSequence());
  CHECK(empty.a == CoefficientSequence::constant(1.0));
  CHECK(empty.b.empty());

  const double c = 1.0 / std::sqrt(2.0);
  const auto single = nlft_forward(CoefficientSequence::constant(1.0));
  CHECK(std::abs(single.a[0] - c) < 1e-15);
  CHECK(single.a.support() == Interval{0, 0});
  CHECK(std::abs(single.b[0] - c) < 1e-15);

  // Two factors multiplied out by hand.
  const auto two = nlft_forward(seq(0, {0.5, 0.5}));
  CHECK(two.a.support() == Interval{-1, 0});
  CHECK(std::abs(two.a[0] - 0.8) < 1e-15);
  CHECK(std::abs(two.a[-1] - (-0.2)) < 1e-15);
  CHECK(two.b.support() == Interval{0, 1});
  CHECK(std::abs(two.b[0] - 0.4) < 1e-15);
  CHECK(std::abs(two.b[1] - 0.4) < 1e-15);
  CHECK(two.grid_residual <= 1e-12);
}

TEST_CASE("forward agrees with the direct matrix product") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = oracle::random_potential(rng, -12, 12, trial < 15 ? 0.3 : 2.0);
    const auto pair = nlft_forward(f);
    const auto fmap = oracle::to_map(f);
    for (int j = 0; j < 9; ++j) {
      const Complex z = std::polar(1.0, 0.7 * j + 0.1);
      const auto g = oracle::product_at(fmap, z);
      CHECK(std::abs(evaluate(pair.a, z) - g.m00) < 1e-12);
      CHECK(std::abs(evaluate(pair.b, z) - g.m01) < 1e-12);
      // second row is (-b*, a*)
      CHECK(std::abs(std::conj(evaluate(pair.a, z)) - g.m11) < 1e-12);
      CHECK(std::abs(-std::conj(evaluate(pair.b, z)) - g.m10) < 1e-12);
    }
  }
}

TEST_CASE("determinant identity and a*(0) product") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = oracle::random_potential(rng, -16, 16, 0.3);
    const auto pair = nlft_forward(f);
    CHECK(determinant_residual(pair.a, pair.b, 1024) <= 1e-12);
    double prod = 1.0;
    for (const auto& c : f.coeffs()) prod /= std::sqrt(1.0 + std::norm(c));
    CHECK(std::abs(a_star_at_zero(f) - prod) < 1e-12);
    CHECK(std::abs(star_reflect(pair.a)[0] - prod) < 1e-12);
  }
  CHECK(a_star_at_zero(CoefficientSequence()) == 1.0);
  CHECK(std::abs(a_star_at_zero(CoefficientSequence::constant(1.0)) - 0.7071067811865476) < 1e-15);
  CHECK(std::abs(a_star_at_zero(seq(0, {0.5, 0.5})) - 0.8) < 1e-15);
}

TEST_CASE("support structure") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = oracle::random_potential(rng, -16, 16, 0.3);
    const Index n = f.support_lo() - 1, m = f.support_hi();
    const auto pair = nlft_forward(f);
    const auto a_star = star_reflect(pair.a);
    CHECK(a_star.support_lo() >= 0);
    CHECK(a_star.support_hi() < m - n);
    CHECK(pair.b.support_lo() > n);
    CHECK(pair.b.support_hi() <= m);
  }
}

TEST_CASE("recursion state tracks partial products") {
  const auto f = seq(2, {0.1, Complex(0.0, 0.2), -0.3});
  RecursionState state;
  for (Index k = 2; k <= 4; ++k) advance(state, k, f[k]);
  CHECK(state.k == 4);
  const auto pair = nlft_forward(f);
  CHECK(gap(state.a, pair.a) < 1e-15);
  CHECK(gap(state.b, pair.b) < 1e-15);
}

TEST_CASE("multiplicativity under splitting") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = oracle::random_potential(rng, -16, 16, 0.3);
    const auto whole = nlft_forward(f);
    for (Index n = f.support_lo() - 1; n <= f.support_hi(); n += 3) {
      const auto left = nlft_forward(f.restricted({f.support_lo(), n}));
      const auto right = nlft_forward(f.restricted({n + 1, f.support_hi()}));
      const auto joined = su2_product(left, right);
      const auto ga = to_grid(joined.a - whole.a, 512), gb = to_grid(joined.b - whole.b, 512);
      CHECK(ga.max_abs() < 1e-12);
      CHECK(gb.max_abs() < 1e-12);
    }
  }
}

TEST_CASE("reflection law") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = oracle::random_potential(rng, -16, 16, 0.3);
    const auto pair = nlft_forward(f);
    const auto mirrored = nlft_forward(reversed(f));
    // a*(1/z) has coefficient conj(a_k) at k; b(1/z) has b_{-k} at k.
    for (Index k = -40; k <= 40; ++k) {
      CHECK(std::abs(mirrored.a[k] - std::conj(pair.a[k])) < 1e-12);
      CHECK(std::abs(mirrored.b[k] - pair.b[-k]) < 1e-12);
    }
  }
}

TEST_CASE("multilinear terms") {
  const auto f = seq(0, {0.5, 0.5});
  CHECK(gap(multilinear_term(1, f), seq(0, {0.5, 0.5})) < 1e-15);
  CHECK(multilinear_term(3, CoefficientSequence::monomial(4, 0.7)).trimmed().empty());
  const auto t2 = multilinear_term(2, f);
  CHECK(std::abs(t2[-1] - (-0.25)) < 1e-15);
  CHECK(t2.trimmed().support() == Interval{-1, -1});

  const auto [even1, odd1] = multilinear_partial_sum(CoefficientSequence::constant(1.0), 1);
  CHECK(gap(even1, CoefficientSequence::constant(1.0)) < 1e-15);
  CHECK(gap(odd1, CoefficientSequence::constant(1.0)) < 1e-15);

  const auto [even, odd] = multilinear_partial_sum(f, 2);
  CHECK(gap(even, seq(-1, {-0.25, 1.0})) < 1e-15);
  CHECK(gap(odd, seq(0, {0.5, 0.5})) < 1e-15);
  const auto pair = nlft_forward(f);
  CHECK(gap(even * 0.8, pair.a) < 1e-15);
  CHECK(gap(odd * 0.8, pair.b) < 1e-15);

  const auto [e0, o0] = multilinear_partial_sum(CoefficientSequence(), 5);
  CHECK(gap(e0, CoefficientSequence::constant(1.0)) == 0.0);
  CHECK(o0.trimmed().empty());

  std::vector<Complex> big(40, 0.1);
  CHECK_THROWS_AS(multilinear_term(20, seq(0, big)), SizeError);
}

TEST_CASE("multilinear expansion reproduces the forward transform") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 30; ++trial) {
    std::map<Index, Complex> pts;
    const int count = 1 + trial % 8;
    std::uniform_int_distribution<Index> pick(-10, 10);
    while (static_cast<int>(pts.size()) < count) pts[pick(rng)] = oracle::disk(rng, 1.5);
    const Index lo = pts.begin()->first, hi = pts.rbegin()->first;
    std::vector<Complex> v(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [k, c] : pts) v[static_cast<std::size_t>(k - lo)] = c;
    const CoefficientSequence f(lo, v);
    const auto [even, odd] = multilinear_partial_sum(f, count);
    const auto pair = nlft_forward(f);
    const double s = a_star_at_zero(f);
    CHECK(gap(even * s, pair.a) < 1e-12);
    CHECK(gap(odd * s, pair.b) < 1e-12);
  }
}
