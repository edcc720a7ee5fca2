#include <doctest.h>

#include <cmath>
#include <random>

#include "nlft/estimates.hpp"
#include "nlft/forward.hpp"
#include "nlft/inverse_rh.hpp"
#include "oracles.hpp"

using namespace nlft;

namespace {

CoefficientSequence seq(Index lo, std::vector<Complex> c) { return {lo, std::move(c)}; }

double gap(const CoefficientSequence& x, const CoefficientSequence& y) { return (x - y).max_abs(); }

const NlftPair& worked() {
  static const NlftPair pair = nlft_forward(seq(0, {0.5, 0.5}));
  return pair;
}

// Random F whose a* is outer, so b alone determines the pair, and whose |b|
// stays inside the Szego margin.
CoefficientSequence outer_potential(std::mt19937_64& rng, Index lo, Index hi, double r) {
  for (;;) {
    const auto f = oracle::random_potential(rng, lo, hi, r);
    const auto pair = nlft_forward(f);
    if (disk_zero_count(star_reflect(pair.a)) == 0 && sample_on_grid(pair.b, 4096).max_abs() < 1.0 - 1e-4) return f;
  }
}

// Grid on which the outer factor of b is resolved to roundoff.
std::size_t resolved_grid(const NlftPair& pair) { return inverse_nlft(pair.b).report.outer.grid_size; }

}  // namespace

TEST_CASE("apply_m on the two-point example") {
  const RhSystem sys(worked(), 0);
  CHECK(sys.index() == 0);
  CHECK(sys.bandwidth() > 0);
  const SequencePair x{CoefficientSequence::constant(1.0), {}};
  const auto y = apply_m(sys, x);
  CHECK(y.first.trimmed(1e-15).empty());
  // -P_{<=0}(b/a*) applied to delta_0 keeps only (b/a*)_0 = 0.5
  CHECK(std::abs(y.second[0] - (-0.5)) < 1e-14);
  CHECK(y.second.trimmed(1e-14).support() == Interval{0, 0});

  // second slot delta_0 maps to P_+ (b*/a) delta_0, i.e. conj of (b/a*)_{-k}
  const SequencePair x2{{}, CoefficientSequence::constant(1.0)};
  const auto y2 = apply_m(sys, x2);
  CHECK(y2.second.trimmed(1e-15).empty());
  CHECK(std::abs(y2.first[0] - 0.5) < 1e-14);
  CHECK(y2.first.trimmed(1e-14).support() == Interval{0, 0});
}

TEST_CASE("pack rejects slots outside the windows") {
  const RhSystem sys(worked(), 0, 0, 3);
  CHECK(sys.dimension() == 6);
  CHECK(sys.plus_window() == Interval{0, 2});
  CHECK(sys.lower_window() == Interval{-2, 0});
  CHECK_THROWS_AS(sys.pack({CoefficientSequence::monomial(-1, 1.0), {}}), InputError);
  CHECK_THROWS_AS(sys.pack({{}, CoefficientSequence::monomial(1, 1.0)}), InputError);
  const SequencePair x{seq(0, {1.0, 2.0}), seq(-1, {3.0, 4.0})};
  const auto back = sys.unpack(sys.pack(x));
  CHECK(gap(back.first, x.first) == 0.0);
  CHECK(gap(back.second, x.second) == 0.0);
}

TEST_CASE("rh_solve examples") {
  const RhSystem sys(worked(), -1);
  const auto below = rh_solve(sys);
  CHECK(std::abs(below.a_n_star_0 - 1.0) < 1e-14);
  CHECK(gap(below.a_n, CoefficientSequence::constant(1.0)) < 1e-14);
  CHECK(below.b_n.trimmed(1e-14).empty());

  const auto first = rh_solve(sys.at_index(0));
  const auto expect0 = nlft_forward(seq(0, {0.5}));
  CHECK(gap(first.a_n, expect0.a) < 1e-13);
  CHECK(gap(first.b_n, expect0.b) < 1e-13);
  CHECK(std::abs(first.a_n_star_0 - 1.0 / std::sqrt(1.25)) < 1e-14);

  const auto full = rh_solve(sys.at_index(1));
  CHECK(gap(full.a_n, worked().a) < 1e-13);
  CHECK(gap(full.b_n, worked().b) < 1e-13);
  CHECK(std::abs(full.a_n_star_0 - 0.8) < 1e-14);
  CHECK(full.residual <= 1e-12);
}

TEST_CASE("rh_solve matches forward transforms of truncations") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const auto f = outer_potential(rng, -10, 10, 0.3);
    const auto pair = nlft_forward(f);
    const RhSystem base(pair, f.support_lo(), resolved_grid(pair));
    for (Index n = f.support_lo() - 1; n <= f.support_hi() + 1; ++n) {
      const auto sol = rh_solve(base.at_index(n));
      const auto expect = nlft_forward(f.restricted({f.support_lo(), std::min(n, f.support_hi())}));
      CHECK(gap(sol.a_n, expect.a) < 1e-10);
      CHECK(gap(sol.b_n, expect.b) < 1e-10);
    }
  }
}

TEST_CASE("layer stripping examples") {
  CHECK(gap(layer_strip(worked(), {0, 1}), seq(0, {0.5, 0.5})) < 1e-13);
  const auto wide = layer_strip(worked(), {-2, 3});
  CHECK(wide.support() == Interval{-2, 3});
  CHECK(gap(wide, seq(0, {0.5, 0.5})) < 1e-13);
  CHECK(wide[-2] == Complex(0.0));
  CHECK(wide[3] == Complex(0.0));

  // negative support
  const auto f = seq(-3, {Complex(0.1, 0.2), -0.3, 0.0, Complex(0.0, 0.25)});
  CHECK(gap(layer_strip(nlft_forward(f), {-3, 0}), f) < 1e-12);
}

TEST_CASE("inverse examples") {
  const auto r = inverse_nlft(worked().b);
  CHECK(gap(r.potential, seq(0, {0.5, 0.5})) < 1e-12);
  CHECK(gap(r.pair.a, worked().a) < 1e-12);
  CHECK(r.report.b_round_trip_error < 1e-12);
  CHECK(r.report.window == Interval{0, 1});

  const auto single = inverse_nlft(CoefficientSequence::monomial(3, 0.6));
  CHECK(gap(single.potential, CoefficientSequence::monomial(3, 0.75)) < 1e-12);

  const auto zero = inverse_nlft(CoefficientSequence(), Interval{-1, 1});
  CHECK(zero.potential.max_abs() == 0.0);

  CHECK_THROWS_AS(inverse_nlft(seq(0, {0.5, 0.5})), SzegoMarginError);
}

TEST_CASE("inverse recovers random outer instances") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 15; ++trial) {
    const auto f = outer_potential(rng, -12, 12, 0.4);
    const auto r = inverse_nlft(nlft_forward(f).b, f.support());
    CHECK(gap(r.potential, f) < 1e-9);
    CHECK(r.report.max_solver_residual <= 1e-12);
  }
}

TEST_CASE("Riemann-Hilbert operator is antisymmetric and contractive") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = outer_potential(rng, -8, 8, 0.5);
    const auto pair = nlft_forward(f);
    for (Index n = f.support_lo(); n <= f.support_hi(); n += 4) {
      const RhSystem sys(pair, n, resolved_grid(pair));
      CHECK(antisymmetry_residual(sys, 5, rng) <= 1e-12);
      // <(Id + M)x, x> = |x|^2 for skew M, so |(Id + M)x| >= |x|
      std::normal_distribution<double> g;
      std::vector<Complex> x(sys.dimension()), y(sys.dimension());
      for (auto& v : x) v = {g(rng), g(rng)};
      sys.apply_m(x, y);
      double nx = 0.0, ny = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        nx += std::norm(x[i]);
        ny += std::norm(x[i] + y[i]);
      }
      CHECK(ny >= nx * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("truncation certificate") {
  // past the support of b the tail vanishes
  CHECK(truncation_certificate(worked(), 1, BeurlingWeight::one()) < 1e-14);
  // P_{>0} b = 0.4 z, divided by a* = 0.8 - 0.2 z
  const double expect = 0.5 * (1.0 / (1.0 - 0.25));
  CHECK(std::abs(truncation_certificate(worked(), 0, BeurlingWeight::one()) - expect) < 1e-12);
  CHECK(truncation_certificate(worked(), 0, BeurlingWeight::polynomial(1.0)) >
        truncation_certificate(worked(), 0, BeurlingWeight::one()));
}

TEST_CASE("solver failures surface as errors") {
  const RhSystem sys(worked(), 1);
  CHECK_THROWS_AS(rh_solve(sys, 1e-14, 1), ConvergenceError);
  const NlftPair bad{seq(-1, {-0.5, 0.5}), seq(0, {0.5, 0.5}), 0.0};
  CHECK_THROWS_AS(RhSystem(bad, 0), VanishingSymbolError);
}
