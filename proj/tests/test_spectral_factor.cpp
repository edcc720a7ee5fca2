#include <doctest.h>

#include <cmath>
#include <random>

#include "nlft/forward.hpp"
#include "nlft/spectral_factor.hpp"
#include "oracles.hpp"

using namespace nlft;

namespace {

CoefficientSequence seq(Index lo, std::vector<Complex> c) { return {lo, std::move(c)}; }

double gap(const CoefficientSequence& x, const CoefficientSequence& y) { return (x - y).max_abs(); }

}  // namespace

TEST_CASE("outer completion examples") {
  const Complex c{0.3, -0.4};
  const auto flat = outer_complement(CoefficientSequence::constant(c));
  CHECK(std::abs(flat.a[0] - std::sqrt(1.0 - std::norm(c))) < 1e-14);
  CHECK(flat.a.trimmed(1e-14).support() == Interval{0, 0});

  OuterReport report;
  const auto two = outer_complement(seq(0, {0.4, 0.4}), {}, &report);
  CHECK(std::abs(two.a[0] - 0.8) < 1e-14);
  CHECK(std::abs(two.a[-1] - (-0.2)) < 1e-14);
  CHECK(gap(two.a.trimmed(1e-14), seq(-1, {-0.2, 0.8})) < 1e-14);
  CHECK(report.winding == 0);
  CHECK(report.grid_size == 1024);
  CHECK(std::abs(report.a_star_zero - 0.8) < 1e-14);
  CHECK(two.grid_residual <= 1e-10);

  const auto mono = outer_complement(CoefficientSequence::monomial(5, 0.6));
  CHECK(std::abs(mono.a[0] - 0.8) < 1e-14);
  CHECK(gap(mono.a.trimmed(1e-14), CoefficientSequence::constant(0.8)) < 1e-14);
}

TEST_CASE("outer completion rejects data at the Szego boundary") {
  CHECK_THROWS_AS(outer_complement(seq(0, {0.5, 0.5})), SzegoMarginError);
  OuterOptions tight;
  tight.szego_margin = 0.2;
  CHECK_THROWS_AS(outer_complement(CoefficientSequence::constant(0.9), tight), SzegoMarginError);
}

TEST_CASE("winding number and disk zero count") {
  CHECK(winding_number(seq(0, {-0.5, 1.0}), 1.0, 256) == 1);
  CHECK(winding_number(seq(0, {1.0, -0.5}), 1.0, 256) == 0);
  CHECK(winding_number(seq(0, {0.25, 0.0, 1.0}), 1.0, 256) == 2);
  CHECK(disk_zero_count(seq(0, {-0.9995, 1.0})) == 1);
  CHECK(disk_zero_count(seq(0, {-1.0005, 1.0})) == 0);
  CHECK(disk_zero_count(seq(0, {0.8, -0.2})) == 0);
  // zero on the circle itself is not inside the disk
  CHECK(disk_zero_count(seq(0, {0.5, -0.5})) == 0);
}

TEST_CASE("outer completion recovers forward pairs whose a* is outer") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = oracle::random_potential(rng, -16, 16, 0.3);
    const auto pair = nlft_forward(f);
    if (disk_zero_count(star_reflect(pair.a)) != 0) continue;
    ++checked;
    OuterOptions opts;
    // zeros of a* near the circle slow the decay of log a*
    for (opts.grid_size = 1024;; opts.grid_size *= 2) {
      OuterReport report;
      const auto done = outer_complement(pair.b, opts, &report);
      if (report.tail_mass < 1e-12 || opts.grid_size == 65536) {
        CHECK(gap(done.a, pair.a) < 1e-10);
        CHECK(done.grid_residual < 1e-10);
        // outer normalization: a*(0) = exp(mean log(1 - |b|^2) / 2)
        const auto b = to_grid(pair.b, opts.grid_size);
        double mean = 0.0;
        for (auto v : b.samples()) mean += std::log(1.0 - std::norm(v));
        mean /= static_cast<double>(opts.grid_size);
        CHECK(std::abs(report.a_star_zero - std::exp(0.5 * mean)) < 1e-10);
        break;
      }
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("symbol ratio") {
  const NlftPair trivial{CoefficientSequence::constant(1.0), {}, 0.0};
  CHECK(symbol_ratio(trivial).max_abs() == 0.0);

  const Complex c{0.6, 0.0};
  const NlftPair flat{CoefficientSequence::constant(0.8), CoefficientSequence::constant(c), 0.0};
  const auto q = symbol_ratio(flat);
  CHECK(std::abs(q[0] - 0.75) < 1e-15);
  CHECK(q.trimmed(1e-15).support() == Interval{0, 0});

  // (0.4 + 0.4z) / (0.8 - 0.2z) as a geometric series
  SymbolReport report;
  const auto pair = nlft_forward(seq(0, {0.5, 0.5}));
  const auto r = symbol_ratio(pair, 0, std::nullopt, 1e-6, &report);
  CHECK(std::abs(r[0] - 0.5) < 1e-15);
  for (Index k = 1; k <= 20; ++k) CHECK(std::abs(r[k] - 0.625 * std::pow(0.25, static_cast<double>(k - 1))) < 1e-15);
  CHECK(std::abs(weighted_l1_norm(r, BeurlingWeight::one()) - 4.0 / 3.0) < 1e-12);
  CHECK(report.tail_mass < 1e-10);

  const NlftPair bad{seq(-1, {-0.5, 0.5}), seq(0, {0.5, 0.5}), 0.0};
  CHECK_THROWS_AS(symbol_ratio(bad), VanishingSymbolError);
}

TEST_CASE("finite symbol ratio implies an invertible a* and |b| < 1") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = oracle::random_potential(rng, -8, 8, 0.3);
    const auto pair = nlft_forward(f);
    const auto r = symbol_ratio(pair);
    CHECK(std::isfinite(weighted_l1_norm(r, BeurlingWeight::one())));
    const auto a_star = star_reflect(pair.a);
    CHECK_NOTHROW(reciprocal_on_grid(a_star, 1024, {0, 512}));
    CHECK(to_grid(pair.b, 1024).max_abs() < 1.0);
  }
}
