#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>
#include <vector>

#include "nlft/estimates.hpp"
#include "nlft/forward.hpp"
#include "nlft/inverse_rh.hpp"
#include "nlft/io.hpp"
#include "nlft/spectral_factor.hpp"

namespace py = pybind11;
using namespace nlft;

namespace {

// Sequences cross the boundary as (support_lo, [coefficients]).
using PySeq = std::pair<Index, std::vector<Complex>>;

CoefficientSequence to_seq(const PySeq& s) {
  if (s.second.empty()) return {};
  return {s.first, s.second};
}

PySeq from_seq(const CoefficientSequence& s) {
  if (s.empty()) return {0, {}};
  return {s.support_lo(), std::vector<Complex>(s.coeffs().begin(), s.coeffs().end())};
}

std::optional<Interval> to_window(const std::optional<std::pair<Index, Index>>& w) {
  if (!w) return std::nullopt;
  return Interval{w->first, w->second};
}

BeurlingWeight to_weight(const std::string& spec) { return io::parse_weight(spec); }

py::dict pair_dict(const NlftPair& p) {
  py::dict d;
  d["a"] = from_seq(p.a);
  d["b"] = from_seq(p.b);
  d["grid_residual"] = p.grid_residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SU(2) nonlinear Fourier transform on finitely supported sequences";

  auto base = py::register_exception<Error>(m, "NlftError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<AliasingError>(m, "AliasingError", base.ptr());
  py::register_exception<VanishingSymbolError>(m, "VanishingSymbolError", base.ptr());
  py::register_exception<SzegoMarginError>(m, "SzegoMarginError", base.ptr());
  py::register_exception<OuterFactorError>(m, "OuterFactorError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());

  m.def(
      "forward",
      [](const PySeq& f, std::size_t grid_size) {
        auto pair = nlft_forward(to_seq(f));
        const std::size_t n = spectral_grid_size(grid_size, 2 * std::max(pair.a.width(), pair.b.width()));
        pair.grid_residual = determinant_residual(pair.a, pair.b, n);
        return pair_dict(pair);
      },
      py::arg("f"), py::arg("grid_size") = 0, "F -> {'a', 'b', 'grid_residual'}");

  m.def(
      "inverse",
      [](const PySeq& b, std::optional<std::pair<Index, Index>> window, std::size_t grid_size, double solver_tol,
         double szego_margin) {
        RhOptions o;
        o.grid_size = grid_size;
        o.solver_tol = solver_tol;
        o.szego_margin = szego_margin;
        const auto r = inverse_nlft(to_seq(b), to_window(window), o);
        py::dict d;
        d["potential"] = from_seq(r.potential);
        d["pair"] = pair_dict(r.pair);
        d["grid_size"] = r.report.outer.grid_size;
        d["a_star_zero"] = r.report.outer.a_star_zero;
        d["determinant_residual"] = r.report.determinant_residual;
        d["max_solver_residual"] = r.report.max_solver_residual;
        d["b_round_trip_error"] = r.report.b_round_trip_error;
        return d;
      },
      py::arg("b"), py::arg("window") = py::none(), py::arg("grid_size") = 0, py::arg("solver_tol") = 1e-12,
      py::arg("szego_margin") = 1e-6, "b -> F by outer completion and layer stripping");

  m.def(
      "layer_strip",
      [](const PySeq& a, const PySeq& b, std::pair<Index, Index> window) {
        return from_seq(layer_strip(NlftPair{to_seq(a), to_seq(b), 0.0}, Interval{window.first, window.second}));
      },
      py::arg("a"), py::arg("b"), py::arg("window"));

  m.def(
      "outer_complement",
      [](const PySeq& b, std::size_t grid_size, double szego_margin) {
        OuterOptions o;
        if (grid_size != 0) o.grid_size = grid_size;
        o.szego_margin = szego_margin;
        return pair_dict(outer_complement(to_seq(b), o));
      },
      py::arg("b"), py::arg("grid_size") = 0, py::arg("szego_margin") = 1e-6);

  m.def(
      "weighted_norm", [](const PySeq& s, const std::string& weight) { return weighted_l1_norm(to_seq(s), to_weight(weight)); },
      py::arg("s"), py::arg("weight") = "one", "sum |s_n| w(n) for weight 'one' or 'poly:alpha=<a>'");

  m.def(
      "symbol_ratio",
      [](const PySeq& a, const PySeq& b) { return from_seq(symbol_ratio(NlftPair{to_seq(a), to_seq(b), 0.0})); },
      py::arg("a"), py::arg("b"), "coefficients of b/a*");

  m.def(
      "verify",
      [](const PySeq& f, std::size_t grid_size, std::uint64_t seed) {
        SuiteOptions o;
        if (grid_size != 0) o.grid_size = grid_size;
        o.seed = seed;
        const auto report = run_suite(to_seq(f), o);
        return py::make_tuple(report.passed(), io::write_report(report));
      },
      py::arg("f"), py::arg("grid_size") = 0, py::arg("seed") = 0,
      "runs the verification suite; returns (passed, JSON report)");
}
