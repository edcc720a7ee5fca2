#pragma once

#include <utility>

#include "nlft/core_types.hpp"

namespace nlft {

/// Partial product G_k = (a_k, b_k) after folding in every F_j with j <= k.
struct RecursionState {
  Index k = 0;
  CoefficientSequence a = CoefficientSequence::constant(1.0);
  CoefficientSequence b;
};

/// One step of the matrix recursion: multiply G_{k-1} on the right by the
/// normalized factor for F_k. Advances state.k to k.
void advance(RecursionState& state, Index k, Complex f_k);

/// Coefficients with modulus below this are clamped after the recursion.
inline constexpr double kForwardClamp = 1e-13;

/// SU(2) nonlinear Fourier transform of a finitely supported sequence,
/// accumulated left to right in ascending index order.
NlftPair nlft_forward(const CoefficientSequence& potential);

/// First row of the SU(2) product (a, b) . (c, d) = (ac - b d*, ad + b c*).
NlftPair su2_product(const NlftPair& left, const NlftPair& right);

/// n-linear term T_n(F, ..., F) of the multilinear expansion, by enumerating
/// strictly increasing index tuples. Throws SizeError past 10^6 tuples.
CoefficientSequence multilinear_term(int arity, const CoefficientSequence& potential);

/// (sum of even terms up to max_arity, sum of odd terms up to max_arity),
/// before the scalar prefactor. T_0 = 1 is included.
std::pair<CoefficientSequence, CoefficientSequence> multilinear_partial_sum(const CoefficientSequence& potential,
                                                                          int max_arity);

/// prod_k (1 + |F_k|^2)^(-1/2).
double a_star_at_zero(const CoefficientSequence& potential);

}  // namespace nlft
