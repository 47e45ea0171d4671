// Envelope bounds and the combinatorial lemma behind them.
//
// The product envelope for an n-photon value is
//
//     gbound(k_1, ..., k_n) = prod_i c * lambda * 1_{|k_i| >= sigma}
//                             * chi(|k_i|; kappa_star) * |k_i|^{alpha_bar}
//                             / |k_i|^{3/2},
//
// using the widened smooth cutoff whose plateau covers the support of
// the coupling, so the envelope never vanishes where a value can be
// nonzero.  The permutation lemma collapses the ordering sum of inverse
// prefix magnitudes to the plain inverse product; it is what turns the
// n! resolvent chains into an n-independent envelope.

#pragma once

#include "nelson/model.h"
#include "wavefunctions/tuples.h"

namespace wf {

/// The product envelope above with a caller-chosen overall constant c
/// per factor.
double gbound(const nelson::NelsonParams& params, const MomentumTuple& tuple,
              double c);

/// sum over permutations pi of prod_{m=1..n} 1 / (|k_{pi(1)}| + ... +
/// |k_{pi(m)}|), evaluated literally (n! orderings); equals
/// prod_m 1 / |k_m| identically.
double permutation_inverse_sum(const std::vector<double>& magnitudes);

}  // namespace wf
