// The two reference evaluation routes for n-photon wave-function values.
//
// Direct route (grid momenta only): apply n annihilation operators to the
// ground vector and read off the vacuum coefficient,
//
//     f^n(k_{j_1}, ..., k_{j_n}) = <vac, b(k_{j_1}) ... b(k_{j_n}) psi> / sqrt(n!),
//
// with the continuum normalization b(k_j) = b_j / sqrt(w_j).  The dressed
// variant replaces b(k) by b_W(k) = b(k) + f(k) with the dressing scalar
// f(k).  Annihilation operators commute exactly even on the truncated
// space, so the route is symmetric by construction.
//
// Iterated-resolvent route (momenta may lie off the grid): the value is
// the permutation sum of chains
//
//     (-1)^n <vac, R_{(pi, n)} v(k_{pi(n)}) ... R_{(pi, 1)} v(k_{pi(1)}) psi> / sqrt(n!),
//
// where R_{(pi, i)} is the resolvent shifted by the first i momenta of
// the ordering pi.  It is evaluated through the order-free subset
// recursion  y_S = -R_S sum_{i in S} v(k_i) y_{S \ i},  y_{} = psi, which
// reproduces the permutation sum identically with one solve per subset
// and is exactly symmetric in the arguments.

#pragma once

#include "wavefunctions/context.h"

namespace wf {

struct DirectValue {
  fock::cplx value{0.0, 0.0};
  /// Set when n exceeds the photon cap, where the truncated product is
  /// zero by construction rather than small.
  bool truncation_limited = false;
};

/// b(k_{j_1}) ... b(k_{j_n}) psi (or the b_W product when `dressed`),
/// for grid modes j_1, ..., j_n.
fock::FockVector direct_vector(const WfContext& ctx,
                               const std::vector<int>& modes, bool dressed);

/// Vacuum coefficient of the direct vector; undressed values carry the
/// 1/sqrt(n!) wave-function normalization, dressed values are raw.
DirectValue wf_direct(const WfContext& ctx, const std::vector<int>& modes,
                      bool dressed);

/// Iterated-resolvent value via the subset recursion.  Exactly zero
/// (no solves) when the coupling vanishes at any argument.  `flip_sign`
/// negates the (-1)^n chain prefactor (mutation-gate tests only).
fock::cplx wf_froehlich(const WfContext& ctx, const MomentumTuple& tuple,
                        bool flip_sign = false);

/// The permutation sum evaluated literally, one resolvent chain per
/// ordering; small-n oracle for the subset recursion.
fock::cplx froehlich_permutation_reference(const WfContext& ctx,
                                           const MomentumTuple& tuple);

}  // namespace wf
