// The closed-form evaluation route.  The dressed n-photon vector is a
// sum over argument orderings and strictly-separated contraction
// patterns of iterated solve chains,
//
//     fhat^n = sum_{orderings} sum_{l <= n/2} (-1)^l / 2^l
//              sum_{patterns C_l} I_{C_l},
//
// where the chain I_{C_l} is assembled right-to-left over positions
// 1..n: an uncontracted position i applies the shifted resolvent R_i
// after the dressed vertex g(k_i) . Lambda_i with
// Lambda_i = Lambda + (k_1 + ... + k_{i-1}) + k_i/2, while a contracted
// pair (i-1, i) collapses to the scalar g(k_{i-1}) . g(k_i) times R_i
// alone.  The vector indices at the free positions are expanded
// explicitly — one solve chain per component combination (3^{n-2l} of
// them) — rather than contracted on the fly; the counts are tiny at the
// scales used and every chain is auditable on its own.  Undressed values
// follow by expanding the product of b(k) = b_W(k) - f(k) over argument
// subsets.
//
// The sign and prefactor conventions are gated by a mutation battery:
// the test-visible knobs below flip one convention at a time, and the
// agreement tests against the direct route must fail under every single
// mutation while passing with none.

#pragma once

#include "recurrence_core/pattern.h"
#include "wavefunctions/context.h"

namespace wf {

/// Deliberate single-convention mutations (tests only; all false in
/// production use).
struct NovelMutations {
  bool flip_pattern_sign = false;    ///< (-1)^l -> (+1)^l in the pattern sum
  bool drop_half_factor = false;     ///< 1/2^l -> 1 in the pattern sum
  bool flip_conversion_sign = false; ///< (-1)^{n-|S|} -> +1 in the undressing sum
  bool double_half_shift = false;    ///< vertex shift k_i/2 -> k_i
  bool flip_F_sign = false;          ///< negate the free-vertex factor g.(Lambda+shift)
};

/// One contraction-pattern chain I_{C_l} applied to the ground vector.
/// The pattern must use the shifted index convention (index i contracts
/// the position pair (i-1, i)) and match the tuple length.
fock::FockVector compute_I_pattern(const WfContext& ctx,
                                   const recur::ContractionPattern& pattern,
                                   const MomentumTuple& tuple,
                                   const NovelMutations& mut = {});

/// The dressed vector fhat^n: ordering sum of signed pattern chains
/// (fhat^0 is the ground vector itself).  Symmetric in the arguments by
/// construction.
fock::FockVector novel_dressed_vector(const WfContext& ctx,
                                      const MomentumTuple& tuple,
                                      const NovelMutations& mut = {});

/// Vacuum coefficient of fhat^n.
fock::cplx wf_novel_dressed(const WfContext& ctx, const MomentumTuple& tuple,
                            const NovelMutations& mut = {});

/// The undressed value f^n: subset expansion
///     f^n = (1/sqrt(n!)) sum_{S subset of positions} (-1)^{n-|S|}
///           (prod_{i not in S} f(k_i)) <vac, fhat^{|S|}(k_S)>,
/// exactly zero (no solves) when the coupling vanishes at any argument.
fock::cplx wf_novel(const WfContext& ctx, const MomentumTuple& tuple,
                    const NovelMutations& mut = {});

}  // namespace wf
