// Shared evaluation state for the wave-function routes: the model, its
// ground-state solution, the energy gradient (the exact expectation-value
// form by default, so the dressed identities hold to machine precision),
// and the solve tolerance.  All routes treat this state as read-only, so
// independent evaluations can share one context.

#pragma once

#include <array>

#include "nelson/ground.h"
#include "nelson/model.h"
#include "nelson/resolvent.h"
#include "wavefunctions/tuples.h"

namespace wf {

struct WfContext {
  const nelson::NelsonModel* model = nullptr;
  const nelson::GroundStateResult* gs = nullptr;
  std::array<double, 3> gradE{0.0, 0.0, 0.0};
  double tol = 1e-12;
};

/// Context with the expectation-value energy gradient.
WfContext make_context(const nelson::NelsonModel& model,
                       const nelson::GroundStateResult& gs, double tol = 1e-12);

/// (H_{P-q} - E + delta)^{-1} rhs for a strictly positive offset delta
/// (the shifted resolvents of the iterated-solve routes; no ground-state
/// projector is involved because the shift moves the spectrum up).
fock::FockVector resolvent_apply(const WfContext& ctx,
                                 const std::array<double, 3>& q, double delta,
                                 const fock::FockVector& rhs);

/// Resolvent taken at the i-th prefix of a tuple: q = k_1 + ... + k_i,
/// delta = |k_1| + ... + |k_i| (1-based i).
fock::FockVector resolvent_apply_prefix(const WfContext& ctx,
                                        const MomentumTuple& tuple,
                                        std::size_t i,
                                        const fock::FockVector& rhs);

/// The vacuum coefficient <vac, v>.
fock::cplx vacuum_overlap(const fock::FockVector& v);

}  // namespace wf
