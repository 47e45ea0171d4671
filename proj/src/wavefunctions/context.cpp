#include "wavefunctions/context.h"

#include <stdexcept>

namespace wf {

WfContext make_context(const nelson::NelsonModel& model,
                       const nelson::GroundStateResult& gs, double tol) {
  WfContext ctx;
  ctx.model = &model;
  ctx.gs = &gs;
  ctx.gradE = nelson::expectation_gradient(model, gs);
  ctx.tol = tol;
  return ctx;
}

fock::FockVector resolvent_apply(const WfContext& ctx,
                                 const std::array<double, 3>& q, double delta,
                                 const fock::FockVector& rhs) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument(
        "shifted resolvent requires a strictly positive offset");
  }
  nelson::ResolventContext rc(*ctx.model, *ctx.gs);
  nelson::ResolventSpec spec;
  spec.shift_momentum = q;
  spec.energy_offset = delta;
  spec.projector = nelson::ProjectorMode::None;
  return rc.solve(spec, rhs, ctx.tol);
}

fock::FockVector resolvent_apply_prefix(const WfContext& ctx,
                                        const MomentumTuple& tuple,
                                        std::size_t i,
                                        const fock::FockVector& rhs) {
  return resolvent_apply(ctx, tuple.prefix.at(i), tuple.prefix_mag.at(i), rhs);
}

fock::cplx vacuum_overlap(const fock::FockVector& v) { return v.coeffs.at(0); }

}  // namespace wf
