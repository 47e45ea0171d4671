// Momentum derivatives of wave-function values.
//
// The finite-difference driver treats a route value as a function of the
// total momentum alone: every stencil point re-solves the ground
// problem, aligns the new ground vector's phase to the base one (the
// values are linear in the ground vector, so the gauge must be pinned),
// and re-evaluates the route.  Central differences at steps h, h/2, h/4
// are combined by Richardson extrapolation, and a failure of the updates
// to shrink under halving is flagged instead of silently extrapolated.
//
// For the closed-form route at n = 1 the same derivative is available
// term by term: the resolvent derivative inserts the vertex
// R_1 (Lambda + k)_j R_1, the dressing and vertex factors differentiate
// through the energy gradient (one Hessian column each), and the ground
// vector differentiates into the deflated solve R Lambda_j psi.  The
// piece sum is the independent oracle for the finite-difference driver.

#pragma once

#include <functional>

#include <Eigen/Dense>

#include "wavefunctions/context.h"

namespace wf {

using RouteFn = std::function<fock::cplx(const WfContext&)>;

/// Re-solves the ground problem at total momentum p, aligns the ground
/// vector's phase to the base context's, and evaluates the route on the
/// shifted context (whose energy gradient is recomputed there).  Throws
/// std::domain_error if p leaves |P| < 1/3.
fock::cplx eval_at_momentum(const WfContext& base, const RouteFn& eval,
                            const std::array<double, 3>& p);

struct WfDerivative {
  std::array<fock::cplx, 3> d{};  ///< extrapolated derivative per component
  std::array<double, 3> decay{};  ///< step-halving update ratio (diagnostic)
  bool step_unstable = false;     ///< halving failed to shrink the update
};

/// order 1: d/dP^j of the route value; order 2: d^2/d(P^j)^2.  All
/// stencil points are validated against |P| < 1/3 before any solve.
WfDerivative wf_derivative_P(const WfContext& base, const RouteFn& eval,
                             int order, double h);

/// Analytic d/dP^j of the n = 1 dressed vector R_1 (g(k) . Lambda_1) psi
/// as the sum of the four closed-form pieces described above.  `hessE`
/// is the energy Hessian at the working momentum.
fock::FockVector novel_first_derivative_analytic(const WfContext& ctx,
                                                 const std::array<double, 3>& k,
                                                 int j,
                                                 const Eigen::Matrix3d& hessE);

}  // namespace wf
