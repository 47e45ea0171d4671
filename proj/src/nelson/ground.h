// Ground-state eigenpair of the assembled fiber Hamiltonian, plus the
// finite-difference energy-derivative driver and the expectation-value
// gradient oracle.
//
// Conventions fixed here:
//  * the ground vector is normalized and its largest-magnitude component
//    is rotated to be real positive (lowest index breaks ties), so reruns
//    and independent solvers agree without a phase ambiguity;
//  * derivative stencils are validated against the |P| < 1/3 region before
//    any solve, and the step-halving decay of the central differences is
//    monitored -- a failure to decay marks the step as too large instead
//    of silently extrapolating garbage.

#pragma once

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "nelson/model.h"

namespace nelson {

struct GroundStateResult {
  double E = 0.0;              ///< lowest eigenvalue
  fock::FockVector psi;        ///< normalized eigenvector, fixed sign convention
  double gap = 0.0;            ///< distance to the next Ritz value
  int iterations = 0;          ///< Lanczos steps used
  double residual = 0.0;       ///< ||H psi - E psi||
};

/// Computes the ground eigenpair iteratively.  Throws std::runtime_error
/// with iteration diagnostics if the solver does not converge, and if the
/// reported spectral gap is not above 10x the solver tolerance (the
/// derivative machinery downstream divides by the gap).
GroundStateResult ground_state(const NelsonModel& model, double tol = 1e-12,
                               int max_iter = 600);

/// Expectation-value gradient <psi, (P_eff - P_f) psi>: for an exact
/// eigenpair of the discretized model this equals the energy gradient
/// identically (eigenvalue perturbation), so it serves as an independent
/// oracle for the finite-difference route.  Requires the quadratic term.
std::array<double, 3> expectation_gradient(const NelsonModel& model,
                                           const GroundStateResult& gs);

struct GradEnergyResult {
  std::array<double, 3> gradE{};      ///< Richardson-extrapolated central differences
  bool step_too_large = false;        ///< halving the step failed to shrink the update
  std::array<double, 3> decay{};      ///< per-component update ratio (diagnostic)
  double base_step = 0.0;
  std::optional<Eigen::Matrix3d> hessE;  ///< central second differences when requested
};

/// Central differences of the ground energy in the total momentum, with
/// Richardson extrapolation over steps (h, h/2, h/4).  Throws
/// std::domain_error if any stencil point leaves |P| < 1/3.  Repeated
/// stencil energies are solved once and cached.
GradEnergyResult grad_energy(const NelsonModel& model, double h,
                             double tol = 1e-12, bool with_hessian = false);

}  // namespace nelson
