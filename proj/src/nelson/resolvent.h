// Shifted-resolvent solves against the ground energy:
//
//     (H_{P-q} - E + Delta) x = rhs,
//
// optionally restricted to the orthogonal complement of the ground state
// (the deflated resolvent R with R psi = 0).  On top of the raw solver
// sit the derivative formulas that only need resolvent applications:
// the ground-vector gradient R Lambda^j psi, the analytic Hessian of the
// energy, and the closed-form second derivative of the ground vector.
//
// Preconditions (violations throw):
//   * Delta >= 0;
//   * the ground-state projector is only meaningful at q = 0;
//   * Delta = 0 requires the projector and an rhs orthogonal to psi
//     (the operator is singular on the span of psi);
//   * the known smallest eigenvalue (Delta, plus the gap under the
//     projector) must be safely above the solve tolerance, otherwise the
//     call fails with a conditioning report instead of returning noise.

#pragma once

#include <array>

#include <Eigen/Dense>

#include "nelson/dressing.h"
#include "nelson/ground.h"
#include "nelson/model.h"

namespace nelson {

enum class ProjectorMode { None, QPerp };

struct ResolventSpec {
  std::array<double, 3> shift_momentum{0.0, 0.0, 0.0};  ///< q
  double energy_offset = 0.0;                           ///< Delta >= 0
  ProjectorMode projector = ProjectorMode::None;
};

/// Q-perp v = v - psi <psi, v>.
fock::FockVector project_out_ground(const GroundStateResult& gs,
                                    const fock::FockVector& v);

class ResolventContext {
 public:
  ResolventContext(const NelsonModel& model, const GroundStateResult& gs)
      : model_(&model), gs_(&gs) {}

  const NelsonModel& model() const { return *model_; }
  const GroundStateResult& ground() const { return *gs_; }

  /// Solves (H_{P-q} - E + Delta) x = rhs (projected rhs under QPerp).
  /// Throws std::invalid_argument on violated preconditions and
  /// std::runtime_error with a conditioning report when the system is
  /// near-singular or the iteration fails.
  fock::FockVector solve(const ResolventSpec& spec, const fock::FockVector& rhs,
                         double tol = 1e-12) const;

  /// R Lambda^j psi: the derivative of the ground vector in P^j, in the
  /// gauge <psi, d psi> = 0 (deflated solve at Delta = 0).
  std::array<fock::FockVector, 3> psi_gradient(const std::array<double, 3>& gradE,
                                               double tol = 1e-12) const;

  /// delta_jj' - 2 <R Lambda^j' psi, Lambda^j psi>: the energy Hessian
  /// expressed through one resolvent solve per direction.
  Eigen::Matrix3d hessian_analytic(const std::array<double, 3>& gradE,
                                   double tol = 1e-12) const;

  /// R Lambda^j' R Lambda^j psi + (j <-> j')
  ///   - psi <R Lambda^j' psi, R Lambda^j psi>:
  /// the second derivative of the ground vector in the same gauge.
  fock::FockVector psi_second_derivative(const std::array<double, 3>& gradE,
                                         int j, int jp, double tol = 1e-12) const;

 private:
  const NelsonModel* model_;
  const GroundStateResult* gs_;
};

}  // namespace nelson
