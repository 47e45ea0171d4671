// The frozen default desk model: the fixed small configuration every
// cross-route and certification check runs on.
//
//     grid     two thin shells between sigma = 0.05 and kappa = 1
//              (12 modes, radial thickness 0.0025)
//     coupling lambda = 0.1, alpha_bar = 0, eps0 = 0.2
//     momentum P = (0.1, 0, 0), quadratic term on
//     cap      N_max = 4 photons (5 for shrink comparisons)
//
// The thin shells keep the per-mode couplings weak, so the sector cap is
// perturbative and three independent wave-function routes can agree to
// 1e-6 at N_max = 4.  The ground solve is run tight (1e-14): the direct
// route multiplies eigenvector noise by 1/sqrt(w) per annihilation, and
// with thin-shell weights that amplification would otherwise dominate
// the route discrepancies.

#pragma once

#include <array>
#include <memory>

#include "fock/basis.h"
#include "fock/grid.h"
#include "nelson/ground.h"
#include "nelson/model.h"

namespace verif {

struct DeskModel {
  nelson::NelsonParams params;
  fock::MomentumGrid grid;
  std::shared_ptr<const fock::FockBasis> basis;
  nelson::NelsonModel model;
  nelson::GroundStateResult gs;
  std::array<double, 3> gradE{0.0, 0.0, 0.0};
};

/// Desk grid and parameters without any solve (cheap; for fingerprints
/// and validation paths).
nelson::NelsonParams default_desk_params();
fock::MomentumGrid default_desk_grid();

/// Fully solved desk model at the given photon cap.
DeskModel make_default_desk(int n_max = 4);

/// Solved model with the desk grid but caller-chosen parameters (used by
/// sweeps over lambda on the fixed desk geometry).
DeskModel make_desk(const nelson::NelsonParams& params, int n_max,
                    double gs_tol = 1e-14);

}  // namespace verif
