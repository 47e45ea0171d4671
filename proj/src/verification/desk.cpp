#include "verification/desk.h"

namespace verif {

nelson::NelsonParams default_desk_params() {
  nelson::NelsonParams p;
  p.P = {0.1, 0.0, 0.0};
  p.sigma = 0.05;
  p.kappa = 1.0;
  p.lambda = 0.1;
  p.alpha_bar = 0.0;
  p.eps0 = 0.2;
  return p;
}

fock::MomentumGrid default_desk_grid() {
  return fock::make_thin_shell_grid(0.05, 1.0, 2, 0.0025);
}

DeskModel make_desk(const nelson::NelsonParams& params, int n_max,
                    double gs_tol) {
  fock::MomentumGrid grid = fock::make_thin_shell_grid(
      params.sigma, params.kappa, 2, 0.0025);
  auto basis = std::make_shared<const fock::FockBasis>(
      static_cast<int>(grid.size()), n_max);
  nelson::NelsonModel model = nelson::build_hamiltonian(params, grid, basis);
  nelson::GroundStateResult gs = nelson::ground_state(model, gs_tol, 900);
  std::array<double, 3> gradE = nelson::expectation_gradient(model, gs);
  return DeskModel{params, std::move(grid), std::move(basis),
                   std::move(model), std::move(gs), gradE};
}

DeskModel make_default_desk(int n_max) {
  return make_desk(default_desk_params(), n_max);
}

}  // namespace verif
