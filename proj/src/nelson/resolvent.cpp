#include "nelson/resolvent.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "linalg/cg.h"

namespace nelson {

fock::FockVector project_out_ground(const GroundStateResult& gs,
                                    const fock::FockVector& v) {
  fock::FockVector out = v;
  const fock::cplx overlap = fock::dot(gs.psi, v);
  linalg::caxpy(-overlap, gs.psi.coeffs.data(), out.coeffs.data(), out.dim());
  return out;
}

fock::FockVector ResolventContext::solve(const ResolventSpec& spec,
                                         const fock::FockVector& rhs,
                                         double tol) const {
  const double delta = spec.energy_offset;
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("energy offset must be non-negative");
  }
  const bool shifted_q = pnorm(spec.shift_momentum) != 0.0;
  const bool deflate = spec.projector == ProjectorMode::QPerp;
  if (deflate && shifted_q) {
    throw std::invalid_argument(
        "ground-state projector is only defined at zero momentum shift");
  }
  if (delta == 0.0) {
    if (!deflate) {
      throw std::invalid_argument(
          "zero offset without the ground-state projector is singular");
    }
    const double overlap = std::abs(fock::dot(gs_->psi, rhs));
    const double scale = fock::norm(rhs);
    if (scale > 0.0 && overlap > 1e-6 * scale) {
      throw std::invalid_argument(
          "zero-offset solve requires an rhs orthogonal to the ground state");
    }
  }

  // Conditioning guard where the smallest eigenvalue is known a priori.
  if (!shifted_q) {
    const double floor = delta + (deflate ? gs_->gap : 0.0);
    const double threshold = 1e3 * tol * std::max(1.0, std::abs(gs_->E));
    if (!(floor > threshold)) {
      std::ostringstream msg;
      msg << "near-singular resolvent: offset " << delta << " + "
          << (deflate ? gs_->gap : 0.0) << " (projected gap) = " << floor
          << " is not above the conditioning threshold " << threshold;
      throw std::runtime_error(msg.str());
    }
  }

  NelsonModel shifted = model_->shifted(spec.shift_momentum);
  std::vector<double> diag = shifted.diagonal();
  for (auto& d : diag) d += delta - gs_->E;

  const auto& interaction = model_->interaction();
  auto apply = [&interaction, &diag](const fock::cplx* x, fock::cplx* y) {
    interaction.apply_plus_diag(diag.data(), x, y);
  };

  fock::FockVector x(model_->basis());
  linalg::CgOptions opts;
  opts.rel_tol = tol;
  linalg::CgResult res;
  try {
    res = linalg::cg_solve(model_->dim(), apply, diag.data(), rhs.coeffs, x.coeffs,
                           opts, deflate ? gs_->psi.coeffs.data() : nullptr);
  } catch (const std::runtime_error& e) {
    std::ostringstream msg;
    msg << "resolvent solve failed (offset " << delta << ", shifted momentum "
        << (shifted_q ? "yes" : "no") << "): " << e.what();
    throw std::runtime_error(msg.str());
  }
  if (!res.converged) {
    std::ostringstream msg;
    msg << "resolvent solve did not converge: " << res.iterations
        << " iterations, relative residual " << res.rel_residual << ", offset "
        << delta;
    throw std::runtime_error(msg.str());
  }
  return x;
}

std::array<fock::FockVector, 3> ResolventContext::psi_gradient(
    const std::array<double, 3>& gradE, double tol) const {
  ResolventSpec spec;
  spec.projector = ProjectorMode::QPerp;
  std::array<fock::FockVector, 3> out;
  for (int j = 0; j < 3; ++j) {
    fock::FockVector rhs = project_out_ground(
        *gs_, apply_lambda_component(*model_, gradE, j, gs_->psi));
    out[static_cast<std::size_t>(j)] = solve(spec, rhs, tol);
  }
  return out;
}

Eigen::Matrix3d ResolventContext::hessian_analytic(
    const std::array<double, 3>& gradE, double tol) const {
  const auto dpsi = psi_gradient(gradE, tol);
  Eigen::Matrix3d h;
  for (int j = 0; j < 3; ++j) {
    const fock::FockVector lam_j =
        apply_lambda_component(*model_, gradE, j, gs_->psi);
    for (int jp = 0; jp < 3; ++jp) {
      const double cross =
          std::real(fock::dot(dpsi[static_cast<std::size_t>(jp)], lam_j));
      h(j, jp) = (j == jp ? 1.0 : 0.0) - 2.0 * cross;
    }
  }
  return ((h + h.transpose()) / 2.0).eval();
}

fock::FockVector ResolventContext::psi_second_derivative(
    const std::array<double, 3>& gradE, int j, int jp, double tol) const {
  ResolventSpec spec;
  spec.projector = ProjectorMode::QPerp;
  auto first = [&](int c) {
    fock::FockVector rhs = project_out_ground(
        *gs_, apply_lambda_component(*model_, gradE, c, gs_->psi));
    return solve(spec, rhs, tol);
  };
  const fock::FockVector d_j = first(j);
  const fock::FockVector d_jp = (jp == j) ? d_j : first(jp);

  auto second = [&](int c, const fock::FockVector& inner) {
    fock::FockVector rhs = project_out_ground(
        *gs_, apply_lambda_component(*model_, gradE, c, inner));
    return solve(spec, rhs, tol);
  };
  fock::FockVector out = second(jp, d_j) + second(j, d_jp);
  const fock::cplx norm_part = fock::dot(d_jp, d_j);
  fock::FockVector correction = gs_->psi;
  correction *= norm_part;
  out -= correction;
  return out;
}

}  // namespace nelson
