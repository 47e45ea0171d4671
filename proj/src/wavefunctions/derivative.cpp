#include "wavefunctions/derivative.h"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "nelson/dressing.h"
#include "nelson/resolvent.h"

namespace wf {

fock::cplx eval_at_momentum(const WfContext& base, const RouteFn& eval,
                            const std::array<double, 3>& p) {
  if (!(nelson::pnorm(p) < 1.0 / 3.0)) {
    throw std::domain_error("stencil momentum outside the validity region");
  }
  const nelson::NelsonModel model = base.model->at_momentum(p);
  nelson::GroundStateResult gs = nelson::ground_state(model, base.tol);
  const fock::cplx o = fock::dot(base.gs->psi, gs.psi);
  if (!(std::abs(o) > 0.0)) {
    throw std::runtime_error(
        "stencil ground state is orthogonal to the base one; step far too "
        "large");
  }
  gs.psi *= std::conj(o) / std::abs(o);
  const WfContext shifted = make_context(model, gs, base.tol);
  return eval(shifted);
}

WfDerivative wf_derivative_P(const WfContext& base, const RouteFn& eval,
                             int order, double h) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("derivative order must be 1 or 2");
  }
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");

  const std::array<double, 3> p0 = base.model->effective_p();
  const auto step = [&](int j, double s) {
    std::array<double, 3> p = p0;
    p[static_cast<std::size_t>(j)] += s;
    return p;
  };
  // Validate the whole stencil before the first solve.
  for (int j = 0; j < 3; ++j) {
    for (double s : {h, -h, h / 2, -h / 2, h / 4, -h / 4}) {
      if (!(nelson::pnorm(step(j, s)) < 1.0 / 3.0)) {
        throw std::domain_error(
            "derivative stencil leaves the validity region |P| < 1/3");
      }
    }
  }

  std::map<std::array<double, 3>, fock::cplx> memo;
  double value_scale = 1.0;
  const auto value_at = [&](const std::array<double, 3>& p) {
    auto it = memo.find(p);
    if (it == memo.end()) {
      it = memo.emplace(p, eval_at_momentum(base, eval, p)).first;
    }
    value_scale = std::max(value_scale, std::abs(it->second));
    return it->second;
  };
  const fock::cplx v0 = (order == 2) ? eval(base) : fock::cplx{0.0, 0.0};

  WfDerivative out;
  for (int j = 0; j < 3; ++j) {
    const auto diff = [&](double s) -> fock::cplx {
      const fock::cplx vp = value_at(step(j, s));
      const fock::cplx vm = value_at(step(j, -s));
      if (order == 1) return (vp - vm) / (2.0 * s);
      return (vp - 2.0 * v0 + vm) / (s * s);
    };
    const fock::cplx d1 = diff(h);
    const fock::cplx d2 = diff(h / 2);
    const fock::cplx d4 = diff(h / 4);
    const double upd21 = std::abs(d2 - d1);
    const double upd42 = std::abs(d4 - d2);
    // Below this, updates are dominated by solve noise amplified by the
    // stencil, and carry no information about the truncation error.
    const double eps_val = 1e3 * base.tol * std::max(1.0, value_scale);
    const double hmin = h / 4;
    const double noise_floor =
        order == 1 ? eps_val / hmin : 4.0 * eps_val / (hmin * hmin);
    out.decay[static_cast<std::size_t>(j)] =
        upd21 > noise_floor ? upd42 / upd21 : 0.0;
    if (upd42 > std::max(upd21, noise_floor)) out.step_unstable = true;
    out.d[static_cast<std::size_t>(j)] = (4.0 * d4 - d2) / 3.0;
  }
  return out;
}

fock::FockVector novel_first_derivative_analytic(const WfContext& ctx,
                                                 const std::array<double, 3>& k,
                                                 int j,
                                                 const Eigen::Matrix3d& hessE) {
  const auto& model = *ctx.model;
  const auto& params = model.params();
  const MomentumTuple t = make_tuple({k});
  const double kn = nelson::pnorm(k);
  const std::array<double, 3> khat{k[0] / kn, k[1] / kn, k[2] / kn};
  const double alpha = 1.0 - (khat[0] * ctx.gradE[0] + khat[1] * ctx.gradE[1] +
                              khat[2] * ctx.gradE[2]);
  const double f = nelson::dressing_f_value(params, ctx.gradE, k);
  const std::array<double, 3> g{f * k[0], f * k[1], f * k[2]};
  std::array<double, 3> half_shift{0.5 * k[0], 0.5 * k[1], 0.5 * k[2]};

  const fock::FockVector& psi = ctx.gs->psi;
  // The chain itself: y = R_1 (g . Lambda_{k/2}) psi.
  fock::FockVector y = resolvent_apply_prefix(
      ctx, t, 1, nelson::apply_lambda_dot(model, ctx.gradE, g, psi, half_shift));

  // (a) Resolvent derivative: R_1 (Lambda + k)_j y.
  fock::FockVector piece = resolvent_apply_prefix(
      ctx, t, 1,
      nelson::apply_lambda_component(model, ctx.gradE, j, y,
                                     k[static_cast<std::size_t>(j)]));

  // (b) Dressing derivative: d_j f = f (khat . Hess e_j) / alpha.
  double khat_dot_col = 0.0;
  for (int c = 0; c < 3; ++c) {
    khat_dot_col += khat[static_cast<std::size_t>(c)] * hessE(c, j);
  }
  const double djf = f * khat_dot_col / alpha;
  if (djf != 0.0) {
    const std::array<double, 3> djg{djf * k[0], djf * k[1], djf * k[2]};
    piece += resolvent_apply_prefix(
        ctx, t, 1,
        nelson::apply_lambda_dot(model, ctx.gradE, djg, psi, half_shift));
  }

  // (c) Vertex derivative: g . (Hess e_j - e_j) is a scalar.
  double vertex = 0.0;
  for (int c = 0; c < 3; ++c) {
    vertex += g[static_cast<std::size_t>(c)] * (hessE(c, j) - (c == j ? 1.0 : 0.0));
  }
  if (vertex != 0.0) {
    fock::FockVector rpsi = resolvent_apply_prefix(ctx, t, 1, psi);
    rpsi *= vertex;
    piece += rpsi;
  }

  // (d) Ground-vector derivative: R_1 (g . Lambda_{k/2}) (R Lambda_j psi).
  nelson::ResolventContext rc(model, *ctx.gs);
  const fock::FockVector dpsi = rc.psi_gradient(ctx.gradE, ctx.tol)[static_cast<std::size_t>(j)];
  piece += resolvent_apply_prefix(
      ctx, t, 1, nelson::apply_lambda_dot(model, ctx.gradE, g, dpsi, half_shift));

  return piece;
}

}  // namespace wf
