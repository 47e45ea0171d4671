#include "verification/sweep.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fock/basis.h"
#include "nelson/dressing.h"
#include "nelson/ground.h"
#include "nelson/resolvent.h"
#include "wavefunctions/context.h"
#include "wavefunctions/routes.h"

namespace verif {

namespace {

bool known_quantity(const std::string& id) {
  for (const std::string& k : sweep_quantity_ids()) {
    if (id == k) return true;
  }
  return false;
}

double frobenius(const std::array<fock::FockVector, 3>& v) {
  double s = 0.0;
  for (const fock::FockVector& c : v) {
    const double n = fock::norm(c);
    s += n * n;
  }
  return std::sqrt(s);
}

/// One solved sweep point; everything the quantity measurements share.
struct SweepPoint {
  nelson::NelsonModel model;
  nelson::GroundStateResult gs;
  std::array<double, 3> gradE;
  nelson::ResolventContext rc;
  std::array<fock::FockVector, 3> lambda_psi;  // Lambda^j psi

  SweepPoint(nelson::NelsonModel m, nelson::GroundStateResult g)
      : model(std::move(m)), gs(std::move(g)),
        gradE(nelson::expectation_gradient(model, gs)),
        rc(model, gs),
        lambda_psi(nelson::apply_lambda(model, gradE, gs.psi)) {}
};

/// R(delta) x with the zero-offset case read as the deflated inverse on
/// the orthogonal complement of the ground state (where the operator is
/// invertible; Lambda psi is orthogonal to psi up to solver noise because
/// the expectation gradient makes <psi, Lambda psi> vanish identically).
fock::FockVector resolvent_at(const SweepPoint& pt, double delta,
                              const fock::FockVector& x, double tol) {
  nelson::ResolventSpec spec;
  spec.energy_offset = delta;
  if (delta == 0.0) {
    spec.projector = nelson::ProjectorMode::QPerp;
    return pt.rc.solve(spec, nelson::project_out_ground(pt.gs, x), tol);
  }
  return pt.rc.solve(spec, x, tol);
}

double measure_dp_psi(const SweepPoint& pt, const SweepOptions& opt) {
  return frobenius(pt.rc.psi_gradient(pt.gradE, opt.cg_tol));
}

double measure_sup_r_delta(const SweepPoint& pt, const SweepOptions& opt) {
  const std::vector<double> deltas = make_delta_grid(opt.delta_points);
  double sup = 0.0;
  for (double delta : deltas) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double n = fock::norm(resolvent_at(
          pt, delta, pt.lambda_psi[static_cast<std::size_t>(j)], opt.cg_tol));
      s += n * n;
    }
    sup = std::max(sup, std::sqrt(s));
  }
  return sup;
}

/// sup over the inner offset of ||R(0) Qperp Lambda R(Delta_2) Lambda psi||
/// (Frobenius over both Lambda components).  The outer offset is pinned
/// at 0: for fixed x, ||R(Delta) x||^2 = sum_m |x_m|^2 / (e_m + Delta)^2
/// over the spectral decomposition is strictly decreasing in Delta, so
/// the supremum over the outer offset is attained there.
double measure_sup_double_delta(const SweepPoint& pt, const SweepOptions& opt) {
  const std::vector<double> deltas = make_delta_grid(opt.delta_points);
  nelson::ResolventSpec outer;
  outer.projector = nelson::ProjectorMode::QPerp;
  double sup = 0.0;
  for (double delta2 : deltas) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
      const fock::FockVector inner = resolvent_at(
          pt, delta2, pt.lambda_psi[static_cast<std::size_t>(j)], opt.cg_tol);
      for (int jp = 0; jp < 3; ++jp) {
        const fock::FockVector mid = nelson::project_out_ground(
            pt.gs, nelson::apply_lambda_component(pt.model, pt.gradE, jp, inner));
        const double n = fock::norm(pt.rc.solve(outer, mid, opt.cg_tol));
        s += n * n;
      }
    }
    sup = std::max(sup, std::sqrt(s));
  }
  return sup;
}

/// Worst relative disagreement of the one-photon value between the
/// annihilation route and the iterated-resolvent route over the two most
/// infrared grid modes.  At zero coupling both routes vanish in exact
/// arithmetic (the coupling is identically zero there), so the value is
/// 0 by definition rather than a ratio of solver noise.
double measure_f1_route_gap(const SweepPoint& pt, const SweepOptions& opt) {
  if (pt.model.params().lambda == 0.0) return 0.0;
  const fock::MomentumGrid& grid = pt.model.grid();
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return grid.modes[a].knorm() < grid.modes[b].knorm();
  });
  const std::size_t picks = std::min<std::size_t>(2, order.size());

  wf::WfContext ctx = wf::make_context(pt.model, pt.gs, opt.cg_tol);
  ctx.gradE = pt.gradE;
  double worst = 0.0;
  for (std::size_t t = 0; t < picks; ++t) {
    const int j = static_cast<int>(order[t]);
    const fock::cplx direct = wf::wf_direct(ctx, {j}, false).value;
    const fock::cplx froe =
        wf::wf_froehlich(ctx, wf::tuple_from_modes(grid, {j}));
    const double scale = std::max(std::abs(direct), std::abs(froe));
    if (scale > 0.0) {
      worst = std::max(worst, std::abs(froe - direct) / scale);
    }
  }
  return worst;
}

double measure(const std::string& id, const SweepPoint& pt,
               const SweepOptions& opt) {
  if (id == "dP_psi") return measure_dp_psi(pt, opt);
  if (id == "sup_R_delta") return measure_sup_r_delta(pt, opt);
  if (id == "sup_double_delta") return measure_sup_double_delta(pt, opt);
  if (id == "f1_route_gap") return measure_f1_route_gap(pt, opt);
  throw std::invalid_argument("unknown sweep quantity: " + id);
}

}  // namespace

const std::vector<std::string>& sweep_quantity_ids() {
  static const std::vector<std::string> ids{"dP_psi", "sup_R_delta",
                                            "sup_double_delta", "f1_route_gap"};
  return ids;
}

std::vector<double> make_delta_grid(int points) {
  if (points < 2) {
    throw std::invalid_argument("delta grid needs at least two positive points");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points) + 1);
  out.push_back(0.0);
  const double lo = 1e-6;
  const double hi = 1e2;
  const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
  for (int i = 0; i < points; ++i) {
    out.push_back(lo * std::pow(ratio, i));
  }
  return out;
}

std::vector<double> default_sweep_sigmas(int points) {
  if (points < 1) throw std::invalid_argument("need at least one sigma point");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int t = 0; t < points; ++t) {
    out.push_back(0.4 * std::pow(2.0, -t));
  }
  return out;
}

FitResult fit_exponent(std::vector<double> sigmas, std::vector<double> norms,
                       double zero_floor, double threshold) {
  if (sigmas.size() != norms.size()) {
    throw std::invalid_argument("sigma and norm lists must match in length");
  }
  if (sigmas.empty()) {
    throw std::invalid_argument("cannot fit an empty sweep");
  }
  const double max_norm = *std::max_element(norms.begin(), norms.end());
  if (max_norm <= zero_floor) {
    // The quantity is zero at solver precision for every cutoff; the
    // exponent is zero by definition, not by fitting noise.
    return FitResult{0.0, 0.0, true};
  }

  std::vector<std::size_t> order(sigmas.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return sigmas[a] < sigmas[b]; });

  // Fit window: the smallest-sigma half (at least three points when the
  // sweep has them), keeping only points with a positive norm.
  const std::size_t m = order.size();
  const std::size_t half = std::max<std::size_t>((m + 1) / 2,
                                                 std::min<std::size_t>(m, 3));
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t t = 0; t < half; ++t) {
    const std::size_t i = order[t];
    if (norms[i] > 0.0) {
      xs.push_back(std::log(sigmas[i]));
      ys.push_back(std::log(norms[i]));
    }
  }
  if (xs.size() < 2) {
    return FitResult{0.0, 0.0, false};
  }

  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    sxx += (xs[t] - mx) * (xs[t] - mx);
    sxy += (xs[t] - mx) * (ys[t] - my);
  }
  if (sxx <= 0.0) {
    return FitResult{0.0, 0.0, false};  // degenerate: repeated sigma values
  }
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    const double fit = my + slope * (xs[t] - mx);
    ss += (ys[t] - fit) * (ys[t] - fit);
  }
  FitResult out;
  out.delta = -slope;
  out.residual = std::sqrt(ss / n);
  out.reliable = xs.size() >= 3 && out.residual <= threshold;
  return out;
}

SweepResult sigma_sweep(const SweepOptions& opt,
                        const std::vector<double>& sigmas, double lambda) {
  if (sigmas.empty()) throw std::invalid_argument("empty sigma list");
  for (double s : sigmas) {
    if (!(s > 0.0) || !(s < opt.kappa)) {
      std::ostringstream msg;
      msg << "sweep sigma " << s << " outside (0, kappa = " << opt.kappa << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  if (opt.quantities.empty()) {
    throw std::invalid_argument("no sweep quantities requested");
  }
  for (const std::string& id : opt.quantities) {
    if (!known_quantity(id)) {
      throw std::invalid_argument("unknown sweep quantity: " + id);
    }
  }

  SweepResult out;
  out.lambda = lambda;
  out.sigmas = sigmas;
  out.quantities.reserve(opt.quantities.size());
  for (const std::string& id : opt.quantities) {
    SweepQuantity q;
    q.id = id;
    q.norms.reserve(sigmas.size());
    out.quantities.push_back(std::move(q));
  }

  for (double sigma : sigmas) {
    nelson::NelsonParams p;
    p.P = opt.P;
    p.sigma = sigma;
    p.kappa = opt.kappa;
    p.lambda = lambda;
    p.alpha_bar = opt.alpha_bar;
    p.eps0 = opt.eps0;

    fock::MomentumGrid grid = fock::make_thin_ladder_grid(
        sigma, opt.kappa, opt.shell_fraction, opt.shells_per_octave);
    auto basis = std::make_shared<const fock::FockBasis>(
        static_cast<int>(grid.size()), opt.n_max);
    nelson::NelsonModel model = nelson::build_hamiltonian(p, grid, basis);
    nelson::GroundStateResult gs =
        nelson::ground_state(model, opt.gs_tol, opt.gs_max_iter);
    const SweepPoint pt(std::move(model), std::move(gs));

    for (SweepQuantity& q : out.quantities) {
      q.norms.push_back(measure(q.id, pt, opt));
    }
  }

  for (SweepQuantity& q : out.quantities) {
    const FitResult fit =
        fit_exponent(sigmas, q.norms, opt.zero_floor, opt.fit_threshold);
    q.delta_fit = fit.delta;
    q.fit_residual = fit.residual;
    q.reliable = fit.reliable;
  }
  return out;
}

}  // namespace verif
