#include "nelson/ground.h"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "linalg/lanczos.h"

namespace nelson {

GroundStateResult ground_state(const NelsonModel& model, double tol, int max_iter) {
  linalg::LanczosOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  auto apply = [&model](const fock::cplx* x, fock::cplx* y) { model.apply(x, y); };
  linalg::LanczosResult lr = linalg::lanczos_ground(model.dim(), apply, opts);
  if (!lr.converged) {
    std::ostringstream msg;
    msg << "ground-state iteration did not converge: " << lr.iterations
        << " iterations, residual " << lr.residual << ", tolerance " << tol;
    throw std::runtime_error(msg.str());
  }

  GroundStateResult gs;
  gs.E = lr.e0;
  gs.iterations = lr.iterations;
  gs.residual = lr.residual;
  gs.gap = std::isnan(lr.e1) ? std::numeric_limits<double>::quiet_NaN()
                             : lr.e1 - lr.e0;
  if (!(gs.gap > 10.0 * tol)) {
    std::ostringstream msg;
    msg << "spectral gap " << gs.gap << " is not above 10x the solver tolerance "
        << tol << "; derivative formulas would divide by it";
    throw std::runtime_error(msg.str());
  }

  gs.psi = fock::FockVector(model.basis());
  gs.psi.coeffs = std::move(lr.ground);
  const double n = fock::norm(gs.psi);
  gs.psi *= 1.0 / n;
  // Deterministic phase: largest-magnitude component real positive,
  // lowest index on ties.
  std::size_t imax = 0;
  double amax = -1.0;
  for (std::size_t i = 0; i < gs.psi.dim(); ++i) {
    const double a = std::abs(gs.psi.coeffs[i]);
    if (a > amax * (1.0 + 1e-15)) {
      amax = a;
      imax = i;
    }
  }
  const fock::cplx c = gs.psi.coeffs[imax];
  gs.psi *= std::conj(c) / std::abs(c);
  return gs;
}

std::array<double, 3> expectation_gradient(const NelsonModel& model,
                                           const GroundStateResult& gs) {
  if (!model.quadratic_enabled()) {
    throw std::logic_error(
        "expectation gradient requires the quadratic electron term");
  }
  std::array<double, 3> g{0.0, 0.0, 0.0};
  const auto& pf = model.field().pf;
  const auto& eff = model.effective_p();
  for (std::size_t s = 0; s < gs.psi.dim(); ++s) {
    const double w = std::norm(gs.psi.coeffs[s]);
    for (std::size_t c = 0; c < 3; ++c) g[c] += w * (eff[c] - pf[c][s]);
  }
  return g;
}

namespace {

/// Ground energies over a momentum stencil, each point solved once.
class EnergySurface {
 public:
  EnergySurface(const NelsonModel& base, double tol) : base_(base), tol_(tol) {}

  double energy(const std::array<double, 3>& p) {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    const double e = ground_state(base_.at_momentum(p), tol_).E;
    cache_.emplace(p, e);
    return e;
  }

 private:
  const NelsonModel& base_;
  double tol_;
  std::map<std::array<double, 3>, double> cache_;
};

std::array<double, 3> step(const std::array<double, 3>& p, int j, double h) {
  std::array<double, 3> q = p;
  q[static_cast<std::size_t>(j)] += h;
  return q;
}

}  // namespace

GradEnergyResult grad_energy(const NelsonModel& model, double h, double tol,
                             bool with_hessian) {
  if (!(h > 0.0)) throw std::invalid_argument("step h must be positive");
  const std::array<double, 3> p0 = model.effective_p();

  // Validate every stencil point before solving anything.
  std::vector<std::array<double, 3>> probes;
  for (int j = 0; j < 3; ++j) {
    for (double s : {h, h / 2.0, h / 4.0, -h, -h / 2.0, -h / 4.0}) {
      probes.push_back(step(p0, j, s));
    }
  }
  if (with_hessian) {
    for (int j = 0; j < 3; ++j) {
      for (int jp = j + 1; jp < 3; ++jp) {
        for (double sa : {h, h / 2.0, -h, -h / 2.0}) {
          for (double sb : {h, h / 2.0, -h, -h / 2.0}) {
            if (std::abs(std::abs(sa) - std::abs(sb)) > 0.0) continue;
            probes.push_back(step(step(p0, j, sa), jp, sb));
          }
        }
      }
    }
  }
  for (const auto& p : probes) {
    if (!(pnorm(p) < 1.0 / 3.0)) {
      throw std::domain_error(
          "finite-difference stencil leaves the validity region |P| < 1/3; "
          "reduce the step or move the base momentum");
    }
  }

  EnergySurface surf(model, tol);
  GradEnergyResult out;
  out.base_step = h;

  for (int j = 0; j < 3; ++j) {
    auto central = [&](double s) {
      return (surf.energy(step(p0, j, s)) - surf.energy(step(p0, j, -s))) /
             (2.0 * s);
    };
    const double d1 = central(h);
    const double d2 = central(h / 2.0);
    const double d4 = central(h / 4.0);
    const double upd21 = std::abs(d2 - d1);
    const double upd42 = std::abs(d4 - d2);
    // Updates below the solver-noise level of a difference quotient carry
    // no information about the truncation error; do not flag on them.
    const double escale = std::max(1.0, std::abs(surf.energy(step(p0, j, h))));
    const double noise_floor = 100.0 * tol * escale / h;
    out.decay[static_cast<std::size_t>(j)] =
        upd21 > noise_floor ? upd42 / upd21 : 0.0;
    if (upd42 > std::max(upd21, noise_floor)) out.step_too_large = true;
    out.gradE[static_cast<std::size_t>(j)] = (4.0 * d4 - d2) / 3.0;
  }

  if (with_hessian) {
    auto hess_at = [&](double s) {
      Eigen::Matrix3d hm;
      const double e0 = surf.energy(p0);
      for (int j = 0; j < 3; ++j) {
        hm(j, j) = (surf.energy(step(p0, j, s)) - 2.0 * e0 +
                    surf.energy(step(p0, j, -s))) /
                   (s * s);
        for (int jp = j + 1; jp < 3; ++jp) {
          const double v =
              (surf.energy(step(step(p0, j, s), jp, s)) -
               surf.energy(step(step(p0, j, s), jp, -s)) -
               surf.energy(step(step(p0, j, -s), jp, s)) +
               surf.energy(step(step(p0, j, -s), jp, -s))) /
              (4.0 * s * s);
          hm(j, jp) = v;
          hm(jp, j) = v;
        }
      }
      return hm;
    };
    const Eigen::Matrix3d h1 = hess_at(h);
    const Eigen::Matrix3d h2 = hess_at(h / 2.0);
    out.hessE = ((4.0 * h2 - h1) / 3.0).eval();
  }
  return out;
}

}  // namespace nelson
