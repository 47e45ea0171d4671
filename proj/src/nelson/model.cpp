#include "nelson/model.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nelson {

double pnorm(const std::array<double, 3>& p) {
  return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

void validate_params(const NelsonParams& params) {
  if (!(pnorm(params.P) < 1.0 / 3.0)) {
    throw std::domain_error(
        "total momentum outside validity region: require |P| < 1/3, got |P| = " +
        std::to_string(pnorm(params.P)));
  }
  if (!(params.sigma > 0.0) || !(params.sigma <= params.kappa)) {
    throw std::domain_error("infrared cutoff must satisfy 0 < sigma <= kappa");
  }
  if (!(params.kappa > 0.0)) {
    throw std::domain_error("ultraviolet cutoff kappa must be positive");
  }
  if (!(params.lambda >= 0.0)) {
    throw std::domain_error("coupling lambda must be non-negative");
  }
  if (!(params.alpha_bar >= 0.0) || !(params.alpha_bar <= 0.5)) {
    throw std::domain_error("regularity exponent alpha_bar must lie in [0, 1/2]");
  }
  if (!(params.eps0 > 0.0) || !(params.eps0 < 1.0)) {
    throw std::domain_error("roll-off width eps0 must lie in (0, 1)");
  }
}

namespace {

// exp(-1/t) for t > 0, 0 otherwise: the standard smooth step ingredient.
double bump_half(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double chi_kappa(double r, double kappa, double eps0) {
  const double plateau = (1.0 - eps0) * kappa;
  if (r <= plateau) return 1.0;
  if (r >= kappa) return 0.0;
  const double s = (r - plateau) / (eps0 * kappa);  // in (0, 1)
  const double up = bump_half(1.0 - s);
  const double down = bump_half(s);
  return up / (up + down);
}

double kappa_star(const NelsonParams& params) {
  return params.kappa / (1.0 - params.eps0);
}

double form_factor_value(const NelsonParams& params,
                         const std::array<double, 3>& k) {
  const double r = pnorm(k);
  if (r < params.sigma) return 0.0;  // exact zero below the infrared cutoff
  const double chi = chi_kappa(r, params.kappa, params.eps0);
  if (chi == 0.0) return 0.0;  // exact zero where the UV cutoff vanishes
  return params.lambda * chi * std::pow(r, params.alpha_bar) /
         std::sqrt(2.0 * r);
}

FormFactor build_form_factor(const NelsonParams& params,
                             const fock::MomentumGrid& grid) {
  validate_params(params);
  FormFactor form;
  form.v.resize(grid.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    form.v[j] = form_factor_value(params, grid.modes[j].k);
  }
  return form;
}

FiberCore::FiberCore(const NelsonParams& p, fock::MomentumGrid g,
                     std::shared_ptr<const fock::FockBasis> b, bool quadratic)
    : params(p),
      grid(std::move(g)),
      basis(std::move(b)),
      ladders(std::make_shared<const fock::LadderOperators>(*basis)),
      field(*basis, grid),
      form(build_form_factor(p, grid)),
      quadratic_enabled(quadratic) {
  if (basis->modes() != static_cast<int>(grid.size())) {
    throw std::invalid_argument("basis mode count does not match grid size");
  }
  // Interaction sum_j c_j (b_j + b*_j) with c_j = sqrt(w_j) v_j: for every
  // lowering transition |lower> <- |upper> with amplitude sqrt(n), add the
  // symmetric pair of entries.
  std::vector<linalg::Triplet> trips;
  const std::size_t dim = basis->dim();
  for (int j = 0; j < basis->modes(); ++j) {
    const double c = std::sqrt(grid.modes[static_cast<std::size_t>(j)].w) *
                     form.v[static_cast<std::size_t>(j)];
    if (c == 0.0) continue;
    for (const auto& t : ladders->transitions(j)) {
      trips.push_back({t.lower, t.upper, c * t.amp});
      trips.push_back({t.upper, t.lower, c * t.amp});
    }
  }
  interaction = linalg::csr_from_triplets(dim, dim, trips);
}

NelsonModel::NelsonModel(std::shared_ptr<const FiberCore> core,
                         std::array<double, 3> effective_p)
    : core_(std::move(core)), effective_p_(effective_p) {
  const std::size_t dim = core_->basis->dim();
  diag_.resize(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    double d = core_->field.hf[s];
    if (core_->quadratic_enabled) {
      double q2 = 0.0;
      for (int c = 0; c < 3; ++c) {
        const double rel = effective_p_[static_cast<std::size_t>(c)] -
                           core_->field.pf[static_cast<std::size_t>(c)][s];
        q2 += rel * rel;
      }
      d += 0.5 * q2;
    }
    diag_[s] = d;
  }
}

NelsonModel NelsonModel::shifted(const std::array<double, 3>& q) const {
  std::array<double, 3> p = effective_p_;
  for (int c = 0; c < 3; ++c) p[static_cast<std::size_t>(c)] -= q[static_cast<std::size_t>(c)];
  return NelsonModel(core_, p);
}

NelsonModel NelsonModel::at_momentum(const std::array<double, 3>& p) const {
  return NelsonModel(core_, p);
}

linalg::CsrMatrix NelsonModel::full_matrix() const {
  std::vector<linalg::Triplet> trips;
  const auto& m = core_->interaction;
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::int64_t it = m.row_ptr[r]; it < m.row_ptr[r + 1]; ++it) {
      trips.push_back({static_cast<std::int64_t>(r),
                       static_cast<std::int64_t>(m.col_idx[static_cast<std::size_t>(it)]),
                       m.vals[static_cast<std::size_t>(it)]});
    }
  }
  for (std::size_t s = 0; s < diag_.size(); ++s) {
    if (diag_[s] != 0.0) {
      const auto i = static_cast<std::int64_t>(s);
      trips.push_back({i, i, diag_[s]});
    }
  }
  return linalg::csr_from_triplets(dim(), dim(), trips);
}

NelsonModel build_hamiltonian(const NelsonParams& params,
                              const fock::MomentumGrid& grid,
                              std::shared_ptr<const fock::FockBasis> basis,
                              const std::array<double, 3>& q,
                              bool quadratic_enabled) {
  validate_params(params);
  fock::validate_grid(grid);
  if (!basis) throw std::invalid_argument("basis must not be null");
  auto core =
      std::make_shared<const FiberCore>(params, grid, std::move(basis), quadratic_enabled);
  std::array<double, 3> eff = params.P;
  for (int c = 0; c < 3; ++c) eff[static_cast<std::size_t>(c)] -= q[static_cast<std::size_t>(c)];
  return NelsonModel(std::move(core), eff);
}

}  // namespace nelson
