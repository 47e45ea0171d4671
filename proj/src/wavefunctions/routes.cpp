#include "wavefunctions/routes.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nelson/dressing.h"

namespace wf {

namespace {

double factorial(std::size_t n) {
  double r = 1.0;
  for (std::size_t m = 2; m <= n; ++m) r *= static_cast<double>(m);
  return r;
}

}  // namespace

fock::FockVector direct_vector(const WfContext& ctx,
                               const std::vector<int>& modes, bool dressed) {
  const auto& model = *ctx.model;
  const auto& grid = model.grid();
  fock::FockVector v = ctx.gs->psi;
  // Annihilation operators commute, so the application order is free;
  // right-to-left matches the written product.
  for (auto it = modes.rbegin(); it != modes.rend(); ++it) {
    const int j = *it;
    if (j < 0 || static_cast<std::size_t>(j) >= grid.size()) {
      throw std::out_of_range("mode index outside the grid");
    }
    const double root_w = std::sqrt(grid.modes[static_cast<std::size_t>(j)].w);
    fock::FockVector next = model.ladders().annihilate(j, v);
    next *= 1.0 / root_w;
    if (dressed) {
      const double f = nelson::dressing_f_value(
          model.params(), ctx.gradE, grid.modes[static_cast<std::size_t>(j)].k);
      if (f != 0.0) {
        linalg::caxpy(fock::cplx{f, 0.0}, v.coeffs.data(), next.coeffs.data(),
                      next.dim());
      }
    }
    v = std::move(next);
  }
  return v;
}

DirectValue wf_direct(const WfContext& ctx, const std::vector<int>& modes,
                      bool dressed) {
  DirectValue out;
  out.truncation_limited =
      static_cast<int>(modes.size()) > ctx.model->basis().n_max();
  fock::FockVector v = direct_vector(ctx, modes, dressed);
  out.value = vacuum_overlap(v);
  if (!dressed) out.value /= std::sqrt(factorial(modes.size()));
  return out;
}

fock::cplx wf_froehlich(const WfContext& ctx, const MomentumTuple& tuple,
                        bool flip_sign) {
  const std::size_t n = tuple.n();
  if (n == 0) return vacuum_overlap(ctx.gs->psi);
  if (n >= 8 * sizeof(unsigned)) {
    throw std::invalid_argument("tuple too long for the subset recursion");
  }

  const auto& params = ctx.model->params();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = nelson::form_factor_value(params, tuple.k[i]);
    if (v[i] == 0.0) return fock::cplx{0.0, 0.0};  // every chain carries v(k_i)
  }
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) {
    mag[i] = tuple.prefix_mag[i + 1] - tuple.prefix_mag[i];
  }

  // y[mask] for the subset with that bit pattern; sub-masks precede their
  // supersets numerically, so one ascending pass fills the table.
  const unsigned full = (1u << n) - 1u;
  std::vector<fock::FockVector> y(full + 1u);
  y[0] = ctx.gs->psi;
  for (unsigned mask = 1u; mask <= full; ++mask) {
    fock::FockVector rhs(ctx.model->basis());
    std::array<double, 3> q{0.0, 0.0, 0.0};
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      for (std::size_t c = 0; c < 3; ++c) q[c] += tuple.k[i][c];
      delta += mag[i];
      linalg::caxpy(fock::cplx{v[i], 0.0}, y[mask & ~(1u << i)].coeffs.data(),
                    rhs.coeffs.data(), rhs.dim());
    }
    y[mask] = resolvent_apply(ctx, q, delta, rhs);
    y[mask] *= -1.0;
  }
  const double sign = flip_sign ? -1.0 : 1.0;
  return sign * vacuum_overlap(y[full]) / std::sqrt(factorial(n));
}

fock::cplx froehlich_permutation_reference(const WfContext& ctx,
                                           const MomentumTuple& tuple) {
  const std::size_t n = tuple.n();
  if (n == 0) return vacuum_overlap(ctx.gs->psi);

  const auto& params = ctx.model->params();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = nelson::form_factor_value(params, tuple.k[i]);
    if (v[i] == 0.0) return fock::cplx{0.0, 0.0};
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  fock::cplx total{0.0, 0.0};
  do {
    const MomentumTuple perm = permuted_tuple(tuple, order);
    fock::FockVector z = ctx.gs->psi;
    for (std::size_t i = 1; i <= n; ++i) {
      z *= v[order[i - 1]];
      z = resolvent_apply_prefix(ctx, perm, i, z);
    }
    total += vacuum_overlap(z);
  } while (std::next_permutation(order.begin(), order.end()));

  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * total / std::sqrt(factorial(n));
}

}  // namespace wf
