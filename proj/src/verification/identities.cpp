#include "verification/identities.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "nelson/dressing.h"

namespace verif {

namespace {

// b(k_j) = b_j / sqrt(w_j).
fock::FockVector annihilate_continuum(const nelson::NelsonModel& model, int j,
                                      const fock::FockVector& v) {
  fock::FockVector out = model.ladders().annihilate(j, v);
  out *= 1.0 / std::sqrt(model.grid().modes[static_cast<std::size_t>(j)].w);
  return out;
}

// b_W(k_j) = b(k_j) + f(k_j).
fock::FockVector annihilate_dressed(const nelson::NelsonModel& model,
                                    const std::array<double, 3>& gradE, int j,
                                    const fock::FockVector& v) {
  fock::FockVector out = annihilate_continuum(model, j, v);
  const double f = nelson::dressing_f_value(
      model.params(), gradE, model.grid().modes[static_cast<std::size_t>(j)].k);
  if (f != 0.0)
    linalg::caxpy(fock::cplx{f, 0.0}, v.coeffs.data(), out.coeffs.data(),
                  out.dim());
  return out;
}

// Product over the tuple positions not listed in `omit` (descending
// application order; the operators commute, so only bookkeeping).
fock::FockVector product_apply(const nelson::NelsonModel& model,
                               const std::array<double, 3>& gradE,
                               const std::vector<int>& modes,
                               const std::vector<std::size_t>& omit,
                               bool dressed, const fock::FockVector& v) {
  fock::FockVector cur = v;
  for (std::size_t pos = modes.size(); pos-- > 0;) {
    if (std::find(omit.begin(), omit.end(), pos) != omit.end()) continue;
    cur = dressed ? annihilate_dressed(model, gradE, modes[pos], cur)
                  : annihilate_continuum(model, modes[pos], cur);
  }
  return cur;
}

// H_{P-q} x via a core-sharing shifted model.
fock::FockVector apply_shifted_h(const nelson::NelsonModel& model,
                                 const std::array<double, 3>& q,
                                 const fock::FockVector& v) {
  const nelson::NelsonModel shifted = model.shifted(q);
  fock::FockVector out(model.basis());
  shifted.apply(v.coeffs.data(), out.coeffs.data());
  return out;
}

// F(kt, shift) x = -g(kt) . (Lambda + shift + kt/2) x.
fock::FockVector apply_F(const nelson::NelsonModel& model,
                         const std::array<double, 3>& gradE,
                         const std::array<double, 3>& kt,
                         const std::array<double, 3>& shift,
                         const fock::FockVector& v) {
  const std::array<double, 3> g =
      nelson::dressing_g_value(model.params(), gradE, kt);
  std::array<double, 3> total_shift;
  for (std::size_t c = 0; c < 3; ++c) total_shift[c] = shift[c] + 0.5 * kt[c];
  fock::FockVector out =
      nelson::apply_lambda_dot(model, gradE, g, v, total_shift);
  out *= -1.0;
  return out;
}

double g_dot_g(const nelson::NelsonModel& model,
               const std::array<double, 3>& gradE,
               const std::array<double, 3>& ka,
               const std::array<double, 3>& kb) {
  const auto ga = nelson::dressing_g_value(model.params(), gradE, ka);
  const auto gb = nelson::dressing_g_value(model.params(), gradE, kb);
  return ga[0] * gb[0] + ga[1] * gb[1] + ga[2] * gb[2];
}

// Relative residual pair {raw, projected}: ||lhs - rhs|| scaled by the
// larger side, then the same with sectors > keep_sector zeroed.
struct Residual {
  double raw = 0.0;
  double projected = 0.0;
};

Residual relative_residual(const fock::FockVector& lhs,
                           const fock::FockVector& rhs, int keep_sector) {
  const double scale =
      std::max({fock::norm(lhs), fock::norm(rhs), 1e-300});
  fock::FockVector diff = lhs;
  diff -= rhs;
  Residual r;
  r.raw = fock::norm(diff) / scale;
  const auto& basis = *lhs.basis;
  const int top = std::max(keep_sector, -1);
  const std::size_t cut = (top < 0) ? 0u
                          : basis.sector_end(std::min(top, basis.n_max()));
  for (std::size_t i = cut; i < diff.dim(); ++i) diff.coeffs[i] = {0.0, 0.0};
  r.projected = fock::norm(diff) / scale;
  return r;
}

std::vector<std::array<double, 3>> tuple_momenta(
    const nelson::NelsonModel& model, const std::vector<int>& modes) {
  std::vector<std::array<double, 3>> ks;
  for (int j : modes) {
    if (j < 0 || static_cast<std::size_t>(j) >= model.grid().size())
      throw std::out_of_range("pull-through: mode index outside the grid");
    ks.push_back(model.grid().modes[static_cast<std::size_t>(j)].k);
  }
  return ks;
}

int resolve_max_sector(const nelson::NelsonModel& model,
                       const PullThroughOptions& opt) {
  const int cap = model.basis().n_max();
  int s = (opt.max_sector < 0) ? cap - 2 : opt.max_sector;
  return std::clamp(s, 0, cap);
}

}  // namespace

fock::FockVector random_sector_vector(const fock::FockBasis& basis,
                                      int max_sector, unsigned seed) {
  if (max_sector < 0 || max_sector > basis.n_max())
    throw std::invalid_argument("random_sector_vector: sector out of range");
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  fock::FockVector v(basis);
  const std::size_t end = basis.sector_end(max_sector);
  for (std::size_t i = 0; i < end; ++i)
    v.coeffs[i] = fock::cplx{gauss(rng), gauss(rng)};
  const double n = fock::norm(v);
  if (n > 0.0) v *= 1.0 / n;
  return v;
}

IdentityReport check_pull_through_standard(const nelson::NelsonModel& model,
                                           const PullThroughOptions& opt) {
  const std::size_t n = opt.modes.size();
  if (n == 0)
    throw std::invalid_argument("pull-through: empty tuple");
  const auto ks = tuple_momenta(model, opt.modes);
  std::array<double, 3> q{0.0, 0.0, 0.0};
  double mag = 0.0;
  std::vector<double> vcoup(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) q[c] += ks[i][c];
    const double r = std::sqrt(ks[i][0] * ks[i][0] + ks[i][1] * ks[i][1] +
                               ks[i][2] * ks[i][2]);
    mag += r;
    vcoup[i] = nelson::form_factor_value(model.params(), ks[i]);
  }

  const int max_sector = resolve_max_sector(model, opt);
  const int keep = model.basis().n_max() - static_cast<int>(n);
  const std::array<double, 3> no_grad{0.0, 0.0, 0.0};
  Residual worst;
  for (int t = 0; t < opt.vectors; ++t) {
    const fock::FockVector psi = random_sector_vector(
        model.basis(), max_sector, opt.seed + static_cast<unsigned>(t));

    fock::FockVector hpsi(model.basis());
    model.apply(psi.coeffs.data(), hpsi.coeffs.data());
    const fock::FockVector lhs =
        product_apply(model, no_grad, opt.modes, {}, false, hpsi);

    const fock::FockVector bpsi =
        product_apply(model, no_grad, opt.modes, {}, false, psi);
    fock::FockVector rhs = apply_shifted_h(model, q, bpsi);
    linalg::caxpy(fock::cplx{mag, 0.0}, bpsi.coeffs.data(), rhs.coeffs.data(),
                  rhs.dim());
    for (std::size_t i = 0; i < n; ++i) {
      if (vcoup[i] == 0.0) continue;
      const fock::FockVector omit =
          product_apply(model, no_grad, opt.modes, {i}, false, psi);
      linalg::caxpy(fock::cplx{vcoup[i], 0.0}, omit.coeffs.data(),
                    rhs.coeffs.data(), rhs.dim());
    }

    const Residual r = relative_residual(lhs, rhs, keep);
    worst.raw = std::max(worst.raw, r.raw);
    worst.projected = std::max(worst.projected, r.projected);
  }

  return make_report(
      "pull_through/standard/n=" + std::to_string(n), worst.raw,
      worst.projected, opt.tolerance, model);
}

std::vector<IdentityReport> check_pull_through_dressed(
    const nelson::NelsonModel& model, const std::array<double, 3>& gradE,
    const PullThroughOptions& opt) {
  const std::size_t n = opt.modes.size();
  if (n == 0)
    throw std::invalid_argument("pull-through: empty tuple");
  const auto ks = tuple_momenta(model, opt.modes);
  const int max_sector = resolve_max_sector(model, opt);
  const int cap = model.basis().n_max();
  const std::array<double, 3> kt = ks[0];         // the pulled-through momentum
  const double kt_mag = std::sqrt(kt[0] * kt[0] + kt[1] * kt[1] + kt[2] * kt[2]);
  const std::array<double, 3> kshift =
      (n >= 2) ? ks[1] : std::array<double, 3>{0.0, 0.0, 0.0};

  Residual worst_h, worst_la, worst_f, worst_n;
  for (int t = 0; t < opt.vectors; ++t) {
    const fock::FockVector psi = random_sector_vector(
        model.basis(), max_sector, opt.seed + static_cast<unsigned>(t));

    // One-step Hamiltonian identity at background shift kshift:
    //   b_W(kt) H_{P-kshift} psi
    //     = (H_{P-kshift-kt} + |kt|) b_W(kt) psi + F(kt, kshift) psi.
    {
      const fock::FockVector hpsi = apply_shifted_h(model, kshift, psi);
      const fock::FockVector lhs =
          annihilate_dressed(model, gradE, opt.modes[0], hpsi);

      const fock::FockVector bw = annihilate_dressed(model, gradE,
                                                     opt.modes[0], psi);
      std::array<double, 3> qtot;
      for (std::size_t c = 0; c < 3; ++c) qtot[c] = kshift[c] + kt[c];
      fock::FockVector rhs = apply_shifted_h(model, qtot, bw);
      linalg::caxpy(fock::cplx{kt_mag, 0.0}, bw.coeffs.data(),
                    rhs.coeffs.data(), rhs.dim());
      rhs += apply_F(model, gradE, kt, kshift, psi);

      const Residual r = relative_residual(lhs, rhs, cap - 1);
      worst_h.raw = std::max(worst_h.raw, r.raw);
      worst_h.projected = std::max(worst_h.projected, r.projected);
    }

    // Lambda commutation, per component:
    //   b_W(kt) Lambda^j psi = (Lambda^j + kt^j) b_W(kt) psi - g^j(kt) psi.
    {
      const auto g = nelson::dressing_g_value(model.params(), gradE, kt);
      const fock::FockVector bw = annihilate_dressed(model, gradE,
                                                     opt.modes[0], psi);
      double raw2 = 0.0, proj2 = 0.0;
      for (int j = 0; j < 3; ++j) {
        const fock::FockVector lampsi =
            nelson::apply_lambda_component(model, gradE, j, psi);
        const fock::FockVector lhs =
            annihilate_dressed(model, gradE, opt.modes[0], lampsi);
        fock::FockVector rhs = nelson::apply_lambda_component(
            model, gradE, j, bw, kt[static_cast<std::size_t>(j)]);
        linalg::caxpy(fock::cplx{-g[static_cast<std::size_t>(j)], 0.0},
                      psi.coeffs.data(), rhs.coeffs.data(), rhs.dim());
        const Residual r = relative_residual(lhs, rhs, cap);
        raw2 += r.raw * r.raw;
        proj2 += r.projected * r.projected;
      }
      worst_la.raw = std::max(worst_la.raw, std::sqrt(raw2));
      worst_la.projected = std::max(worst_la.projected, std::sqrt(proj2));
    }

    // Vertex commutation:
    //   b_W(kt) F(kp, kshift) psi
    //     = F(kp, kt + kshift) b_W(kt) psi + G(kp, kt) psi,
    // with kp the second tuple momentum when available.
    {
      const std::array<double, 3> kp = (n >= 2) ? ks[1] : ks[0];
      const fock::FockVector fpsi =
          apply_F(model, gradE, kp, kshift, psi);
      const fock::FockVector lhs =
          annihilate_dressed(model, gradE, opt.modes[0], fpsi);

      const fock::FockVector bw = annihilate_dressed(model, gradE,
                                                     opt.modes[0], psi);
      std::array<double, 3> shifted;
      for (std::size_t c = 0; c < 3; ++c) shifted[c] = kt[c] + kshift[c];
      fock::FockVector rhs = apply_F(model, gradE, kp, shifted, bw);
      const double G = g_dot_g(model, gradE, kp, kt);
      linalg::caxpy(fock::cplx{G, 0.0}, psi.coeffs.data(), rhs.coeffs.data(),
                    rhs.dim());

      const Residual r = relative_residual(lhs, rhs, cap);
      worst_f.raw = std::max(worst_f.raw, r.raw);
      worst_f.projected = std::max(worst_f.projected, r.projected);
    }

    // n-fold identity:
    //   B_W H psi = (H_shift + |k|_tot) B_W psi
    //               + sum_i F(k_i, sum_{j != i} k_j) B_W-omit(i) psi
    //               + sum_{i<i'} G(k_i, k_i') B_W-omit(i, i') psi.
    {
      fock::FockVector hpsi(model.basis());
      model.apply(psi.coeffs.data(), hpsi.coeffs.data());
      const fock::FockVector lhs =
          product_apply(model, gradE, opt.modes, {}, true, hpsi);

      std::array<double, 3> q{0.0, 0.0, 0.0};
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < 3; ++c) q[c] += ks[i][c];
        mag += std::sqrt(ks[i][0] * ks[i][0] + ks[i][1] * ks[i][1] +
                         ks[i][2] * ks[i][2]);
      }
      const fock::FockVector bw =
          product_apply(model, gradE, opt.modes, {}, true, psi);
      fock::FockVector rhs = apply_shifted_h(model, q, bw);
      linalg::caxpy(fock::cplx{mag, 0.0}, bw.coeffs.data(), rhs.coeffs.data(),
                    rhs.dim());
      for (std::size_t i = 0; i < n; ++i) {
        std::array<double, 3> rest{0.0, 0.0, 0.0};
        for (std::size_t jj = 0; jj < n; ++jj)
          if (jj != i)
            for (std::size_t c = 0; c < 3; ++c) rest[c] += ks[jj][c];
        const fock::FockVector omit =
            product_apply(model, gradE, opt.modes, {i}, true, psi);
        rhs += apply_F(model, gradE, ks[i], rest, omit);
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t ip = i + 1; ip < n; ++ip) {
          const double G = g_dot_g(model, gradE, ks[i], ks[ip]);
          if (G == 0.0) continue;
          const fock::FockVector omit2 =
              product_apply(model, gradE, opt.modes, {i, ip}, true, psi);
          linalg::caxpy(fock::cplx{G, 0.0}, omit2.coeffs.data(),
                        rhs.coeffs.data(), rhs.dim());
        }

      const Residual r =
          relative_residual(lhs, rhs, cap - static_cast<int>(n));
      worst_n.raw = std::max(worst_n.raw, r.raw);
      worst_n.projected = std::max(worst_n.projected, r.projected);
    }
  }

  const std::string suffix = "/n=" + std::to_string(n);
  std::vector<IdentityReport> out;
  out.push_back(make_report("pull_through/dressed/hamiltonian" + suffix,
                            worst_h.raw, worst_h.projected, opt.tolerance,
                            model));
  out.push_back(make_report("pull_through/dressed/lambda" + suffix,
                            worst_la.raw, worst_la.projected, opt.tolerance,
                            model));
  out.push_back(make_report("pull_through/dressed/vertex" + suffix,
                            worst_f.raw, worst_f.projected, opt.tolerance,
                            model));
  out.push_back(make_report("pull_through/dressed/nfold" + suffix,
                            worst_n.raw, worst_n.projected, opt.tolerance,
                            model));

  // Scalar dressing identity (|k| - gradE.k) f(k) = v(k), absolute defect.
  double scalar_defect = 0.0;
  for (const auto& m : model.grid().modes) {
    const double f = nelson::dressing_f_value(model.params(), gradE, m.k);
    const double v = nelson::form_factor_value(model.params(), m.k);
    const double lhs =
        (m.knorm() - (gradE[0] * m.k[0] + gradE[1] * m.k[1] +
                      gradE[2] * m.k[2])) * f;
    scalar_defect = std::max(scalar_defect, std::abs(lhs - v));
  }
  out.push_back(make_report("pull_through/dressed/scalar", scalar_defect,
                            scalar_defect, 1e-14, model));
  return out;
}

std::vector<IdentityReport> default_identity_suite(
    const nelson::NelsonModel& model, const std::array<double, 3>& gradE) {
  const int m = static_cast<int>(model.grid().size());
  // A spread of modes: first, last, and a middle one (deduplicated when
  // the grid is small).
  const int a = 0;
  const int b = (m > 1) ? m - 1 : 0;
  const int c = (m > 2) ? m / 2 : a;

  std::vector<IdentityReport> out;
  for (int n = 1; n <= 3; ++n) {
    if (model.basis().n_max() - n < 0) break;
    PullThroughOptions opt;
    opt.modes = (n == 1)   ? std::vector<int>{b}
                : (n == 2) ? std::vector<int>{a, b}
                           : std::vector<int>{a, c, b};
    opt.vectors = 5;
    opt.seed = 90210 + static_cast<unsigned>(n);
    opt.tolerance = 1e-8;
    out.push_back(check_pull_through_standard(model, opt));
    auto dressed = check_pull_through_dressed(model, gradE, opt);
    if (n > 1) dressed.pop_back();  // per-mode scalar report repeats verbatim
    out.insert(out.end(), dressed.begin(), dressed.end());
  }
  return out;
}

}  // namespace verif
