#include "nelson/dressing.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nelson {

Dressing dressing_functions(const FormFactor& form, const fock::MomentumGrid& grid,
                            const std::array<double, 3>& gradE) {
  if (form.v.size() != grid.size()) {
    throw std::invalid_argument("form factor and grid sizes differ");
  }
  Dressing d;
  d.gradE = gradE;
  d.alpha.resize(grid.size());
  d.f.resize(grid.size(), 0.0);
  d.g.resize(grid.size(), {0.0, 0.0, 0.0});
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto& k = grid.modes[j].k;
    const double kn = grid.modes[j].knorm();
    const double a =
        1.0 - (k[0] * gradE[0] + k[1] * gradE[1] + k[2] * gradE[2]) / kn;
    d.alpha[j] = a;
    if (!(a > 0.0)) {
      std::ostringstream msg;
      msg << "direction factor alpha = " << a << " at mode " << j
          << " is not positive; dressing undefined";
      throw std::domain_error(msg.str());
    }
    if (form.v[j] == 0.0) continue;  // keep the exact zero
    d.f[j] = form.v[j] / (kn * a);
    for (int c = 0; c < 3; ++c) d.g[j][static_cast<std::size_t>(c)] = d.f[j] * k[static_cast<std::size_t>(c)];
  }
  return d;
}

double dressing_f_value(const NelsonParams& params,
                        const std::array<double, 3>& gradE,
                        const std::array<double, 3>& k) {
  const double kn = pnorm(k);
  const double a =
      1.0 - (k[0] * gradE[0] + k[1] * gradE[1] + k[2] * gradE[2]) / kn;
  if (!(a > 0.0)) {
    std::ostringstream msg;
    msg << "direction factor alpha = " << a << " at k = (" << k[0] << ", "
        << k[1] << ", " << k[2] << ") is not positive; dressing undefined";
    throw std::domain_error(msg.str());
  }
  const double v = form_factor_value(params, k);
  if (v == 0.0) return 0.0;  // keep the exact zero
  return v / (kn * a);
}

std::array<double, 3> dressing_g_value(const NelsonParams& params,
                                       const std::array<double, 3>& gradE,
                                       const std::array<double, 3>& k) {
  const double f = dressing_f_value(params, gradE, k);
  return {f * k[0], f * k[1], f * k[2]};
}

fock::FockVector apply_lambda_component(const NelsonModel& model,
                                        const std::array<double, 3>& gradE,
                                        int component, const fock::FockVector& v,
                                        double shift) {
  const auto c = static_cast<std::size_t>(component);
  const auto& pf = model.field().pf[c];
  const double base = gradE[c] - model.effective_p()[c] + shift;
  fock::FockVector out(model.basis());
  for (std::size_t s = 0; s < out.dim(); ++s) {
    out.coeffs[s] = (base + pf[s]) * v.coeffs[s];
  }
  return out;
}

std::array<fock::FockVector, 3> apply_lambda(const NelsonModel& model,
                                             const std::array<double, 3>& gradE,
                                             const fock::FockVector& v,
                                             const std::array<double, 3>& shift) {
  return {apply_lambda_component(model, gradE, 0, v, shift[0]),
          apply_lambda_component(model, gradE, 1, v, shift[1]),
          apply_lambda_component(model, gradE, 2, v, shift[2])};
}

fock::FockVector apply_lambda_dot(const NelsonModel& model,
                                  const std::array<double, 3>& gradE,
                                  const std::array<double, 3>& u,
                                  const fock::FockVector& v,
                                  const std::array<double, 3>& shift) {
  const auto& pf = model.field().pf;
  double base = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    base += u[c] * (gradE[c] - model.effective_p()[c] + shift[c]);
  }
  fock::FockVector out(model.basis());
  for (std::size_t s = 0; s < out.dim(); ++s) {
    double d = base;
    for (std::size_t c = 0; c < 3; ++c) d += u[c] * pf[c][s];
    out.coeffs[s] = d * v.coeffs[s];
  }
  return out;
}

}  // namespace nelson
