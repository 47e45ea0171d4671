// Dressing functions and the dressed momentum operator.
//
// Given the energy gradient at the working momentum, each mode carries
//
//     alpha_j = 1 - khat_j . gradE      (positive because |gradE| < 1)
//     f_j     = v_j / (|k_j| alpha_j)   (zero exactly where v_j is zero)
//     g_j     = f_j k_j
//
// so that (|k_j| - gradE . k_j) f_j = v_j holds identically.  The
// operator Lambda := gradE - (P_eff - P_f) is diagonal in the occupation
// basis; shifted variants Lambda + s (s a constant 3-vector) are the same
// diagonal with a scalar offset per component and are produced by the
// `shift` argument.

#pragma once

#include <array>

#include "nelson/model.h"

namespace nelson {

struct Dressing {
  std::array<double, 3> gradE{};
  std::vector<double> alpha;               ///< 1 - khat_j . gradE
  std::vector<double> f;                   ///< dressing scalars
  std::vector<std::array<double, 3>> g;    ///< f_j k_j
};

/// Throws std::domain_error if any direction factor alpha_j is not
/// strictly positive (the dressed representation breaks down there).
Dressing dressing_functions(const FormFactor& form, const fock::MomentumGrid& grid,
                            const std::array<double, 3>& gradE);

/// Dressing scalar f(k) = v(k) / (|k| alpha(k)) at an arbitrary momentum,
/// alpha(k) = 1 - khat . gradE.  Exactly zero where v(k) is zero; throws
/// std::domain_error if alpha(k) is not strictly positive.
double dressing_f_value(const NelsonParams& params,
                        const std::array<double, 3>& gradE,
                        const std::array<double, 3>& k);

/// g(k) = f(k) k at an arbitrary momentum.
std::array<double, 3> dressing_g_value(const NelsonParams& params,
                                       const std::array<double, 3>& gradE,
                                       const std::array<double, 3>& k);

/// One component of (Lambda + shift) v.
fock::FockVector apply_lambda_component(const NelsonModel& model,
                                        const std::array<double, 3>& gradE,
                                        int component, const fock::FockVector& v,
                                        double shift = 0.0);

/// All three components of (Lambda + shift) v.
std::array<fock::FockVector, 3> apply_lambda(
    const NelsonModel& model, const std::array<double, 3>& gradE,
    const fock::FockVector& v, const std::array<double, 3>& shift = {0.0, 0.0, 0.0});

/// (u . (Lambda + shift)) v for a constant 3-vector u (single pass).
fock::FockVector apply_lambda_dot(const NelsonModel& model,
                                  const std::array<double, 3>& gradE,
                                  const std::array<double, 3>& u,
                                  const fock::FockVector& v,
                                  const std::array<double, 3>& shift = {0.0, 0.0,
                                                                        0.0});

}  // namespace nelson
