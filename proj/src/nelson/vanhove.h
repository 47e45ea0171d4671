// Analytic solution of the model with the quadratic electron term
// disabled: H = H_f + sum_j c_j (b_j + b*_j) with c_j = sqrt(w_j) v_j is
// diagonalized exactly by displacing every mode by alpha_j = -c_j/|k_j|.
// The ground energy is -sum_j c_j^2/|k_j|, the ground state is the
// coherent state with those amplitudes, and truncating the photon number
// at N raises the variational energy by at most
//
//     (sum_j |k_j| alpha_j^2) * (nu^N / N!) / (sum_{m<=N} nu^m / m!),
//
// nu = sum_j alpha_j^2.  (Truncate the coherent state at grade N and take
// its Rayleigh quotient: the only cross term left is the annihilation
// part of the interaction acting on grade N+1, and on a coherent state
// b_j acts as alpha_j, which gives the formula; the lower bound is the
// global variational principle.)  These closed forms are the independent
// oracle for the iterative solver and the first-order wave functions.

#pragma once

#include "nelson/model.h"

namespace nelson {

struct VanHoveSolution {
  double energy = 0.0;               ///< exact untruncated ground energy
  std::vector<double> amplitude;     ///< per-mode coherent amplitudes alpha_j
  double nu = 0.0;                   ///< sum_j alpha_j^2
  double truncation_bound = 0.0;     ///< upper bound on E_truncated - energy
  fock::FockVector coherent;         ///< normalized truncated coherent state
};

/// Requires a model built with the quadratic term disabled; throws
/// std::logic_error otherwise.
VanHoveSolution van_hove_solution(const NelsonModel& model);

}  // namespace nelson
