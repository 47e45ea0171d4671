// Creation/annihilation and field operators on the truncated basis.
//
// Continuum-to-discrete dictionary (used by every module downstream;
// transcribed here once):
//
//     b(k_j)        :=  b_j / sqrt(w_j)
//     b*(k_j)       :=  b*_j / sqrt(w_j)
//     int d^3k F(k) :=  sum_j w_j F(k_j)
//
// so that [b(k_i), b*(k_j)] = delta_ij / w_j models the Dirac delta and
// int d^3k v(k) b*(k) = sum_j sqrt(w_j) v(k_j) b*_j.  The discrete
// operators b_j, b*_j below satisfy the standard ladder conventions
// b_j |n_j> = sqrt(n_j) |n_j - 1>, b*_j |n_j> = sqrt(n_j + 1) |n_j + 1>.
//
// Truncation: creation out of the top photon sector is hard-projected to
// zero.  Operator identities are therefore only asserted on sectors
// <= N_max - 2, where no projected amplitude can contribute.

#pragma once

#include <array>

#include "fock/grid.h"
#include "fock/vector.h"

namespace fock {

/// Precomputed per-mode transition tables: for mode j, entry t lists a
/// source state (occupation n_j > 0), the state with one quantum fewer,
/// and the amplitude sqrt(n_j).
class LadderOperators {
 public:
  struct Transition {
    std::int64_t lower = 0;  // state index with n_j - 1
    std::int64_t upper = 0;  // state index with n_j
    double amp = 0.0;        // sqrt(n_j)
    int occ = 0;             // n_j (exact integer, for radicand tests)
  };

  LadderOperators(const FockBasis& basis);

  const FockBasis& basis() const { return *basis_; }

  /// b_j v (photon number decreases; vacuum components vanish).
  FockVector annihilate(int mode, const FockVector& v) const;
  /// b*_j v with hard projection at the top sector.
  FockVector create(int mode, const FockVector& v) const;

  /// Raw transition table for one mode (used to assemble sparse matrices
  /// without going through dense vectors).
  const std::vector<Transition>& transitions(int mode) const {
    return per_mode_[static_cast<std::size_t>(mode)];
  }

 private:
  const FockBasis* basis_;
  std::vector<std::vector<Transition>> per_mode_;

  friend double ccr_defect(const LadderOperators& ops, int i, int j);
};

/// Exact commutator test: max over basis states in sectors <= N_max - 1
/// of |<s', ([b_i, b*_j] - delta_ij) s>|, evaluated with integer
/// radicands (products sqrt(m) sqrt(m) are collapsed to the integer m
/// before any rounding), so a correct implementation returns exactly 0.
double ccr_defect(const LadderOperators& ops, int i, int j);

/// Diagonals of the photon-field operators on a given grid: the free
/// field energy multiplies each state by sum_j n_j |k_j|, the field
/// momentum by sum_j n_j k_j componentwise, and the photon number by
/// sum_j n_j.
struct FieldDiagonals {
  std::vector<double> hf;                    // sum n_j |k_j|
  std::array<std::vector<double>, 3> pf;     // sum n_j k_j
  std::vector<double> number;                // sum n_j

  FieldDiagonals(const FockBasis& basis, const MomentumGrid& grid);
};

/// H_f v and the three components of P_f v (diagonal multiplications).
FockVector apply_hf(const FieldDiagonals& d, const FockVector& v);
FockVector apply_pf(const FieldDiagonals& d, int component, const FockVector& v);

}  // namespace fock
