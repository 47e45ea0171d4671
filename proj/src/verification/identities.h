// Pull-through identity checks on the truncated model.
//
// Each check assembles the left and right side of an operator identity
// independently and reports the relative defect.  With b(k_j) the
// continuum-normalized annihilation of grid mode j and B the product
// b(k_n)...b(k_1), the undressed n-fold identity is
//
//     B H psi = (H_shift(q) + |k|_tot) B psi + sum_i v(k_i) B_omit(i) psi,
//
// with q = k_1 + ... + k_n and |k|_tot = |k_1| + ... + |k_n|.  The
// dressed family replaces b by b_W(k) = b(k) + f(k) and adds the vertex
// operators
//
//     F(kt, k) x = -g(kt) . (Lambda + k + kt/2) x,     G(kp, kt) = g(kp) . g(kt),
//
// giving the one-step Hamiltonian identity, the Lambda commutation, the
// F commutation, and the n-fold version with one F term per omitted
// factor and one G term per omitted pair.
//
// Truncation: the only inexact piece is the creation amplitude clipped
// at the top photon sector.  After n annihilations that defect sits in
// sectors >= N_max + 1 - n, so the projected residual zeroes sectors
// above N_max - n and must vanish for any input; the raw residual also
// vanishes whenever the input is supported on sectors <= N_max - 2.
// Residual norms are relative to the larger assembled side.

#pragma once

#include <vector>

#include "fock/vector.h"
#include "verification/reports.h"

namespace verif {

struct PullThroughOptions {
  std::vector<int> modes;   ///< tuple of grid mode indices, length n >= 1
  int vectors = 5;          ///< number of random test vectors
  unsigned seed = 1234;     ///< test-vector seed
  double tolerance = 1e-8;  ///< pass threshold on the projected residual
  int max_sector = -1;      ///< top occupied sector of test vectors;
                            ///< -1 means the safe default N_max - 2
};

/// Unit-norm vector with independent standard-normal real and imaginary
/// parts on every state in sectors <= max_sector, zero above.
fock::FockVector random_sector_vector(const fock::FockBasis& basis,
                                      int max_sector, unsigned seed);

/// Worst relative residual of the undressed n-fold identity over the
/// option's test vectors.  Needs only the model (no solve).
IdentityReport check_pull_through_standard(const nelson::NelsonModel& model,
                                           const PullThroughOptions& opt);

/// The dressed family at the energy gradient gradE: one report per
/// identity ("hamiltonian", "lambda", "vertex", "nfold") plus the scalar
/// per-mode dressing identity (|k| - gradE.k) f(k) = v(k), whose defect
/// is absolute (max over modes) and held to 1e-14.
std::vector<IdentityReport> check_pull_through_dressed(
    const nelson::NelsonModel& model, const std::array<double, 3>& gradE,
    const PullThroughOptions& opt);

/// The standard certification set on one solved model: undressed and
/// dressed identities for n = 1, 2 and (if the cap allows exact
/// projection) n = 3, on seeded safe-sector vectors at tolerance 1e-8.
std::vector<IdentityReport> default_identity_suite(
    const nelson::NelsonModel& model, const std::array<double, 3>& gradE);

}  // namespace verif
