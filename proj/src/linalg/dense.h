// Dense Eigen-based routines used as small-scale oracles for the
// iterative solvers and for exact diagonalization at desk dimensions.

#pragma once

#include <complex>
#include <vector>

#include "linalg/csr.h"

namespace linalg {

/// Result of a dense symmetric eigendecomposition restricted to the
/// lowest few pairs.
struct DenseEigenResult {
  std::vector<double> values;              // ascending
  std::vector<std::vector<cplx>> vectors;  // matching order, unit norm
};

/// Materializes A (+ optional real diagonal d) and returns the lowest
/// `count` eigenpairs.  Intended for dimensions up to a few thousand.
DenseEigenResult dense_lowest_eigenpairs(const CsrMatrix& a, const double* d,
                                         std::size_t count);

/// Dense solve (A + diag(d)) x = b with partial-pivot LU; oracle for the
/// iterative solver on small systems.
std::vector<cplx> dense_solve(const CsrMatrix& a, const double* d,
                              const std::vector<cplx>& b);

}  // namespace linalg
