// Jacobi-preconditioned conjugate gradient for Hermitian
// positive-definite operators, with optional one-vector deflation for
// solving on the orthogonal complement of a known eigenvector.

#pragma once

#include <functional>
#include <vector>

#include "linalg/kernels.h"

namespace linalg {

using ApplyFn = std::function<void(const cplx* x, cplx* y)>;

struct CgOptions {
  double rel_tol = 1e-12;  ///< stop when ||r|| <= rel_tol * ||b||
  int max_iter = 20000;
};

struct CgResult {
  int iterations = 0;
  double rel_residual = 0.0;  ///< final ||b - A x|| / ||b||, recomputed
  bool converged = false;
};

/// Solves A x = b.  `diag` (optional) supplies the Jacobi preconditioner;
/// entries are clamped away from zero.  `deflate` (optional, unit norm)
/// restricts the solve to the orthogonal complement of that vector: the
/// right-hand side is projected once and the residual is re-projected
/// every iteration, so the returned x satisfies A x = (1 - |q><q|) b and
/// <q, x> = 0 (for A Hermitian with A q = mu q, mu != 0 on the
/// complement).  x is overwritten (zero initial guess).
CgResult cg_solve(std::size_t dim, const ApplyFn& apply, const double* diag,
                  const std::vector<cplx>& b, std::vector<cplx>& x,
                  const CgOptions& opts = {}, const cplx* deflate = nullptr);

}  // namespace linalg
