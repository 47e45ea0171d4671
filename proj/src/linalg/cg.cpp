#include "linalg/cg.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linalg {
namespace {

// Removes the q-component of v in place.
inline void project_out(const cplx* q, cplx* v, std::size_t n) {
  const cplx c = dotc(q, v, n);
  caxpy(-c, q, v, n);
}

}  // namespace

CgResult cg_solve(std::size_t dim, const ApplyFn& apply, const double* diag,
                  const std::vector<cplx>& b, std::vector<cplx>& x,
                  const CgOptions& opts, const cplx* deflate) {
  if (b.size() != dim) throw std::invalid_argument("cg_solve: shape mismatch");

  // Jacobi preconditioner with entries clamped away from zero so a single
  // (near-)singular diagonal entry cannot poison the scaling.
  std::vector<double> inv_diag;
  if (diag) {
    double dmax = 0.0;
    for (std::size_t i = 0; i < dim; ++i) dmax = std::max(dmax, std::fabs(diag[i]));
    const double floor_val = std::max(1e-300, 1e-14 * dmax);
    inv_diag.resize(dim);
    for (std::size_t i = 0; i < dim; ++i)
      inv_diag[i] = 1.0 / std::max(std::fabs(diag[i]), floor_val);
  }
  const auto precond = [&](const std::vector<cplx>& r, std::vector<cplx>& z) {
    if (inv_diag.empty()) {
      z = r;
    } else {
      z.resize(dim);
      for (std::size_t i = 0; i < dim; ++i) z[i] = inv_diag[i] * r[i];
    }
  };

  std::vector<cplx> r(b);
  if (deflate) project_out(deflate, r.data(), dim);
  const double bnorm = std::sqrt(nrm2sq(r.data(), dim));

  x.assign(dim, cplx{0.0, 0.0});
  CgResult out;
  if (bnorm == 0.0) {  // projected right-hand side vanishes: x = 0 exactly
    out.converged = true;
    return out;
  }

  std::vector<cplx> z(dim), p(dim), ap(dim);
  precond(r, z);
  if (deflate) project_out(deflate, z.data(), dim);
  p = z;
  double rz = dotc(r.data(), z.data(), dim).real();

  for (int it = 0; it < opts.max_iter; ++it) {
    apply(p.data(), ap.data());
    const double pap = dotc(p.data(), ap.data(), dim).real();
    if (!(pap > 0.0))
      throw std::runtime_error("cg_solve: operator not positive definite on the solve subspace");
    const double alpha = rz / pap;
    axpy(alpha, p.data(), x.data(), dim);
    axpy(-alpha, ap.data(), r.data(), dim);
    if (deflate) project_out(deflate, r.data(), dim);
    out.iterations = it + 1;
    if (std::sqrt(nrm2sq(r.data(), dim)) <= opts.rel_tol * bnorm) {
      out.converged = true;
      break;
    }
    precond(r, z);
    if (deflate) project_out(deflate, z.data(), dim);
    const double rz_new = dotc(r.data(), z.data(), dim).real();
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < dim; ++i) p[i] = z[i] + beta * p[i];
  }

  // Exact final residual against the (projected) right-hand side.
  if (deflate) project_out(deflate, x.data(), dim);
  std::vector<cplx> check(dim);
  apply(x.data(), check.data());
  std::vector<cplx> rr(b);
  if (deflate) project_out(deflate, rr.data(), dim);
  axpy(-1.0, check.data(), rr.data(), dim);
  if (deflate) project_out(deflate, rr.data(), dim);
  out.rel_residual = std::sqrt(nrm2sq(rr.data(), dim)) / bnorm;
  if (out.rel_residual > opts.rel_tol * 10) out.converged = false;
  return out;
}

}  // namespace linalg
