#include "linalg/lanczos.h"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace linalg {
namespace {

// Tridiagonal Rayleigh-Ritz step: lowest two Ritz values of T and the
// ground Ritz coefficient vector (needed for the residual estimate).
struct RitzStep {
  double e0, e1;
  Eigen::VectorXd s0;
};

RitzStep ritz(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag(m), sub(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index i = 0; i < m; ++i) diag(i) = alpha[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub);
  RitzStep r;
  r.e0 = es.eigenvalues()(0);
  r.e1 = m > 1 ? es.eigenvalues()(1) : std::numeric_limits<double>::quiet_NaN();
  r.s0 = es.eigenvectors().col(0);
  return r;
}

}  // namespace

LanczosResult lanczos_ground(std::size_t dim, const ApplyFn& apply,
                             const LanczosOptions& opts) {
  if (dim == 0) throw std::invalid_argument("lanczos_ground: empty space");

  // Deterministic start vector: dominated by coordinate 0 with a small
  // 1/(i+1) spread so every coordinate participates.
  std::vector<cplx> v0(dim);
  v0[0] = 1.0;
  for (std::size_t i = 0; i < dim; ++i) v0[i] += 1e-3 / static_cast<double>(i + 1);
  scal(1.0 / std::sqrt(nrm2sq(v0.data(), dim)), v0.data(), dim);

  std::vector<std::vector<cplx>> basis;
  basis.reserve(static_cast<std::size_t>(opts.max_iter) + 1);
  basis.push_back(std::move(v0));

  std::vector<double> alpha, beta;  // T diagonal and subdiagonal
  std::vector<cplx> w(dim);
  RitzStep step{0.0, std::numeric_limits<double>::quiet_NaN(), {}};
  bool converged = false;
  double scale = 1.0;

  for (int j = 0; j < opts.max_iter; ++j) {
    const std::vector<cplx>& vj = basis.back();
    apply(vj.data(), w.data());
    const double a = dotc(vj.data(), w.data(), dim).real();
    alpha.push_back(a);
    axpy(-a, vj.data(), w.data(), dim);
    if (j > 0) axpy(-beta.back(), basis[basis.size() - 2].data(), w.data(), dim);
    // Full reorthogonalization: one sweep over the stored basis removes
    // the O(eps) drift that plain Lanczos accumulates.
    for (const std::vector<cplx>& vi : basis) {
      const cplx c = dotc(vi.data(), w.data(), dim);
      caxpy(-c, vi.data(), w.data(), dim);
    }

    step = ritz(alpha, beta);
    scale = std::max(1.0, std::fabs(step.e0));

    const double b = std::sqrt(nrm2sq(w.data(), dim));
    const double res_est =
        b * std::fabs(step.s0(static_cast<Eigen::Index>(alpha.size()) - 1));
    const bool have_gap = alpha.size() >= 2 || dim == 1;
    if ((res_est <= opts.tol * scale && j + 1 >= opts.min_iter && have_gap) ||
        b <= 1e-14 * scale ||
        alpha.size() == dim) {
      converged = true;
      break;
    }
    beta.push_back(b);
    std::vector<cplx> vnext(w);
    scal(1.0 / b, vnext.data(), dim);
    basis.push_back(std::move(vnext));
  }

  LanczosResult out;
  out.e0 = step.e0;
  out.e1 = step.e1;
  out.iterations = static_cast<int>(alpha.size());
  out.converged = converged;

  // Assemble the Ritz vector and recompute the residual exactly.
  out.ground.assign(dim, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < alpha.size(); ++i)
    axpy(step.s0(static_cast<Eigen::Index>(i)), basis[i].data(),
         out.ground.data(), dim);
  scal(1.0 / std::sqrt(nrm2sq(out.ground.data(), dim)), out.ground.data(), dim);
  apply(out.ground.data(), w.data());
  axpy(-out.e0, out.ground.data(), w.data(), dim);
  out.residual = std::sqrt(nrm2sq(w.data(), dim));
  return out;
}

}  // namespace linalg
