#include "linalg/dense.h"

#include <Eigen/Dense>

#include <stdexcept>

namespace linalg {
namespace {

Eigen::MatrixXd materialize(const CsrMatrix& a, const double* d) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.rows, a.cols);
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::int64_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p)
      m(static_cast<Eigen::Index>(r), a.col_idx[p]) += a.vals[p];
  if (d)
    for (std::size_t r = 0; r < a.rows; ++r)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) += d[r];
  return m;
}

}  // namespace

DenseEigenResult dense_lowest_eigenpairs(const CsrMatrix& a, const double* d,
                                         std::size_t count) {
  if (a.rows != a.cols)
    throw std::invalid_argument("dense_lowest_eigenpairs: not square");
  const Eigen::MatrixXd m = materialize(a, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense_lowest_eigenpairs: eigensolver failed");
  DenseEigenResult out;
  const std::size_t k = std::min(count, a.rows);
  for (std::size_t j = 0; j < k; ++j) {
    out.values.push_back(es.eigenvalues()(static_cast<Eigen::Index>(j)));
    std::vector<cplx> v(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
      v[i] = es.eigenvectors()(static_cast<Eigen::Index>(i),
                               static_cast<Eigen::Index>(j));
    out.vectors.push_back(std::move(v));
  }
  return out;
}

std::vector<cplx> dense_solve(const CsrMatrix& a, const double* d,
                              const std::vector<cplx>& b) {
  if (a.rows != a.cols || b.size() != a.rows)
    throw std::invalid_argument("dense_solve: shape mismatch");
  const Eigen::MatrixXcd m = materialize(a, d).cast<cplx>();
  Eigen::VectorXcd rhs(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = b[i];
  const Eigen::VectorXcd x = m.partialPivLu().solve(rhs);
  std::vector<cplx> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace linalg
