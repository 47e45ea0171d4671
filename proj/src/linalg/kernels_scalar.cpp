// Scalar reference implementations of the vector kernels.  These are the
// ground truth the SIMD variants are tested against, and the fallback on
// machines without AVX2.

#include "linalg/kernels.h"

namespace linalg {
namespace {

void axpy_scalar(double a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void caxpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(double a, cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double nrm2sq_scalar(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void spmv_scalar(std::size_t rows, const std::int64_t* row_ptr,
                 const std::int32_t* col_idx, const double* vals,
                 const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double acc_re = 0.0, acc_im = 0.0;
    for (std::int64_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) {
      const cplx xv = x[col_idx[p]];
      acc_re += vals[p] * xv.real();
      acc_im += vals[p] * xv.imag();
    }
    y[r] = {acc_re, acc_im};
  }
}

void spmv_diag_scalar(std::size_t rows, const std::int64_t* row_ptr,
                      const std::int32_t* col_idx, const double* vals,
                      const double* diag, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double acc_re = diag[r] * x[r].real();
    double acc_im = diag[r] * x[r].imag();
    for (std::int64_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) {
      const cplx xv = x[col_idx[p]];
      acc_re += vals[p] * xv.real();
      acc_im += vals[p] * xv.imag();
    }
    y[r] = {acc_re, acc_im};
  }
}

}  // namespace

namespace detail {
const KernelTable scalar_table = {axpy_scalar,   caxpy_scalar,
                                  scal_scalar,   nrm2sq_scalar,
                                  dotc_scalar,   spmv_scalar,
                                  spmv_diag_scalar, "scalar"};
}  // namespace detail

}  // namespace linalg
