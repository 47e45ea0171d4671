// Hot-loop vector kernels for the iterative solvers: real-scalar BLAS-1
// operations on complex vectors plus sparse matrix-vector products for a
// real CSR matrix acting on a complex vector.
//
// A scalar reference implementation always exists.  On x86-64 the
// dispatcher swaps in AVX2/FMA variants at first use (cpuid check at
// runtime); both implementations are equivalence-tested against each
// other, and the selected path is fixed for the lifetime of the process
// so repeated runs of one binary reduce in the same order.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace linalg {

using cplx = std::complex<double>;

namespace detail {

struct KernelTable {
  // y += a*x
  void (*axpy)(double a, const cplx* x, cplx* y, std::size_t n);
  // y += a*x, complex scalar
  void (*caxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // x *= a
  void (*scal)(double a, cplx* x, std::size_t n);
  // sum_i |x_i|^2
  double (*nrm2sq)(const cplx* x, std::size_t n);
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // y = A x, A real CSR
  void (*spmv)(std::size_t rows, const std::int64_t* row_ptr,
               const std::int32_t* col_idx, const double* vals,
               const cplx* x, cplx* y);
  // y = A x + d .* x, A real CSR, d real diagonal
  void (*spmv_diag)(std::size_t rows, const std::int64_t* row_ptr,
                    const std::int32_t* col_idx, const double* vals,
                    const double* diag, const cplx* x, cplx* y);
  const char* name;
};

extern const KernelTable scalar_table;
#if defined(__x86_64__)
extern const KernelTable avx2_table;
// Whether the AVX2 table is usable on this machine (cpuid).
bool avx2_supported();
#endif

const KernelTable& active();

}  // namespace detail

/// Name of the implementation the dispatcher selected ("scalar" or "avx2").
const char* active_kernel_set();

/// y[i] += a * x[i] for i < n (real scalar, complex vectors).
inline void axpy(double a, const cplx* x, cplx* y, std::size_t n) {
  detail::active().axpy(a, x, y, n);
}

/// y[i] += a * x[i] for i < n (complex scalar).
inline void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  detail::active().caxpy(a, x, y, n);
}

/// x[i] *= a for i < n.
inline void scal(double a, cplx* x, std::size_t n) {
  detail::active().scal(a, x, n);
}

/// Squared Euclidean norm sum_i |x_i|^2.
inline double nrm2sq(const cplx* x, std::size_t n) {
  return detail::active().nrm2sq(x, n);
}

/// Conjugated dot product sum_i conj(x_i) * y_i.
inline cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  return detail::active().dotc(x, y, n);
}

/// y = A x for a real CSR matrix acting on a complex vector.
inline void spmv(std::size_t rows, const std::int64_t* row_ptr,
                 const std::int32_t* col_idx, const double* vals,
                 const cplx* x, cplx* y) {
  detail::active().spmv(rows, row_ptr, col_idx, vals, x, y);
}

/// y = A x + d .* x (CSR product plus a real diagonal term).
inline void spmv_diag(std::size_t rows, const std::int64_t* row_ptr,
                      const std::int32_t* col_idx, const double* vals,
                      const double* diag, const cplx* x, cplx* y) {
  detail::active().spmv_diag(rows, row_ptr, col_idx, vals, diag, x, y);
}

}  // namespace linalg
