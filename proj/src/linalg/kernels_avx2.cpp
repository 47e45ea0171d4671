// AVX2/FMA variants of the vector kernels.  This translation unit is the
// only one compiled with -mavx2 -mfma; nothing here runs unless the
// dispatcher's cpuid check passed, so the binary stays safe on older
// x86-64 machines.  std::complex<double> arrays are touched through their
// guaranteed (re, im) double-pair layout.

#include "linalg/kernels.h"

#if defined(__x86_64__)

#include <immintrin.h>

namespace linalg {
namespace {

void axpy_avx2(double a, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const std::size_t m = 2 * n;
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d yv = _mm256_loadu_pd(yd + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(xd + i), yv);
    _mm256_storeu_pd(yd + i, yv);
  }
  for (; i < m; ++i) yd[i] += a * xd[i];
}

void caxpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);  // [xi0 xr0 xi1 xr1]
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(yd + 2 * i,
                     _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(double a, cplx* x, std::size_t n) {
  double* xd = reinterpret_cast<double*>(x);
  const std::size_t m = 2 * n;
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4)
    _mm256_storeu_pd(xd + i, _mm256_mul_pd(av, _mm256_loadu_pd(xd + i)));
  for (; i < m; ++i) xd[i] *= a;
}

double nrm2sq_avx2(const cplx* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t m = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d v = _mm256_loadu_pd(xd + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  lo = _mm_add_pd(lo, hi);
  double s = _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
  for (; i < m; ++i) s += xd[i] * xd[i];
  return s;
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  // Negates the imaginary slots (elements 1 and 3 of each vector).
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  __m256d re_acc = _mm256_setzero_pd();
  __m256d im_acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    // re += xr*yr + xi*yi: elementwise product, horizontal sum at the end.
    re_acc = _mm256_fmadd_pd(xv, yv, re_acc);
    // im += xr*yi - xi*yr: conjugate x, swap (re,im) pairs of y.
    const __m256d xc = _mm256_xor_pd(xv, conj_mask);
    const __m256d ys = _mm256_permute_pd(yv, 0b0101);
    im_acc = _mm256_fmadd_pd(xc, ys, im_acc);
  }
  __m128d re_lo = _mm_add_pd(_mm256_castpd256_pd128(re_acc),
                             _mm256_extractf128_pd(re_acc, 1));
  __m128d im_lo = _mm_add_pd(_mm256_castpd256_pd128(im_acc),
                             _mm256_extractf128_pd(im_acc, 1));
  double re = _mm_cvtsd_f64(re_lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(re_lo, re_lo));
  double im = _mm_cvtsd_f64(im_lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(im_lo, im_lo));
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

// Accumulates two CSR entries per step: vv = [v0 v0 v1 v1] times the two
// gathered complex values xv = [x(c0) x(c1)], then folds the two halves.
inline cplx row_accumulate(const std::int64_t* row_ptr,
                           const std::int32_t* col_idx, const double* vals,
                           const cplx* x, std::size_t r, __m128d acc128) {
  const std::int64_t begin = row_ptr[r], end = row_ptr[r + 1];
  __m256d acc = _mm256_setzero_pd();
  std::int64_t p = begin;
  for (; p + 2 <= end; p += 2) {
    const __m128d vpair = _mm_loadu_pd(vals + p);  // [v0 v1]
    const __m256d vv =
        _mm256_permute4x64_pd(_mm256_castpd128_pd256(vpair), 0x50);
    const __m128d x0 =
        _mm_loadu_pd(reinterpret_cast<const double*>(x + col_idx[p]));
    const __m128d x1 =
        _mm_loadu_pd(reinterpret_cast<const double*>(x + col_idx[p + 1]));
    acc = _mm256_fmadd_pd(vv, _mm256_set_m128d(x1, x0), acc);
  }
  acc128 = _mm_add_pd(acc128, _mm_add_pd(_mm256_castpd256_pd128(acc),
                                         _mm256_extractf128_pd(acc, 1)));
  double acc_re = _mm_cvtsd_f64(acc128);
  double acc_im = _mm_cvtsd_f64(_mm_unpackhi_pd(acc128, acc128));
  for (; p < end; ++p) {
    const cplx xv = x[col_idx[p]];
    acc_re += vals[p] * xv.real();
    acc_im += vals[p] * xv.imag();
  }
  return {acc_re, acc_im};
}

void spmv_avx2(std::size_t rows, const std::int64_t* row_ptr,
               const std::int32_t* col_idx, const double* vals, const cplx* x,
               cplx* y) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = row_accumulate(row_ptr, col_idx, vals, x, r, _mm_setzero_pd());
}

void spmv_diag_avx2(std::size_t rows, const std::int64_t* row_ptr,
                    const std::int32_t* col_idx, const double* vals,
                    const double* diag, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const __m128d dx = _mm_mul_pd(
        _mm_set1_pd(diag[r]),
        _mm_loadu_pd(reinterpret_cast<const double*>(x + r)));
    y[r] = row_accumulate(row_ptr, col_idx, vals, x, r, dx);
  }
}

}  // namespace

namespace detail {

const KernelTable avx2_table = {axpy_avx2,   caxpy_avx2,
                                scal_avx2,   nrm2sq_avx2,
                                dotc_avx2,   spmv_avx2,
                                spmv_diag_avx2, "avx2"};

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace detail

}  // namespace linalg

#endif  // defined(__x86_64__)
