// A coefficient vector over a FockBasis, with the handful of vector-space
// helpers the rest of the code needs.  The heavy lifting stays in the
// linalg kernels.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fock/basis.h"
#include "linalg/kernels.h"

namespace fock {

using linalg::cplx;

struct FockVector {
  const FockBasis* basis = nullptr;
  std::vector<cplx> coeffs;

  FockVector() = default;
  explicit FockVector(const FockBasis& b)
      : basis(&b), coeffs(b.dim(), cplx{0.0, 0.0}) {}

  std::size_t dim() const { return coeffs.size(); }

  FockVector& operator+=(const FockVector& o) {
    check_same(o);
    linalg::caxpy(cplx{1.0, 0.0}, o.coeffs.data(), coeffs.data(), dim());
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    check_same(o);
    linalg::caxpy(cplx{-1.0, 0.0}, o.coeffs.data(), coeffs.data(), dim());
    return *this;
  }
  FockVector& operator*=(double a) {
    linalg::scal(a, coeffs.data(), dim());
    return *this;
  }
  FockVector& operator*=(cplx a) {
    for (auto& c : coeffs) c *= a;
    return *this;
  }

  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(double s, FockVector v) { return v *= s; }
  friend FockVector operator*(cplx s, FockVector v) { return v *= s; }

  void check_same(const FockVector& o) const {
    if (basis != o.basis || coeffs.size() != o.coeffs.size())
      throw std::invalid_argument("FockVector: basis mismatch");
  }
};

/// <a, b> with the convention conj(a) . b.
inline cplx dot(const FockVector& a, const FockVector& b) {
  a.check_same(b);
  return linalg::dotc(a.coeffs.data(), b.coeffs.data(), a.dim());
}

inline double norm(const FockVector& a) {
  return std::sqrt(linalg::nrm2sq(a.coeffs.data(), a.dim()));
}

/// The vacuum state (index 0 in the graded ordering).
inline FockVector vacuum(const FockBasis& basis) {
  FockVector v(basis);
  v.coeffs[0] = 1.0;
  return v;
}

}  // namespace fock
