// Compressed sparse row storage for real symmetric operators, plus the
// triplet builder used during Hamiltonian assembly.

#pragma once

#include <cstdint>
#include <vector>

#include "linalg/kernels.h"

namespace linalg {

/// One (row, col, value) entry fed to the CSR builder.
struct Triplet {
  std::int64_t row = 0;
  std::int64_t col = 0;
  double val = 0.0;
};

/// Real matrix in CSR form.  Rows are sorted by column index and hold no
/// duplicates or explicit zeros once built through csr_from_triplets.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> row_ptr;  // size rows+1
  std::vector<std::int32_t> col_idx;  // size nnz
  std::vector<double> vals;           // size nnz

  std::size_t nnz() const { return vals.size(); }

  /// y = A x.
  void apply(const cplx* x, cplx* y) const {
    spmv(rows, row_ptr.data(), col_idx.data(), vals.data(), x, y);
  }

  /// y = A x + d .* x.
  void apply_plus_diag(const double* d, const cplx* x, cplx* y) const {
    spmv_diag(rows, row_ptr.data(), col_idx.data(), vals.data(), d, x, y);
  }
};

/// Builds a CSR matrix from unordered triplets; duplicate (row, col)
/// entries are summed, exact zeros after summation are dropped.
CsrMatrix csr_from_triplets(std::size_t rows, std::size_t cols,
                            std::vector<Triplet> triplets);

/// max_{ij} |A_ij - A_ji|, computed structurally (missing entries count
/// as zero).  Zero for a symmetric matrix.
double csr_symmetry_defect(const CsrMatrix& a);

}  // namespace linalg
