#include "linalg/csr.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linalg {

CsrMatrix csr_from_triplets(std::size_t rows, std::size_t cols,
                            std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.col < 0 || t.row >= static_cast<std::int64_t>(rows) ||
        t.col >= static_cast<std::int64_t>(cols))
      throw std::invalid_argument("csr_from_triplets: index out of range");
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

  CsrMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);
  m.col_idx.reserve(triplets.size());
  m.vals.reserve(triplets.size());

  std::size_t i = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    while (i < triplets.size() &&
           triplets[i].row == static_cast<std::int64_t>(r)) {
      const std::int64_t c = triplets[i].col;
      double v = 0.0;
      while (i < triplets.size() &&
             triplets[i].row == static_cast<std::int64_t>(r) &&
             triplets[i].col == c)
        v += triplets[i++].val;
      if (v != 0.0) {
        m.col_idx.push_back(static_cast<std::int32_t>(c));
        m.vals.push_back(v);
      }
    }
    m.row_ptr[r + 1] = static_cast<std::int64_t>(m.col_idx.size());
  }
  return m;
}

double csr_symmetry_defect(const CsrMatrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("symmetry_defect: not square");
  // Entry lookup by binary search within the (sorted) transposed row.
  const auto entry = [&a](std::size_t r, std::int32_t c) {
    const auto begin = a.col_idx.begin() + a.row_ptr[r];
    const auto end = a.col_idx.begin() + a.row_ptr[r + 1];
    const auto it = std::lower_bound(begin, end, c);
    if (it == end || *it != c) return 0.0;
    return a.vals[static_cast<std::size_t>(it - a.col_idx.begin())];
  };
  double defect = 0.0;
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::int64_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) {
      const double diff =
          std::fabs(a.vals[p] - entry(a.col_idx[p], static_cast<std::int32_t>(r)));
      defect = std::max(defect, diff);
    }
  return defect;
}

}  // namespace linalg
