// Strictly-separated contraction patterns: index tuples (i_1, ..., i_l)
// with i_{j+1} > i_j + 1, marking where pair contractions act in a
// closed-form recurrence expansion.  Two index conventions occur, offset
// by one from each other; both are supported behind a flag.

#pragma once

#include <utility>
#include <vector>

namespace recur {

enum class PatternConvention {
  /// Indices range over 1 <= i_1, i_l <= n-1; index i contracts the
  /// position pair (i, i+1).
  Lower,
  /// Shifted variant: 2 <= i_1, i_l <= n; index i contracts (i-1, i).
  Upper,
};

struct ContractionPattern {
  int n = 0;  ///< total length of the underlying product
  std::vector<int> indices;  ///< strictly separated, ascending
  PatternConvention convention = PatternConvention::Lower;

  /// The contracted position pairs (low, high), ascending.
  std::vector<std::pair<int, int>> pairs() const;
  /// Flattened doubled tuple (i_1-1, i_1, ..., i_l-1, i_l) in the Upper
  /// convention (resp. (i_1, i_1+1, ...) in the Lower one): every
  /// position occupied by a contraction.
  std::vector<int> doubled() const;
  /// Positions in {1..n} not covered by any contracted pair, ascending.
  std::vector<int> free_positions() const;
};

/// All strictly-separated tuples of length `count` for the given
/// convention, in lexicographic order.  The number of tuples is
/// C(n-count, count).  Throws std::invalid_argument unless
/// 0 <= count <= n/2.
std::vector<ContractionPattern> enumerate_patterns(int n, int count,
                                                   PatternConvention convention);

}  // namespace recur
