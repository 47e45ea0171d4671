// Occupation-number basis of a photon-number-truncated symmetric Fock
// space over M modes: all occupation vectors (n_1, ..., n_M) with total
// at most N_max.  Ordering is graded by total photon number, ascending
// lexicographic within each grade, so the sectors are contiguous slices.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace fock {

/// Dimension of the truncated space, sum_{m=0..n_max} C(M+m-1, m).
/// Throws std::overflow_error if it would not fit in 63 bits.
std::int64_t fock_dimension(int modes, int n_max);

class FockBasis {
 public:
  /// Enumerates all states.  Throws std::invalid_argument for
  /// modes < 1 or n_max < 0, std::overflow_error for absurd sizes.
  FockBasis(int modes, int n_max);

  int modes() const { return modes_; }
  int n_max() const { return n_max_; }
  std::size_t dim() const { return states_.size(); }

  /// Occupation vector of a basis state.
  const std::vector<int>& state(std::size_t index) const { return states_[index]; }
  /// Index of an occupation vector; throws std::out_of_range if the
  /// vector is not in the basis (wrong length or total > N_max).
  std::size_t index_of(const std::vector<int>& occupation) const;
  /// Total photon number of a basis state (its grade).
  int total(std::size_t index) const { return totals_[index]; }

  /// Half-open index range [begin, end) of the grade-m sector.
  std::size_t sector_begin(int m) const { return sector_offsets_[static_cast<std::size_t>(m)]; }
  std::size_t sector_end(int m) const { return sector_offsets_[static_cast<std::size_t>(m) + 1]; }

 private:
  int modes_ = 0;
  int n_max_ = 0;
  std::vector<std::vector<int>> states_;
  std::vector<int> totals_;
  std::vector<std::size_t> sector_offsets_;  // size n_max+2
  std::map<std::vector<int>, std::size_t> index_;
};

}  // namespace fock
