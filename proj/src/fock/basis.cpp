#include "fock/basis.h"

#include <stdexcept>

namespace fock {

std::int64_t fock_dimension(int modes, int n_max) {
  if (modes < 1 || n_max < 0)
    throw std::invalid_argument("fock_dimension: need modes >= 1, n_max >= 0");
  std::int64_t total = 0;
  for (int m = 0; m <= n_max; ++m) {
    // C(modes+m-1, m), built incrementally to stay exact.
    std::int64_t c = 1;
    for (int i = 1; i <= m; ++i) {
      c = c * (modes - 1 + i) / i;  // exact: consecutive binomial growth
      if (c < 0 || c > (std::int64_t{1} << 62))
        throw std::overflow_error("fock_dimension: dimension overflow");
    }
    total += c;
    if (total < 0) throw std::overflow_error("fock_dimension: dimension overflow");
  }
  return total;
}

FockBasis::FockBasis(int modes, int n_max) : modes_(modes), n_max_(n_max) {
  const std::int64_t dim = fock_dimension(modes, n_max);
  if (dim > 50'000'000)
    throw std::overflow_error("FockBasis: dimension too large to enumerate");
  states_.reserve(static_cast<std::size_t>(dim));

  // Grade by grade; within a grade, ascending lexicographic enumeration
  // (first mode outermost, counting up).
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  const auto emit_grade = [this, modes, &occ](auto&& self, int mode, int remaining) -> void {
    if (mode == modes - 1) {
      occ[static_cast<std::size_t>(mode)] = remaining;
      states_.push_back(occ);
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      occ[static_cast<std::size_t>(mode)] = n;
      self(self, mode + 1, remaining - n);
    }
  };

  sector_offsets_.push_back(0);
  for (int m = 0; m <= n_max; ++m) {
    emit_grade(emit_grade, 0, m);
    sector_offsets_.push_back(states_.size());
  }
  totals_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    int t = 0;
    for (int n : states_[i]) t += n;
    totals_.push_back(t);
    index_.emplace(states_[i], i);
  }
}

std::size_t FockBasis::index_of(const std::vector<int>& occupation) const {
  const auto it = index_.find(occupation);
  if (it == index_.end())
    throw std::out_of_range("FockBasis::index_of: state not in basis");
  return it->second;
}

}  // namespace fock
