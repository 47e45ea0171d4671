#include "recurrence_core/pattern.h"

#include <stdexcept>

namespace recur {

std::vector<std::pair<int, int>> ContractionPattern::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(indices.size());
  for (int i : indices)
    out.emplace_back(convention == PatternConvention::Lower ? i : i - 1,
                     convention == PatternConvention::Lower ? i + 1 : i);
  return out;
}

std::vector<int> ContractionPattern::doubled() const {
  std::vector<int> out;
  out.reserve(2 * indices.size());
  for (const auto& [lo, hi] : pairs()) {
    out.push_back(lo);
    out.push_back(hi);
  }
  return out;
}

std::vector<int> ContractionPattern::free_positions() const {
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  for (const auto& [lo, hi] : pairs())
    used[static_cast<std::size_t>(lo)] = used[static_cast<std::size_t>(hi)] = true;
  std::vector<int> out;
  for (int i = 1; i <= n; ++i)
    if (!used[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

std::vector<ContractionPattern> enumerate_patterns(int n, int count,
                                                   PatternConvention convention) {
  if (n < 0 || count < 0 || count > n / 2)
    throw std::invalid_argument("enumerate_patterns: need 0 <= count <= n/2");
  const int lo = convention == PatternConvention::Lower ? 1 : 2;
  const int hi = convention == PatternConvention::Lower ? n - 1 : n;

  std::vector<ContractionPattern> out;
  std::vector<int> current;
  // Depth-first enumeration in lexicographic order; each next index must
  // exceed the previous one by at least 2 (strict separation).
  const auto recurse = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(ContractionPattern{n, current, convention});
      return;
    }
    // Leave room for the remaining-1 later indices (2 slots each).
    for (int i = start; i + 2 * (remaining - 1) <= hi; ++i) {
      current.push_back(i);
      self(self, i + 2, remaining - 1);
      current.pop_back();
    }
  };
  recurse(recurse, lo, count);
  return out;
}

}  // namespace recur
