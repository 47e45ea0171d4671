// Ordered tuples of photon momenta (k_1, ..., k_n) with their prefix
// data: the running vector sums k_1 + ... + k_i and the running scalar
// sums |k_1| + ... + |k_i| that parameterize the shifted resolvents of
// the iterated-solve routes.  Prefixes are stored at construction so the
// routes index them in O(1).

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fock/grid.h"

namespace wf {

struct MomentumTuple {
  /// The momenta, positions 1..n stored at [0..n-1].
  std::vector<std::array<double, 3>> k;
  /// prefix[i] = k_1 + ... + k_i (so prefix[0] is the zero vector).
  std::vector<std::array<double, 3>> prefix;
  /// prefix_mag[i] = |k_1| + ... + |k_i| (prefix_mag[0] = 0).
  std::vector<double> prefix_mag;

  std::size_t n() const { return k.size(); }
};

/// Builds the prefix data.  Throws std::invalid_argument unless every
/// |k_i| is strictly positive.
MomentumTuple make_tuple(std::vector<std::array<double, 3>> momenta);

/// Tuple of grid momenta selected by mode index (repetitions allowed).
MomentumTuple tuple_from_modes(const fock::MomentumGrid& grid,
                               const std::vector<int>& modes);

/// The tuple (k_{order[0]+1}, k_{order[1]+1}, ...): `order` is a
/// permutation of {0, ..., n-1}.
MomentumTuple permuted_tuple(const MomentumTuple& tuple,
                             const std::vector<std::size_t>& order);

/// The sub-tuple of positions whose bit is set in `mask`, in ascending
/// position order.
MomentumTuple subtuple(const MomentumTuple& tuple, unsigned mask);

}  // namespace wf
