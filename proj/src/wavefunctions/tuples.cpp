#include "wavefunctions/tuples.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wf {

namespace {

double mag3(const std::array<double, 3>& k) {
  return std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
}

}  // namespace

MomentumTuple make_tuple(std::vector<std::array<double, 3>> momenta) {
  MomentumTuple t;
  t.k = std::move(momenta);
  const std::size_t n = t.k.size();
  t.prefix.assign(n + 1, {0.0, 0.0, 0.0});
  t.prefix_mag.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = mag3(t.k[i]);
    if (!(m > 0.0)) {
      throw std::invalid_argument("momentum tuple entry " + std::to_string(i + 1) +
                                  " has |k| = 0");
    }
    for (std::size_t c = 0; c < 3; ++c) {
      t.prefix[i + 1][c] = t.prefix[i][c] + t.k[i][c];
    }
    t.prefix_mag[i + 1] = t.prefix_mag[i] + m;
  }
  return t;
}

MomentumTuple tuple_from_modes(const fock::MomentumGrid& grid,
                               const std::vector<int>& modes) {
  std::vector<std::array<double, 3>> momenta;
  momenta.reserve(modes.size());
  for (int j : modes) {
    if (j < 0 || static_cast<std::size_t>(j) >= grid.size()) {
      throw std::out_of_range("mode index " + std::to_string(j) +
                              " outside the grid");
    }
    momenta.push_back(grid.modes[static_cast<std::size_t>(j)].k);
  }
  return make_tuple(std::move(momenta));
}

MomentumTuple permuted_tuple(const MomentumTuple& tuple,
                             const std::vector<std::size_t>& order) {
  if (order.size() != tuple.n()) {
    throw std::invalid_argument("permutation length does not match tuple size");
  }
  std::vector<std::array<double, 3>> momenta;
  momenta.reserve(order.size());
  for (std::size_t i : order) momenta.push_back(tuple.k.at(i));
  return make_tuple(std::move(momenta));
}

MomentumTuple subtuple(const MomentumTuple& tuple, unsigned mask) {
  std::vector<std::array<double, 3>> momenta;
  for (std::size_t i = 0; i < tuple.n(); ++i) {
    if (mask & (1u << i)) momenta.push_back(tuple.k[i]);
  }
  return make_tuple(std::move(momenta));
}

}  // namespace wf
