#include "wavefunctions/bounds.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wf {

double gbound(const nelson::NelsonParams& params, const MomentumTuple& tuple,
              double c) {
  const double ks = nelson::kappa_star(params);
  double prod = 1.0;
  for (const auto& k : tuple.k) {
    const double r = nelson::pnorm(k);
    if (r < params.sigma) return 0.0;
    const double chi = nelson::chi_kappa(r, ks, params.eps0);
    if (chi == 0.0) return 0.0;
    prod *= c * params.lambda * chi * std::pow(r, params.alpha_bar) /
            std::pow(r, 1.5);
  }
  return prod;
}

double permutation_inverse_sum(const std::vector<double>& magnitudes) {
  for (double m : magnitudes) {
    if (!(m > 0.0)) {
      throw std::invalid_argument("magnitudes must be strictly positive");
    }
  }
  std::vector<std::size_t> order(magnitudes.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end());
  double total = 0.0;
  do {
    double prod = 1.0;
    double prefix = 0.0;
    for (std::size_t i : order) {
      prefix += magnitudes[i];
      prod /= prefix;
    }
    total += prod;
  } while (std::next_permutation(order.begin(), order.end()));
  return total;
}

}  // namespace wf
