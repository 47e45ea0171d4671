#include "nelson/vanhove.h"

#include <cmath>
#include <stdexcept>

namespace nelson {

VanHoveSolution van_hove_solution(const NelsonModel& model) {
  if (model.quadratic_enabled()) {
    throw std::logic_error(
        "analytic displacement solution requires the quadratic term disabled");
  }
  const auto& grid = model.grid();
  const auto& v = model.form().v;

  VanHoveSolution sol;
  sol.amplitude.resize(grid.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double knorm = grid.modes[j].knorm();
    const double c = std::sqrt(grid.modes[j].w) * v[j];
    sol.amplitude[j] = -c / knorm;
    sol.energy -= c * c / knorm;
    sol.nu += sol.amplitude[j] * sol.amplitude[j];
  }

  const int n_max = model.basis().n_max();
  double partial = 0.0;   // sum_{m<=N} nu^m/m!
  double term = 1.0;      // nu^m/m!
  for (int m = 0; m <= n_max; ++m) {
    partial += term;
    if (m < n_max) term *= sol.nu / static_cast<double>(m + 1);
  }
  double weighted = 0.0;  // sum_j |k_j| alpha_j^2
  for (std::size_t j = 0; j < grid.size(); ++j) {
    weighted += grid.modes[j].knorm() * sol.amplitude[j] * sol.amplitude[j];
  }
  sol.truncation_bound = weighted * term / partial;  // term = nu^N/N! after the loop

  // Truncated coherent state: prod_j alpha_j^{n_j} / sqrt(n_j!), normalized.
  sol.coherent = fock::FockVector(model.basis());
  for (std::size_t s = 0; s < model.basis().dim(); ++s) {
    const auto& occ = model.basis().state(s);
    double amp = 1.0;
    for (std::size_t j = 0; j < occ.size(); ++j) {
      for (int q = 1; q <= occ[j]; ++q) {
        amp *= sol.amplitude[j] / std::sqrt(static_cast<double>(q));
      }
    }
    sol.coherent.coeffs[s] = amp;
  }
  sol.coherent *= 1.0 / fock::norm(sol.coherent);
  return sol;
}

}  // namespace nelson
