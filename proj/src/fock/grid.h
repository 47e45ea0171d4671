// Finite momentum grids: a list of (k, w) quadrature modes standing in
// for integrals over a ball shell sigma <= |k| < kappa.  Two
// constructors are provided: a fixed-count geometric shell grid, and a
// "ladder" grid whose shell boundaries come from one fixed dyadic ladder
// clamped at sigma, so that lowering sigma only adds infrared shells and
// never moves the ultraviolet ones (smooth parameter sweeps).

#pragma once

#include <array>
#include <string>
#include <vector>

namespace fock {

/// One quadrature mode: a momentum in R^3 and a positive weight.
struct Mode {
  std::array<double, 3> k{0.0, 0.0, 0.0};
  double w = 0.0;

  double knorm() const;
};

struct MomentumGrid {
  std::vector<Mode> modes;

  std::size_t size() const { return modes.size(); }
};

/// Throws std::invalid_argument unless all |k| > 0, all weights are
/// positive, and modes are pairwise distinct.
void validate_grid(const MomentumGrid& grid);

/// Geometric shell grid: `shells` radial shells with geometric
/// boundaries between sigma and kappa, six octahedron directions per
/// shell (+-x, +-y, +-z), representative radius the geometric mean of
/// the shell boundaries, and weight one sixth of the shell volume.
MomentumGrid make_shell_grid(double sigma, double kappa, int shells);

/// Thin-shell collocation grid: same shell radii and directions as
/// make_shell_grid, but each shell carries the volume of a thin layer of
/// the given radial thickness (4 pi r^2 thickness), split over the six
/// directions.  Keeping the sampled couplings weak while the mode
/// positions stay fixed makes the truncated sectors decay fast, which is
/// what cross-route comparisons at small N_max need.
MomentumGrid make_thin_shell_grid(double sigma, double kappa, int shells,
                                  double thickness);

/// Ladder grid: shell boundaries kappa * 2^{-t/s} with s =
/// shells_per_octave, t = 0, 1, ..., descending until they pass sigma
/// (the last boundary is clamped to sigma); six octahedron directions
/// per shell as above.  Grids for two values of sigma share all shells
/// above the larger sigma.
MomentumGrid make_ladder_grid(double sigma, double kappa,
                              int shells_per_octave = 2);

/// Ladder radii with thin-shell collocation weights: each shell carries
/// 4 pi r^2 (fraction * r) instead of its full dyadic volume, split over
/// the six directions.  The per-mode couplings then scale with
/// sqrt(fraction), keeping every photon-number sector perturbative at
/// any infrared depth — full dyadic volumes put an O(1) coupling on
/// every shell, and a finite photon cap saturates once the shell count
/// (and with it the true occupancy) grows.
MomentumGrid make_thin_ladder_grid(double sigma, double kappa,
                                   double fraction,
                                   int shells_per_octave = 2);

/// Plain-text I/O, one mode per line: "kx ky kz w".  The reader skips
/// blank lines and lines starting with '#'.
MomentumGrid load_grid(const std::string& path);
void save_grid(const MomentumGrid& grid, const std::string& path);

}  // namespace fock
