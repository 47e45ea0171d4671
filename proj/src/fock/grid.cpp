#include "fock/grid.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fock {
namespace {

// The six octahedron vertex directions.
constexpr std::array<std::array<double, 3>, 6> kDirections = {{
    {1.0, 0.0, 0.0},
    {-1.0, 0.0, 0.0},
    {0.0, 1.0, 0.0},
    {0.0, -1.0, 0.0},
    {0.0, 0.0, 1.0},
    {0.0, 0.0, -1.0},
}};

// Appends one shell [r_lo, r_hi): six modes at the geometric-mean radius
// sharing the shell volume equally.
void append_shell(MomentumGrid& grid, double r_lo, double r_hi) {
  const double radius = std::sqrt(r_lo * r_hi);
  const double volume =
      4.0 * std::numbers::pi / 3.0 * (r_hi * r_hi * r_hi - r_lo * r_lo * r_lo);
  for (const auto& d : kDirections) {
    Mode m;
    for (int c = 0; c < 3; ++c) m.k[static_cast<std::size_t>(c)] = radius * d[static_cast<std::size_t>(c)];
    m.w = volume / 6.0;
    grid.modes.push_back(m);
  }
}

}  // namespace

double Mode::knorm() const {
  return std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
}

void validate_grid(const MomentumGrid& grid) {
  if (grid.modes.empty())
    throw std::invalid_argument("grid: no modes");
  for (const Mode& m : grid.modes) {
    if (!(m.knorm() > 0.0))
      throw std::invalid_argument("grid: mode with |k| = 0");
    if (!(m.w > 0.0)) throw std::invalid_argument("grid: non-positive weight");
  }
  for (std::size_t i = 0; i < grid.modes.size(); ++i)
    for (std::size_t j = i + 1; j < grid.modes.size(); ++j)
      if (grid.modes[i].k == grid.modes[j].k)
        throw std::invalid_argument("grid: duplicate mode");
}

MomentumGrid make_shell_grid(double sigma, double kappa, int shells) {
  if (!(0.0 < sigma && sigma < kappa) || shells < 1)
    throw std::invalid_argument("make_shell_grid: need 0 < sigma < kappa, shells >= 1");
  MomentumGrid grid;
  const double ratio = kappa / sigma;
  for (int t = 0; t < shells; ++t) {
    const double r_lo = sigma * std::pow(ratio, static_cast<double>(t) / shells);
    const double r_hi =
        sigma * std::pow(ratio, static_cast<double>(t + 1) / shells);
    append_shell(grid, r_lo, r_hi);
  }
  validate_grid(grid);
  return grid;
}

MomentumGrid make_thin_shell_grid(double sigma, double kappa, int shells,
                                  double thickness) {
  if (!(0.0 < sigma && sigma < kappa) || shells < 1 || !(thickness > 0.0))
    throw std::invalid_argument(
        "make_thin_shell_grid: need 0 < sigma < kappa, shells >= 1, "
        "thickness > 0");
  MomentumGrid grid;
  const double ratio = kappa / sigma;
  for (int t = 0; t < shells; ++t) {
    const double r_lo = sigma * std::pow(ratio, static_cast<double>(t) / shells);
    const double r_hi =
        sigma * std::pow(ratio, static_cast<double>(t + 1) / shells);
    const double radius = std::sqrt(r_lo * r_hi);
    const double volume =
        4.0 * std::numbers::pi * radius * radius * thickness;
    for (const auto& d : kDirections) {
      Mode m;
      for (int c = 0; c < 3; ++c)
        m.k[static_cast<std::size_t>(c)] = radius * d[static_cast<std::size_t>(c)];
      m.w = volume / 6.0;
      grid.modes.push_back(m);
    }
  }
  validate_grid(grid);
  return grid;
}

MomentumGrid make_ladder_grid(double sigma, double kappa,
                              int shells_per_octave) {
  if (!(0.0 < sigma && sigma < kappa))
    throw std::invalid_argument("make_ladder_grid: need 0 < sigma < kappa");
  if (shells_per_octave < 1)
    throw std::invalid_argument("make_ladder_grid: need shells_per_octave >= 1");
  // Fixed boundaries kappa * 2^{-t/s}; the part below sigma is clamped.
  std::vector<double> bounds{kappa};
  for (int t = 1;; ++t) {
    const double b = kappa * std::pow(2.0, -static_cast<double>(t) /
                                               shells_per_octave);
    if (b <= sigma * (1.0 + 1e-12)) {
      bounds.push_back(sigma);
      break;
    }
    bounds.push_back(b);
  }
  MomentumGrid grid;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
    append_shell(grid, bounds[i + 1], bounds[i]);
  validate_grid(grid);
  return grid;
}

MomentumGrid make_thin_ladder_grid(double sigma, double kappa,
                                   double fraction, int shells_per_octave) {
  if (!(fraction > 0.0))
    throw std::invalid_argument("make_thin_ladder_grid: need fraction > 0");
  MomentumGrid grid = make_ladder_grid(sigma, kappa, shells_per_octave);
  for (Mode& m : grid.modes) {
    const double r = m.knorm();
    m.w = 4.0 * std::numbers::pi * r * r * (fraction * r) / 6.0;
  }
  validate_grid(grid);
  return grid;
}

MomentumGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("load_grid: cannot open " + path);
  MomentumGrid grid;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Mode m;
    if (!(ls >> m.k[0] >> m.k[1] >> m.k[2] >> m.w))
      throw std::runtime_error("load_grid: malformed line: " + line);
    grid.modes.push_back(m);
  }
  validate_grid(grid);
  return grid;
}

void save_grid(const MomentumGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out.good()) throw std::runtime_error("save_grid: cannot open " + path);
  char buf[160];
  for (const Mode& m : grid.modes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", m.k[0], m.k[1],
                  m.k[2], m.w);
    out << buf;
  }
}

}  // namespace fock
