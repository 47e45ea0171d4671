// Tests for the truncated Fock space: basis enumeration and dimensions,
// ladder/field operators with occupation-sum oracles, the exact CCR
// check, grids, symmetrization, and the order-r sum representation
// against its brute-force symmetrized definition.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "fock/basis.h"
#include "fock/grid.h"
#include "fock/operators.h"
#include "fock/table.h"
#include "fock/vector.h"

using fock::cplx;
using fock::FockBasis;
using fock::FockVector;
using fock::ModeTable;

namespace {

FockVector random_state(const FockBasis& basis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FockVector v(basis);
  for (auto& c : v.coeffs) c = {u(rng), u(rng)};
  return v;
}

fock::MomentumGrid tiny_grid(int modes) {
  // Distinct radii/directions along coordinate axes; |k| in (0.2, 1].
  fock::MomentumGrid g;
  for (int j = 0; j < modes; ++j) {
    fock::Mode m;
    m.k = {0.0, 0.0, 0.0};
    m.k[static_cast<std::size_t>(j % 3)] = 0.2 + 0.8 * (j + 1) / modes;
    m.w = 0.1 + 0.05 * j;
    g.modes.push_back(m);
  }
  fock::validate_grid(g);
  return g;
}

}  // namespace

TEST_CASE("fock dimensions match the closed-form count") {
  CHECK(fock::fock_dimension(3, 3) == 20);   // 1 + 3 + 6 + 10
  CHECK(fock::fock_dimension(12, 4) == 1820);
  CHECK(fock::fock_dimension(12, 5) == 6188);
  CHECK(fock::fock_dimension(1, 7) == 8);
  const FockBasis basis(3, 3);
  CHECK(basis.dim() == 20);
  CHECK_THROWS_AS(fock::fock_dimension(0, 3), std::invalid_argument);
}

TEST_CASE("basis ordering is graded then ascending lexicographic") {
  const FockBasis basis(3, 2);
  // Grade 0: (0,0,0); grade 1: (0,0,1) (0,1,0) (1,0,0);
  // grade 2: (0,0,2) (0,1,1) (0,2,0) (1,0,1) (1,1,0) (2,0,0).
  REQUIRE(basis.dim() == 10);
  CHECK(basis.state(0) == std::vector<int>{0, 0, 0});
  CHECK(basis.state(1) == std::vector<int>{0, 0, 1});
  CHECK(basis.state(3) == std::vector<int>{1, 0, 0});
  CHECK(basis.state(4) == std::vector<int>{0, 0, 2});
  CHECK(basis.state(9) == std::vector<int>{2, 0, 0});
  CHECK(basis.sector_begin(2) == 4);
  CHECK(basis.sector_end(2) == 10);

  for (std::size_t i = 0; i < basis.dim(); ++i)
    CHECK(basis.index_of(basis.state(i)) == i);
  CHECK_THROWS_AS(basis.index_of({3, 0, 0}), std::out_of_range);

  // Grades are contiguous and monotone.
  for (std::size_t i = 0; i + 1 < basis.dim(); ++i)
    CHECK(basis.total(i) <= basis.total(i + 1));
}

TEST_CASE("ladder operators: lowering examples and adjointness") {
  const FockBasis basis(3, 3);
  const fock::LadderOperators ops(basis);

  // b_0 on vacuum is the zero vector.
  const FockVector vac = fock::vacuum(basis);
  CHECK(fock::norm(ops.annihilate(0, vac)) == 0.0);

  // b_0 on the one-photon state (1,0,0) is the vacuum.
  FockVector one(basis);
  one.coeffs[basis.index_of({1, 0, 0})] = 1.0;
  const FockVector lowered = ops.annihilate(0, one);
  CHECK(std::abs(lowered.coeffs[0] - cplx{1.0, 0.0}) == 0.0);
  CHECK(fock::norm(lowered) == doctest::Approx(1.0));

  // <u, b*_j v> == <b_j u, v> for random states.
  const FockVector u = random_state(basis, 5);
  const FockVector v = random_state(basis, 6);
  for (int j = 0; j < 3; ++j) {
    const cplx lhs = fock::dot(u, ops.create(j, v));
    const cplx rhs = fock::dot(ops.annihilate(j, u), v);
    CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("photon-number expectation matches the occupation-weighted sum") {
  const FockBasis basis(3, 3);
  const fock::LadderOperators ops(basis);
  const FockVector v = random_state(basis, 17);

  cplx total{0.0, 0.0};
  for (int j = 0; j < basis.modes(); ++j) {
    const FockVector bv = ops.annihilate(j, v);
    total += fock::dot(bv, bv);  // <v, b*_j b_j v>
  }
  double expect = 0.0;
  for (std::size_t s = 0; s < basis.dim(); ++s)
    expect += static_cast<double>(basis.total(s)) * std::norm(v.coeffs[s]);
  CHECK(total.real() == doctest::Approx(expect).epsilon(1e-13));
  CHECK(std::abs(total.imag()) <= 1e-13 * std::max(1.0, expect));
}

TEST_CASE("CCR holds exactly on sectors below the truncation boundary") {
  const FockBasis basis(3, 3);
  const fock::LadderOperators ops(basis);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(fock::ccr_defect(ops, i, j) == 0.0);
}

TEST_CASE("field operators are the expected diagonals") {
  const auto grid = tiny_grid(3);
  const FockBasis basis(3, 3);
  const fock::FieldDiagonals diags(basis, grid);

  const FockVector vac = fock::vacuum(basis);
  CHECK(fock::norm(fock::apply_hf(diags, vac)) == 0.0);
  for (int c = 0; c < 3; ++c)
    CHECK(fock::norm(fock::apply_pf(diags, c, vac)) == 0.0);

  // A state with two quanta in one mode has H_f eigenvalue 2|k|.
  FockVector two(basis);
  const std::size_t idx = basis.index_of({2, 0, 0});
  two.coeffs[idx] = 1.0;
  const double k0 = grid.modes[0].knorm();
  const FockVector hf_two = fock::apply_hf(diags, two);
  CHECK(hf_two.coeffs[idx].real() == doctest::Approx(2.0 * k0));

  // Random state: <H_f> equals the explicit occupation-weighted sum.
  const FockVector v = random_state(basis, 23);
  const cplx hf_expect = fock::dot(v, fock::apply_hf(diags, v));
  double oracle = 0.0;
  for (std::size_t s = 0; s < basis.dim(); ++s) {
    double e = 0.0;
    for (int j = 0; j < 3; ++j)
      e += basis.state(s)[static_cast<std::size_t>(j)] *
           grid.modes[static_cast<std::size_t>(j)].knorm();
    oracle += e * std::norm(v.coeffs[s]);
  }
  CHECK(hf_expect.real() == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("shell and ladder grids: geometry, weights, io round-trip") {
  const double sigma = 0.05, kappa = 1.0;
  const auto shell = fock::make_shell_grid(sigma, kappa, 4);
  CHECK(shell.size() == 24);
  double wsum = 0.0;
  for (const auto& m : shell.modes) {
    CHECK(m.knorm() >= sigma);
    CHECK(m.knorm() <= kappa);
    wsum += m.w;
  }
  const double ball = 4.0 * 3.14159265358979323846 / 3.0 *
                      (kappa * kappa * kappa - sigma * sigma * sigma);
  CHECK(wsum == doctest::Approx(ball).epsilon(1e-12));

  // Ladder grids for two sigmas share every shell above the larger one.
  const auto ladder_hi = fock::make_ladder_grid(0.25, kappa);
  const auto ladder_lo = fock::make_ladder_grid(0.05, kappa);
  REQUIRE(ladder_lo.size() > ladder_hi.size());
  std::size_t shared = 0;
  for (std::size_t i = 0; i < ladder_hi.size(); ++i) {
    // Shells above 0.25 * sqrt(2) are unclamped in both grids.
    if (ladder_hi.modes[i].knorm() > 0.25 * 1.4142136) {
      CHECK(ladder_lo.modes[i].k == ladder_hi.modes[i].k);
      CHECK(ladder_lo.modes[i].w == ladder_hi.modes[i].w);
      ++shared;
    }
  }
  CHECK(shared >= 6);

  const std::string path = "/tmp/test_grid_io.txt";
  fock::save_grid(shell, path);
  const auto reloaded = fock::load_grid(path);
  REQUIRE(reloaded.size() == shell.size());
  for (std::size_t i = 0; i < shell.size(); ++i) {
    CHECK(reloaded.modes[i].k == shell.modes[i].k);
    CHECK(reloaded.modes[i].w == shell.modes[i].w);
  }
  std::remove(path.c_str());

  CHECK_THROWS_AS(fock::make_shell_grid(1.0, 0.5, 3), std::invalid_argument);
}

TEST_CASE("thin collocation grids: radii match, weights are thin layers") {
  const double sigma = 0.05, kappa = 1.0, thick = 0.0025;
  const auto shell = fock::make_shell_grid(sigma, kappa, 2);
  const auto thin = fock::make_thin_shell_grid(sigma, kappa, 2, thick);
  REQUIRE(thin.size() == shell.size());
  const double pi = 3.14159265358979323846;
  for (std::size_t i = 0; i < thin.size(); ++i) {
    CHECK(thin.modes[i].k == shell.modes[i].k);
    const double r = thin.modes[i].knorm();
    CHECK(thin.modes[i].w ==
          doctest::Approx(4.0 * pi * r * r * thick / 6.0).epsilon(1e-12));
  }

  const auto ladder = fock::make_ladder_grid(sigma, kappa);
  const double frac = 0.02;
  const auto thin_ladder = fock::make_thin_ladder_grid(sigma, kappa, frac);
  REQUIRE(thin_ladder.size() == ladder.size());
  for (std::size_t i = 0; i < thin_ladder.size(); ++i) {
    CHECK(thin_ladder.modes[i].k == ladder.modes[i].k);
    const double r = thin_ladder.modes[i].knorm();
    CHECK(thin_ladder.modes[i].w ==
          doctest::Approx(4.0 * pi * r * r * frac * r / 6.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(fock::make_thin_shell_grid(sigma, kappa, 2, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(fock::make_thin_ladder_grid(sigma, kappa, -0.1),
                  std::invalid_argument);
}

TEST_CASE("symmetrize: averaging, idempotence, consecutive-group lemma") {
  const int modes = 3;

  // n=2 scalar table f(k1,k2) = k1 . e: symmetrization gives the mean.
  const auto grid = tiny_grid(modes);
  const std::array<double, 3> e = {0.3, -1.1, 0.7};
  ModeTable<cplx> f(2, modes);
  std::vector<int> t(2);
  for (t[0] = 0; t[0] < modes; ++t[0])
    for (t[1] = 0; t[1] < modes; ++t[1]) {
      const auto& k = grid.modes[static_cast<std::size_t>(t[0])].k;
      f.at(t) = k[0] * e[0] + k[1] * e[1] + k[2] * e[2];
    }
  const auto fs = fock::symmetrize(f);
  for (t[0] = 0; t[0] < modes; ++t[0])
    for (t[1] = 0; t[1] < modes; ++t[1]) {
      const auto& k1 = grid.modes[static_cast<std::size_t>(t[0])].k;
      const auto& k2 = grid.modes[static_cast<std::size_t>(t[1])].k;
      double expect = 0.0;
      for (int c = 0; c < 3; ++c)
        expect += 0.5 * (k1[static_cast<std::size_t>(c)] + k2[static_cast<std::size_t>(c)]) *
                  e[static_cast<std::size_t>(c)];
      CHECK(fs.at(t).real() == doctest::Approx(expect).epsilon(1e-14));
    }

  // Idempotence on random 3-argument tables, exact to 1e-14.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ModeTable<cplx> g(3, modes);
  for (auto& val : g.values) val = {u(rng), u(rng)};
  const auto g1 = fock::symmetrize(g);
  const auto g2 = fock::symmetrize(g1);
  for (std::size_t i = 0; i < g1.values.size(); ++i)
    CHECK(std::abs(g2.values[i] - g1.values[i]) <= 1e-14);

  // Symmetrizing two consecutive arguments first, then everything,
  // equals symmetrizing everything (consecutive-group property).
  ModeTable<cplx> partial(3, modes);
  std::vector<int> s(3), swapped(3);
  fock::detail::for_each_tuple(3, modes, s, [&](const std::vector<int>& tup) {
    swapped = tup;
    std::swap(swapped[1], swapped[2]);
    partial.at(tup) = 0.5 * (g.at(tup) + g.at(swapped));
  });
  const auto full_after_partial = fock::symmetrize(partial);
  for (std::size_t i = 0; i < g1.values.size(); ++i)
    CHECK(std::abs(full_after_partial.values[i] - g1.values[i]) <= 1e-14);
}

TEST_CASE("order-r application: worked examples") {
  const int modes = 3;
  const FockBasis basis(modes, 2);
  const FockVector vac = fock::vacuum(basis);

  // r=1, kernel identity on the vector: every m=2 entry is the vacuum.
  fock::OrderROperator<FockVector> unit;
  unit.r = 1;
  unit.kernel = [](const std::vector<int>&, const std::vector<int>&,
                   const FockVector& v) { return v; };
  ModeTable<FockVector> x1(1, modes);
  for (auto& v : x1.values) v = vac;
  const auto y1 = fock::apply_order_r(unit, x1);
  CHECK(y1.arity == 2);
  for (const auto& v : y1.values) {
    CHECK(fock::norm(v - vac) <= 1e-15);
  }

  // r=2, kernel g(k_i) g(k_i') on an arity-0 table: single term,
  // prefactor 1, product of the two mode factors.
  const std::array<double, 3> gval = {0.5, -1.25, 2.0};
  fock::OrderROperator<FockVector> pairop;
  pairop.r = 2;
  pairop.kernel = [&gval](const std::vector<int>&, const std::vector<int>& extra,
                          const FockVector& v) {
    return gval[static_cast<std::size_t>(extra[0])] *
           (gval[static_cast<std::size_t>(extra[1])] * v);
  };
  ModeTable<FockVector> x0(0, modes);
  x0.values[0] = vac;
  const auto y2 = fock::apply_order_r(pairop, x0);
  std::vector<int> t(2);
  for (t[0] = 0; t[0] < modes; ++t[0])
    for (t[1] = 0; t[1] < modes; ++t[1]) {
      const double expect = gval[static_cast<std::size_t>(t[0])] *
                            gval[static_cast<std::size_t>(t[1])];
      CHECK(y2.at(t).coeffs[0].real() == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("order-r sum representation equals the symmetrized definition") {
  const int modes = 3;
  const FockBasis basis(modes, 2);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  // Group-symmetric scalar kernels: product over extra args times a
  // symmetric function of the pass tuple.
  std::vector<double> phi(static_cast<std::size_t>(modes));
  for (auto& p : phi) p = u(rng);

  for (int r : {1, 2}) {
    for (int m = std::max(r, 1); m <= 4; ++m) {
      if (m - r < 0) continue;
      fock::OrderROperator<FockVector> op;
      op.r = r;
      op.kernel = [&phi](const std::vector<int>& pass, const std::vector<int>& extra,
                         const FockVector& v) {
        double c = 1.0;
        for (int e : extra) c *= phi[static_cast<std::size_t>(e)];
        double s = 1.0;
        for (int p : pass) s += 0.3 * phi[static_cast<std::size_t>(p)];
        return (c * s) * v;
      };

      // Random symmetric input table of FockVectors.
      ModeTable<FockVector> x(m - r, modes);
      for (auto& v : x.values) {
        v = FockVector(basis);
        for (auto& c : v.coeffs) c = {u(rng), u(rng)};
      }
      const auto xs = fock::symmetrize(x);

      const auto via_sum = fock::apply_order_r(op, xs);
      const auto via_def = fock::apply_order_r_definition(op, xs);
      REQUIRE(via_sum.values.size() == via_def.values.size());
      for (std::size_t i = 0; i < via_sum.values.size(); ++i)
        CHECK(fock::norm(via_sum.values[i] - via_def.values[i]) <= 1e-12);
    }
  }
}
