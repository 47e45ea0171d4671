#include "wavefunctions/novel.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nelson/dressing.h"

namespace wf {

namespace {

double factorial(std::size_t n) {
  double r = 1.0;
  for (std::size_t m = 2; m <= n; ++m) r *= static_cast<double>(m);
  return r;
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::vector<std::array<double, 3>> dressing_g_table(const WfContext& ctx,
                                                    const MomentumTuple& tuple) {
  std::vector<std::array<double, 3>> g(tuple.n());
  for (std::size_t i = 0; i < tuple.n(); ++i) {
    g[i] = nelson::dressing_g_value(ctx.model->params(), ctx.gradE, tuple.k[i]);
  }
  return g;
}

}  // namespace

fock::FockVector compute_I_pattern(const WfContext& ctx,
                                   const recur::ContractionPattern& pattern,
                                   const MomentumTuple& tuple,
                                   const NovelMutations& mut) {
  const std::size_t n = tuple.n();
  if (pattern.convention != recur::PatternConvention::Upper) {
    throw std::invalid_argument("pattern must use the shifted index convention");
  }
  if (pattern.n != static_cast<int>(n)) {
    throw std::invalid_argument("pattern length does not match the tuple");
  }

  // Mark the high position of every contracted pair (index i covers the
  // pair (i-1, i) in this convention).
  std::vector<char> pair_high(n + 1, 0);
  for (int idx : pattern.indices) {
    if (idx < 2 || idx > static_cast<int>(n)) {
      throw std::invalid_argument("pattern index outside 2..n");
    }
    pair_high[static_cast<std::size_t>(idx)] = 1;
  }
  std::vector<std::size_t> free_pos;
  for (std::size_t pos = 1; pos <= n; ++pos) {
    if (!pair_high[pos] && !(pos + 1 <= n && pair_high[pos + 1])) {
      free_pos.push_back(pos);
    }
  }

  const auto g = dressing_g_table(ctx, tuple);
  const double half = mut.double_half_shift ? 1.0 : 0.5;

  // One solve chain per assignment of a vector component to each free
  // position (explicit expansion of the free slots).
  std::size_t combos = 1;
  for (std::size_t i = 0; i < free_pos.size(); ++i) combos *= 3;

  fock::FockVector acc(ctx.model->basis());
  for (std::size_t combo = 0; combo < combos; ++combo) {
    // Decode the base-3 counter into one component per free position.
    std::vector<int> comp(n + 1, -1);
    std::size_t rest = combo;
    for (std::size_t fp : free_pos) {
      comp[fp] = static_cast<int>(rest % 3);
      rest /= 3;
    }

    fock::FockVector v = ctx.gs->psi;
    double weight = 1.0;
    std::size_t pos = 1;
    while (pos <= n) {
      if (pos + 1 <= n && pair_high[pos + 1]) {
        // Contracted pair (pos, pos+1): scalar weight times the resolvent
        // at the longer prefix; position pos contributes no vertex.
        v = resolvent_apply_prefix(ctx, tuple, pos + 1, v);
        weight *= dot3(g[pos - 1], g[pos]);
        pos += 2;
      } else {
        // Free position: one component of the dressed vertex, then the
        // resolvent at this prefix.
        const int j = comp[pos];
        const double shift = tuple.prefix[pos - 1][static_cast<std::size_t>(j)] +
                             half * tuple.k[pos - 1][static_cast<std::size_t>(j)];
        weight *= g[pos - 1][static_cast<std::size_t>(j)];
        if (mut.flip_F_sign) weight = -weight;
        if (weight == 0.0) break;
        fock::FockVector w =
            nelson::apply_lambda_component(*ctx.model, ctx.gradE, j, v, shift);
        v = resolvent_apply_prefix(ctx, tuple, pos, w);
        pos += 1;
      }
    }
    if (weight == 0.0) continue;
    linalg::caxpy(fock::cplx{weight, 0.0}, v.coeffs.data(), acc.coeffs.data(),
                  acc.dim());
  }
  return acc;
}

fock::FockVector novel_dressed_vector(const WfContext& ctx,
                                      const MomentumTuple& tuple,
                                      const NovelMutations& mut) {
  const std::size_t n = tuple.n();
  if (n == 0) return ctx.gs->psi;

  fock::FockVector acc(ctx.model->basis());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  do {
    const MomentumTuple pt = permuted_tuple(tuple, order);
    for (int l = 0; l <= static_cast<int>(n) / 2; ++l) {
      double coeff = mut.flip_pattern_sign ? 1.0 : ((l % 2 == 0) ? 1.0 : -1.0);
      if (!mut.drop_half_factor) coeff /= std::pow(2.0, l);
      for (const auto& pattern : recur::enumerate_patterns(
               static_cast<int>(n), l, recur::PatternConvention::Upper)) {
        fock::FockVector term = compute_I_pattern(ctx, pattern, pt, mut);
        linalg::caxpy(fock::cplx{coeff, 0.0}, term.coeffs.data(),
                      acc.coeffs.data(), acc.dim());
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return acc;
}

fock::cplx wf_novel_dressed(const WfContext& ctx, const MomentumTuple& tuple,
                            const NovelMutations& mut) {
  return vacuum_overlap(novel_dressed_vector(ctx, tuple, mut));
}

fock::cplx wf_novel(const WfContext& ctx, const MomentumTuple& tuple,
                    const NovelMutations& mut) {
  const std::size_t n = tuple.n();
  if (n == 0) return vacuum_overlap(ctx.gs->psi);
  if (n >= 8 * sizeof(unsigned)) {
    throw std::invalid_argument("tuple too long for the subset expansion");
  }

  const auto& params = ctx.model->params();
  for (std::size_t i = 0; i < n; ++i) {
    if (nelson::form_factor_value(params, tuple.k[i]) == 0.0) {
      return fock::cplx{0.0, 0.0};  // every subset term carries f(k_i) or g(k_i)
    }
  }
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = nelson::dressing_f_value(params, ctx.gradE, tuple.k[i]);
  }

  const unsigned full = (1u << n) - 1u;
  fock::cplx total{0.0, 0.0};
  for (unsigned mask = 0u; mask <= full; ++mask) {
    double weight = 1.0;
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) {
        weight *= f[i];
        ++dropped;
      }
    }
    if (!mut.flip_conversion_sign && dropped % 2 == 1) weight = -weight;
    const MomentumTuple sub = subtuple(tuple, mask);
    total += weight * wf_novel_dressed(ctx, sub, mut);
  }
  return total / std::sqrt(factorial(n));
}

}  // namespace wf
