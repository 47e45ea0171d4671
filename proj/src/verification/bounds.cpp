#include "verification/bounds.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nelson/dressing.h"
#include "nelson/resolvent.h"
#include "wavefunctions/bounds.h"
#include "wavefunctions/routes.h"

namespace verif {

namespace {

double frob(const std::vector<fock::FockVector>& vs) {
  double s = 0.0;
  for (const auto& v : vs) {
    const double n = fock::norm(v);
    s += n * n;
  }
  return std::sqrt(s);
}

// (Lambda + shift)^j applied per component, one vector each.
std::vector<fock::FockVector> lambda_components(
    const nelson::NelsonModel& model, const std::array<double, 3>& gradE,
    const fock::FockVector& v, const std::array<double, 3>& shift) {
  std::vector<fock::FockVector> out;
  out.reserve(3);
  for (int j = 0; j < 3; ++j)
    out.push_back(nelson::apply_lambda_component(
        model, gradE, j, v, shift[static_cast<std::size_t>(j)]));
  return out;
}

struct ChainStage {
  std::array<double, 3> q{0.0, 0.0, 0.0};      // prefix momentum
  double s = 0.0;                               // prefix magnitude sum
  std::array<double, 3> lshift{0.0, 0.0, 0.0};  // Lambda_i shift
};

ChainStage stage_at(const wf::MomentumTuple& t, std::size_t i) {
  ChainStage st;
  st.q = t.prefix[i];
  st.s = t.prefix_mag[i];
  for (std::size_t c = 0; c < 3; ++c)
    st.lshift[c] = t.prefix[i - 1][c] + 0.5 * t.k[i - 1][c];
  return st;
}

// One chain hop: solve at the stage after applying its Lambda component,
// expanding each input vector into three outputs.  `deflate` projects the
// ground component out before the solve (the Qperp insertion).
std::vector<fock::FockVector> chain_hop(
    const nelson::ResolventContext& rc, const std::array<double, 3>& gradE,
    const ChainStage& st, const std::vector<fock::FockVector>& in,
    bool deflate, double tol) {
  nelson::ResolventSpec spec;
  spec.shift_momentum = st.q;
  spec.energy_offset = st.s;
  std::vector<fock::FockVector> out;
  out.reserve(in.size() * 3);
  for (const auto& v : in)
    for (int j = 0; j < 3; ++j) {
      fock::FockVector w = nelson::apply_lambda_component(
          rc.model(), gradE, j, v, st.lshift[static_cast<std::size_t>(j)]);
      if (deflate) w = nelson::project_out_ground(rc.ground(), w);
      out.push_back(rc.solve(spec, w, tol));
    }
  return out;
}

}  // namespace

ResolventBoundsReport check_resolvent_bounds(
    const nelson::NelsonModel& model, const nelson::GroundStateResult& gs,
    const std::array<double, 3>& gradE, const ResolventBoundsOptions& opt) {
  ResolventBoundsReport rep;
  rep.sigma = model.params().sigma;
  rep.fingerprint = model_fingerprint(model);

  const nelson::ResolventContext rc(model, gs);
  const auto u = rc.psi_gradient(gradE, opt.cg_tol);  // R Lambda^j psi
  const std::vector<fock::FockVector> rl{u[0], u[1], u[2]};
  const double r_lambda_psi = frob(rl);

  {
    const auto lp = lambda_components(model, gradE, gs.psi,
                                      {0.0, 0.0, 0.0});
    rep.q_lambda_norm = frob(lp);
    double s = 0.0;
    for (const auto& v : lp) {
      const fock::cplx d = fock::dot(gs.psi, v);
      s += std::norm(d);
    }
    rep.lambda_expect = std::sqrt(s);
  }

  for (const auto& modes : opt.tuples) {
    if (modes.empty())
      throw std::invalid_argument("resolvent bounds: empty tuple");
    const wf::MomentumTuple t = wf::tuple_from_modes(model.grid(), modes);
    const std::size_t n = t.n();
    const std::size_t np = (n > 1) ? n - 1 : 1;  // the i' index

    ResolventBoundRow row;
    row.modes = modes;
    row.r_lambda_psi = r_lambda_psi;

    const ChainStage top = stage_at(t, n);
    const ChainStage mid = stage_at(t, np);
    const ChainStage first = stage_at(t, 1);

    // ||R_n||: inverse distance from E - s_n to the shifted spectrum.
    {
      const nelson::NelsonModel shifted = model.shifted(top.q);
      const nelson::GroundStateResult sgs =
          nelson::ground_state(shifted, opt.shifted_gs_tol, 900);
      const double bottom = sgs.E - gs.E + top.s;
      if (!(bottom > 0.0))
        throw std::runtime_error(
            "resolvent bounds: shifted operator is not positive");
      row.norm_Ri = 1.0 / bottom;
      row.implied_Ri = row.norm_Ri * top.s;
    }

    nelson::ResolventSpec top_spec;
    top_spec.shift_momentum = top.q;
    top_spec.energy_offset = top.s;
    nelson::ResolventSpec mid_spec;
    mid_spec.shift_momentum = mid.q;
    mid_spec.energy_offset = mid.s;

    // R_n Lambda_n psi.
    row.ri_li_psi =
        frob(chain_hop(rc, gradE, top, {gs.psi}, false, opt.cg_tol));

    // R_n Qperp Lambda_n R Lambda psi.
    row.ri_q_li_r = frob(chain_hop(rc, gradE, top, rl, true, opt.cg_tol));

    // R_n Qperp Lambda_n R_{n'} Lambda_{n'} psi.
    {
      const auto inner =
          chain_hop(rc, gradE, mid, {gs.psi}, false, opt.cg_tol);
      row.ri_q_li_rip =
          frob(chain_hop(rc, gradE, top, inner, true, opt.cg_tol));
    }

    // R_n Lambda_n R_{n'} psi  (plain resolvent inside, no Lambda).
    {
      const fock::FockVector inner = rc.solve(mid_spec, gs.psi, opt.cg_tol);
      row.ri_li_rip =
          frob(chain_hop(rc, gradE, top, {inner}, false, opt.cg_tol));
      row.implied_ri_li_rip = row.ri_li_rip * mid.s;
    }

    // R_n Lambda_n R_{n'} Lambda_{n'} R_1 Lambda_1 psi.
    {
      auto c1 = chain_hop(rc, gradE, first, {gs.psi}, false, opt.cg_tol);
      auto c2 = chain_hop(rc, gradE, mid, c1, false, opt.cg_tol);
      row.triple = frob(chain_hop(rc, gradE, top, c2, false, opt.cg_tol));
      row.implied_triple = row.triple * mid.s;
    }

    // R_n Lambda_n R_{n'} Lambda_{n'} R Lambda psi.
    {
      auto c2 = chain_hop(rc, gradE, mid, rl, false, opt.cg_tol);
      row.triple_r = frob(chain_hop(rc, gradE, top, c2, false, opt.cg_tol));
      row.implied_triple_r = row.triple_r * mid.s;
    }

    rep.rows.push_back(std::move(row));
  }
  return rep;
}

BoundRatioReport check_bound_ratios(const wf::WfContext& ctx,
                                    const BoundRatioOptions& opt) {
  const auto& params = ctx.model->params();
  BoundRatioReport rep;
  rep.fingerprint = model_fingerprint(*ctx.model);

  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  // Radii strictly inside the coupling plateau, far enough from both the
  // infrared cutoff and the roll-off that no finite-difference stencil
  // crosses a kink.
  const double r_lo = std::max(3.0 * params.sigma, 0.08);
  const double r_hi = 0.85 * (1.0 - params.eps0) * params.kappa;
  if (!(r_lo < r_hi))
    throw std::invalid_argument("bound ratios: no plateau window");
  std::uniform_real_distribution<double> logr(std::log(r_lo), std::log(r_hi));

  auto random_k = [&]() {
    std::array<double, 3> d{};
    double nn = 0.0;
    do {
      for (auto& c : d) c = unit(rng);
      nn = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    } while (nn < 0.1);
    const double r = std::exp(logr(rng));
    for (auto& c : d) c *= r / nn;
    return d;
  };

  const double h = opt.fd_step;
  double factn = 1.0;
  for (int n = 1; n <= opt.n_max; ++n) {
    factn *= n;
    const double root_factn = std::sqrt(factn);
    for (int s = 0; s < opt.tuples_per_n; ++s) {
      std::vector<std::array<double, 3>> ks;
      for (int i = 0; i < n; ++i) ks.push_back(random_k());

      // phi(k) = f^n with the first argument replaced.
      auto phi = [&](const std::array<double, 3>& k1) {
        auto pts = ks;
        pts[0] = k1;
        return wf::wf_froehlich(ctx, wf::make_tuple(pts));
      };
      auto shifted = [&](int c1, double s1, int c2, double s2) {
        std::array<double, 3> k = ks[0];
        k[static_cast<std::size_t>(c1)] += s1;
        if (c2 >= 0) k[static_cast<std::size_t>(c2)] += s2;
        return k;
      };

      const double kmag = std::sqrt(ks[0][0] * ks[0][0] + ks[0][1] * ks[0][1] +
                                    ks[0][2] * ks[0][2]);
      const double env = wf::gbound(params, wf::make_tuple(ks), 1.0);

      auto push = [&](int order, const std::string& beta, double deriv_abs,
                      bool aggregate) {
        RatioSample sample;
        sample.n = n;
        sample.beta_order = order;
        sample.beta = beta;
        sample.ks = ks;
        sample.value = deriv_abs;
        sample.ratio = deriv_abs * root_factn * std::pow(kmag, order) / env;
        sample.aggregate = aggregate;
        const double r = sample.ratio;
        rep.samples.push_back(std::move(sample));
        if (!aggregate) return;
        const std::string key =
            "n=" + std::to_string(n) + "/b=" + std::to_string(order);
        auto [it, fresh] = rep.classes.try_emplace(key);
        RatioClass& cls = it->second;
        if (fresh || cls.samples == 0) {
          cls.min_ratio = cls.max_ratio = r;
        } else {
          cls.min_ratio = std::min(cls.min_ratio, r);
          cls.max_ratio = std::max(cls.max_ratio, r);
        }
        ++cls.samples;
      };

      // Shared stencil evaluations: the centre, one +-h pair per axis,
      // and the four corners of each mixed pair.
      const fock::cplx f0 = phi(ks[0]);
      fock::cplx fp[3];
      fock::cplx fm[3];
      for (int c = 0; c < 3; ++c) {
        fp[c] = phi(shifted(c, h, -1, 0.0));
        fm[c] = phi(shifted(c, -h, -1, 0.0));
      }

      static const char* comp_name[3] = {"x", "y", "z"};
      push(0, "value", std::abs(f0), true);

      double grad_sq = 0.0;
      for (int c = 0; c < 3; ++c) {
        const fock::cplx d = (fp[c] - fm[c]) / (2.0 * h);
        grad_sq += std::norm(d);
        push(1, comp_name[c], std::abs(d), false);
      }
      push(1, "grad", std::sqrt(grad_sq), true);

      double hess_sq = 0.0;
      for (int c = 0; c < 3; ++c) {
        const fock::cplx d = (fp[c] - 2.0 * f0 + fm[c]) / (h * h);
        hess_sq += std::norm(d);
        push(2, std::string(comp_name[c]) + comp_name[c], std::abs(d), false);
      }
      constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
      for (const auto& pr : pairs) {
        const fock::cplx d =
            (phi(shifted(pr[0], h, pr[1], h)) -
             phi(shifted(pr[0], h, pr[1], -h)) -
             phi(shifted(pr[0], -h, pr[1], h)) +
             phi(shifted(pr[0], -h, pr[1], -h))) /
            (4.0 * h * h);
        hess_sq += 2.0 * std::norm(d);  // symmetric off-diagonal pair
        push(2, std::string(comp_name[pr[0]]) + comp_name[pr[1]],
             std::abs(d), false);
      }
      push(2, "hess", std::sqrt(hess_sq), true);
    }

    // One sample with the first argument below the infrared cutoff:
    // route value and envelope are both exactly zero.
    {
      std::vector<std::array<double, 3>> ks;
      ks.push_back({0.5 * params.sigma, 0.0, 0.0});
      for (int i = 1; i < n; ++i) ks.push_back(random_k());
      const fock::cplx f0 = wf::wf_froehlich(ctx, wf::make_tuple(ks));
      const double env = wf::gbound(params, wf::make_tuple(ks), 1.0);
      if (std::abs(f0) != 0.0 || env != 0.0)
        throw std::runtime_error(
            "bound ratios: below-cutoff sample is not exactly zero");
      RatioSample sample;
      sample.n = n;
      sample.beta_order = 0;
      sample.beta = "-";
      sample.ks = ks;
      sample.below_cutoff = true;
      rep.samples.push_back(std::move(sample));
      ++rep.zero_samples;
    }
  }
  return rep;
}

}  // namespace verif
