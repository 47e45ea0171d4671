#include "cli/tasks.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <sstream>

#include "fock/basis.h"
#include "fock/grid.h"
#include "nelson/ground.h"
#include "nelson/model.h"
#include "recurrence_core/quantize.h"
#include "recurrence_core/symbol.h"
#include "verification/bounds.h"
#include "verification/identities.h"
#include "verification/reports.h"
#include "verification/sweep.h"
#include "wavefunctions/context.h"
#include "wavefunctions/novel.h"
#include "wavefunctions/routes.h"
#include "wavefunctions/table.h"
#include "wavefunctions/tuples.h"

namespace cli {

namespace {

std::string fmt(double v) {
  // Shortest decimal form that round-trips to the same double, so CSV
  // bodies stay bit-exact across reruns without %.17g noise.
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Opens for writing, throwing a readable error instead of failing
/// silently; every writer below funnels through this.
std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

void write_schema(const std::filesystem::path& csv_path,
                  const std::vector<std::pair<std::string, std::string>>&
                      columns) {
  std::filesystem::path p = csv_path;
  p += ".schema.txt";
  std::ofstream out = open_out(p);
  out << csv_path.filename().string() << " columns:\n";
  for (const auto& [name, desc] : columns) {
    out << "  " << name << ": " << desc << "\n";
  }
}

/// Records a written file (relative to the output directory) on the
/// status row.
void record(TaskStatus& st, const std::filesystem::path& p) {
  st.outputs.push_back(p.filename().string());
}

struct SolvedModel {
  nelson::NelsonParams params;
  std::shared_ptr<const fock::FockBasis> basis;
  nelson::NelsonModel model;
  nelson::GroundStateResult gs;
};

fock::MomentumGrid grid_from_spec(const ModelSection& m) {
  const GridSpec& g = m.grid;
  if (g.type == "shells")
    return fock::make_thin_shell_grid(m.sigma, m.kappa, g.shells, g.thickness);
  if (g.type == "volume_shells")
    return fock::make_shell_grid(m.sigma, m.kappa, g.shells);
  if (g.type == "ladder")
    return fock::make_thin_ladder_grid(m.sigma, m.kappa, g.fraction);
  return fock::make_ladder_grid(m.sigma, m.kappa);
}

SolvedModel solve_model(const ModelSection& m) {
  nelson::NelsonParams p;
  p.P = m.P;
  p.sigma = m.sigma;
  p.kappa = m.kappa;
  p.lambda = m.lambda;
  p.alpha_bar = m.alpha_bar;
  p.eps0 = m.eps0;
  fock::MomentumGrid grid = grid_from_spec(m);
  auto basis = std::make_shared<const fock::FockBasis>(
      static_cast<int>(grid.size()), m.n_max);
  nelson::NelsonModel model =
      nelson::build_hamiltonian(p, grid, basis, {0.0, 0.0, 0.0}, m.quadratic);
  nelson::GroundStateResult gs =
      nelson::ground_state(model, m.gs_tol, m.gs_max_iter);
  return SolvedModel{p, std::move(basis), std::move(model), std::move(gs)};
}

// ---------------------------------------------------------------- tasks

TaskStatus run_ground_state(const TaskContext& ctx, const std::string& stem) {
  TaskStatus st;
  const SolvedModel sm = solve_model(ctx.config->model);
  const std::filesystem::path csv = ctx.out_dir / (stem + ".csv");
  {
    std::ofstream out = open_out(csv);
    out << "E,gap,iterations,residual,dim,fingerprint\n";
    out << fmt(sm.gs.E) << ',' << fmt(sm.gs.gap) << ',' << sm.gs.iterations
        << ',' << fmt(sm.gs.residual) << ',' << sm.basis->dim() << ','
        << verif::model_fingerprint(sm.model) << '\n';
  }
  record(st, csv);
  write_schema(csv, {{"E", "ground energy of the fiber Hamiltonian"},
                     {"gap", "distance to the next Lanczos eigenvalue"},
                     {"iterations", "Lanczos iterations used"},
                     {"residual", "||H psi - E psi|| at the solution"},
                     {"dim", "truncated Fock-space dimension"},
                     {"fingerprint", "model parameter hash"}});
  record(st, std::filesystem::path(csv.string() + ".schema.txt"));
  st.status = "ok";
  std::ostringstream msg;
  msg << "E = " << fmt(sm.gs.E) << ", gap = " << fmt(sm.gs.gap) << ", dim "
      << sm.basis->dim();
  st.message = msg.str();
  return st;
}

/// All multisets of grid-mode indices of size n, lexicographic.
std::vector<std::vector<int>> mode_multisets(int modes, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(idx);
    int i = n - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == modes - 1) --i;
    if (i < 0) break;
    const int v = idx[static_cast<std::size_t>(i)] + 1;
    for (int j = i; j < n; ++j) idx[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

TaskStatus run_wavefunctions(const TaskContext& ctx, const TaskSpec& task,
                             const std::string& stem) {
  TaskStatus st;
  const SolvedModel sm = solve_model(ctx.config->model);
  const wf::WfContext wctx = wf::make_context(sm.model, sm.gs);
  const fock::MomentumGrid& grid = sm.model.grid();
  const int modes = static_cast<int>(grid.size());

  std::vector<wf::WaveFunctionTable> tables;
  std::size_t entries = 0;
  for (const std::string& method : task.methods) {
    for (int n = 1; n <= task.n_limit; ++n) {
      wf::WaveFunctionTable table;
      table.n = n;
      table.method = method;
      table.symmetrized = method != "novel";
      for (const std::vector<int>& ms : mode_multisets(modes, n)) {
        wf::WaveFunctionEntry entry;
        for (int j : ms) entry.k.push_back(grid.modes[static_cast<std::size_t>(j)].k);
        if (method == "direct") {
          entry.value = wf::wf_direct(wctx, ms, /*dressed=*/false).value;
        } else {
          const wf::MomentumTuple tuple = wf::tuple_from_modes(grid, ms);
          entry.value = method == "froehlich" ? wf::wf_froehlich(wctx, tuple)
                                              : wf::wf_novel(wctx, tuple);
        }
        table.entries.push_back(std::move(entry));
      }
      entries += table.entries.size();
      tables.push_back(std::move(table));
    }
  }

  const std::filesystem::path csv = ctx.out_dir / (stem + ".csv");
  wf::write_tables_csv(tables, verif::model_fingerprint(sm.model),
                       csv.string());
  record(st, csv);
  write_schema(
      csv,
      {{"method", "evaluation route: direct, froehlich, or novel"},
       {"n", "number of boson arguments"},
       {"symmetrized", "1 when the route is exactly symmetric in its arguments"},
       {"params_hash", "model parameter hash"},
       {"k", "the 3n momentum components, space separated"},
       {"value_re", "real part of the n-boson wave-function value"},
       {"value_im", "imaginary part"}});
  record(st, std::filesystem::path(csv.string() + ".schema.txt"));
  st.status = "ok";
  std::ostringstream msg;
  msg << tables.size() << " tables, " << entries << " entries (n <= "
      << task.n_limit << ")";
  st.message = msg.str();
  return st;
}

TaskStatus run_verify(const TaskContext& ctx, const std::string& stem) {
  TaskStatus st;
  const SolvedModel sm = solve_model(ctx.config->model);
  const std::array<double, 3> gradE =
      nelson::expectation_gradient(sm.model, sm.gs);

  bool ok = true;
  std::ostringstream msg;

  // Pull-through identity suite.
  const std::vector<verif::IdentityReport> reports =
      verif::default_identity_suite(sm.model, gradE);
  const std::filesystem::path rep_csv = ctx.out_dir / (stem + "_reports.csv");
  {
    std::ofstream out = open_out(rep_csv);
    verif::write_reports_csv(out, reports);
  }
  record(st, rep_csv);
  write_schema(rep_csv,
               {{"id", "identity name"},
                {"raw", "worst relative defect before top-sector projection"},
                {"projected", "worst relative defect below the top sector"},
                {"tolerance", "pass threshold for the projected defect"},
                {"pass", "1 when projected <= tolerance"},
                {"fingerprint", "model parameter hash"}});
  record(st, std::filesystem::path(rep_csv.string() + ".schema.txt"));
  std::size_t passed = 0;
  for (const auto& r : reports) passed += r.pass ? 1u : 0u;
  if (passed != reports.size()) ok = false;
  msg << passed << "/" << reports.size() << " identities pass";

  // Resolvent-chain norm rows.
  verif::ResolventBoundsOptions bopt;
  bopt.tuples = {{0}};
  if (sm.model.grid().size() > 1) bopt.tuples.push_back({0, 1});
  const verif::ResolventBoundsReport bounds =
      verif::check_resolvent_bounds(sm.model, sm.gs, gradE, bopt);
  const std::filesystem::path b_csv = ctx.out_dir / (stem + "_bounds.csv");
  {
    std::ofstream out = open_out(b_csv);
    out << "modes,norm_Ri,implied_Ri,r_lambda_psi,ri_li_psi,ri_q_li_r,"
           "ri_q_li_rip,ri_li_rip,implied_ri_li_rip,triple,implied_triple,"
           "triple_r,implied_triple_r,lambda_expect,q_lambda_norm,sigma\n";
    for (const auto& row : bounds.rows) {
      std::string modes_field;
      for (std::size_t i = 0; i < row.modes.size(); ++i) {
        if (i) modes_field += ' ';
        modes_field += std::to_string(row.modes[i]);
      }
      const double vals[] = {row.norm_Ri,      row.implied_Ri,
                             row.r_lambda_psi, row.ri_li_psi,
                             row.ri_q_li_r,    row.ri_q_li_rip,
                             row.ri_li_rip,    row.implied_ri_li_rip,
                             row.triple,       row.implied_triple,
                             row.triple_r,     row.implied_triple_r};
      out << modes_field;
      for (double v : vals) {
        out << ',' << fmt(v);
        if (!std::isfinite(v)) ok = false;
      }
      out << ',' << fmt(bounds.lambda_expect) << ','
          << fmt(bounds.q_lambda_norm) << ',' << fmt(bounds.sigma) << '\n';
    }
  }
  record(st, b_csv);
  write_schema(
      b_csv,
      {{"modes", "grid-mode tuple, space separated"},
       {"norm_Ri", "norm of the shifted resolvent at the full prefix"},
       {"implied_Ri", "norm_Ri times the prefix magnitude sum"},
       {"r_lambda_psi", "deflated resolvent applied to the gradient source"},
       {"ri_li_psi", "single shifted chain link"},
       {"ri_q_li_r", "shifted link through the deflated resolvent"},
       {"ri_q_li_rip", "shifted link through a shorter shifted link"},
       {"ri_li_rip", "two-link chain"},
       {"implied_ri_li_rip", "two-link chain times prefix magnitude"},
       {"triple", "three-link shifted chain"},
       {"implied_triple", "three-link chain times prefix magnitude"},
       {"triple_r", "two shifted links through the deflated resolvent"},
       {"implied_triple_r", "same, times prefix magnitude"},
       {"lambda_expect", "|<psi, Lambda psi>| (should vanish)"},
       {"q_lambda_norm", "norm of the projected gradient source"},
       {"sigma", "infrared cutoff of the model"}});
  record(st, std::filesystem::path(b_csv.string() + ".schema.txt"));
  if (bounds.lambda_expect > 1e-8) ok = false;

  // Derivative-bound ratio samples and their per-order spreads.
  const wf::WfContext wctx = wf::make_context(sm.model, sm.gs);
  const verif::BoundRatioReport ratios =
      verif::check_bound_ratios(wctx, verif::BoundRatioOptions{});
  const std::filesystem::path r_csv = ctx.out_dir / (stem + "_ratios.csv");
  {
    std::ofstream out = open_out(r_csv);
    out << "n,beta_order,beta,ks,value,ratio,aggregate,below_cutoff\n";
    for (const auto& s : ratios.samples) {
      std::string ks_field;
      for (std::size_t i = 0; i < s.ks.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
          if (i || c) ks_field += ' ';
          ks_field += fmt(s.ks[i][static_cast<std::size_t>(c)]);
        }
      }
      out << s.n << ',' << s.beta_order << ',' << s.beta << ',' << ks_field
          << ',' << fmt(s.value) << ',' << fmt(s.ratio) << ','
          << (s.aggregate ? 1 : 0) << ',' << (s.below_cutoff ? 1 : 0) << '\n';
      if (!std::isfinite(s.ratio)) ok = false;
    }
  }
  record(st, r_csv);
  write_schema(
      r_csv,
      {{"n", "tuple length"},
       {"beta_order", "derivative order 0..2"},
       {"beta", "derivative component, or value/grad/hess for aggregates"},
       {"ks", "sample momenta, 3n components space separated"},
       {"value", "measured derivative magnitude"},
       {"ratio", "envelope-normalized effective constant"},
       {"aggregate", "1 for rotation-invariant rows (these feed the classes)"},
       {"below_cutoff", "1 when the sample sits below the infrared cutoff"}});
  record(st, std::filesystem::path(r_csv.string() + ".schema.txt"));

  const std::filesystem::path c_csv =
      ctx.out_dir / (stem + "_ratio_classes.csv");
  double worst_spread = 0.0;
  {
    std::ofstream out = open_out(c_csv);
    out << "class,min_ratio,max_ratio,spread,samples\n";
    for (const auto& [key, cls] : ratios.classes) {
      const double spread =
          cls.min_ratio > 0.0 ? cls.max_ratio / cls.min_ratio : 0.0;
      worst_spread = std::max(worst_spread, spread);
      out << key << ',' << fmt(cls.min_ratio) << ',' << fmt(cls.max_ratio)
          << ',' << fmt(spread) << ',' << cls.samples << '\n';
      if (!std::isfinite(spread) || spread >= 10.0) ok = false;
    }
  }
  record(st, c_csv);
  write_schema(c_csv,
               {{"class", "tuple length and derivative order, n=<n>/b=<order>"},
                {"min_ratio", "smallest rotation-invariant ratio in the class"},
                {"max_ratio", "largest"},
                {"spread", "max_ratio / min_ratio (uniform-shape check)"},
                {"samples", "sampled tuples in the class"}});
  record(st, std::filesystem::path(c_csv.string() + ".schema.txt"));

  msg << "; " << bounds.rows.size() << " bound rows; worst ratio spread "
      << fmt(worst_spread);
  st.status = ok ? "ok" : "failed";
  st.message = msg.str();
  return st;
}

TaskStatus run_sweep(const TaskContext& ctx, const TaskSpec& task,
                     const std::string& stem) {
  TaskStatus st;
  const ModelSection& m = ctx.config->model;
  verif::SweepOptions opt = task.sweep;
  opt.P = m.P;
  opt.kappa = m.kappa;
  opt.alpha_bar = m.alpha_bar;
  opt.eps0 = m.eps0;

  const std::filesystem::path p_csv = ctx.out_dir / (stem + "_points.csv");
  const std::filesystem::path f_csv = ctx.out_dir / (stem + "_fits.csv");
  std::ofstream points = open_out(p_csv);
  points << "lambda,sigma,quantity,norm,status\n";

  int warnings = 0;
  std::size_t rows = 0;
  std::ostringstream fit_rows;
  std::ostringstream warn_msg;
  for (double lambda : task.lambdas) {
    // Survivor lists per quantity, in sigma order.
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>
        survivors;
    for (double sigma : task.sigmas) {
      try {
        const verif::SweepResult r = verif::sigma_sweep(opt, {sigma}, lambda);
        for (const verif::SweepQuantity& q : r.quantities) {
          points << fmt(lambda) << ',' << fmt(sigma) << ',' << q.id << ','
                 << fmt(q.norms.at(0)) << ",ok\n";
          ++rows;
          survivors[q.id].first.push_back(sigma);
          survivors[q.id].second.push_back(q.norms.at(0));
        }
      } catch (const std::exception& e) {
        for (const std::string& q : opt.quantities) {
          points << fmt(lambda) << ',' << fmt(sigma) << ',' << q
                 << ",nan,error\n";
          ++rows;
        }
        ++warnings;
        warn_msg << " [lambda=" << fmt(lambda) << " sigma=" << fmt(sigma)
                 << ": " << e.what() << "]";
      }
    }
    if (task.sigmas.size() < 2) continue;  // single point: norms only, no fit
    for (const std::string& q : opt.quantities) {
      const auto& [sig, nrm] = survivors[q];
      if (sig.size() < 2) continue;  // not enough surviving points to fit
      const verif::FitResult fit =
          verif::fit_exponent(sig, nrm, opt.zero_floor, opt.fit_threshold);
      fit_rows << fmt(lambda) << ',' << q << ',' << fmt(fit.delta) << ','
               << fmt(fit.residual) << ',' << (fit.reliable ? 1 : 0) << ','
               << sig.size() << '\n';
    }
  }
  points.close();
  record(st, p_csv);
  write_schema(p_csv,
               {{"lambda", "coupling strength"},
                {"sigma", "infrared cutoff"},
                {"quantity", "measured quantity id"},
                {"norm", "measured value (nan when the point failed)"},
                {"status", "ok, or error when the point failed"}});
  record(st, std::filesystem::path(p_csv.string() + ".schema.txt"));

  {
    std::ofstream fits = open_out(f_csv);
    fits << "lambda,quantity,delta_fit,fit_residual,reliable,points_used\n";
    fits << fit_rows.str();
  }
  record(st, f_csv);
  write_schema(
      f_csv,
      {{"lambda", "coupling strength"},
       {"quantity", "measured quantity id"},
       {"delta_fit", "fitted infrared exponent (norm ~ sigma^-delta)"},
       {"fit_residual", "rms log-space fit residual"},
       {"reliable", "1 when the fit residual is below the threshold"},
       {"points_used", "surviving sweep points the fit used"}});
  record(st, std::filesystem::path(f_csv.string() + ".schema.txt"));

  st.status = "ok";
  std::ostringstream msg;
  msg << rows << " sweep rows over " << task.lambdas.size() << " couplings";
  if (warnings > 0) {
    msg << "; " << warnings << " point(s) failed, fits use survivors"
        << warn_msg.str();
  }
  st.message = msg.str();
  return st;
}

TaskStatus run_recurrence_demo(const TaskContext& ctx, const TaskSpec& task,
                               const std::string& stem) {
  TaskStatus st;
  Eigen::MatrixXcd a(1, 1), b(1, 1);
  a(0, 0) = task.scalar[0];
  b(0, 0) = task.scalar[1];
  recur::RecurrenceProblem prob;
  prob.ops = recur::matrix_sequence(a, b);
  prob.x0 = recur::Vec::Constant(1, 1.0);
  const std::complex<double> closed = recur::solve_closed(prob, task.n)(0);
  const std::complex<double> direct = recur::solve_direct(prob, task.n)(0);
  const std::size_t monomials =
      recur::expand_closed_form(task.n).monomials.size();
  const bool agree =
      std::abs(closed - direct) <= 1e-9 * std::max(1.0, std::abs(closed));

  const std::filesystem::path csv = ctx.out_dir / (stem + ".csv");
  {
    std::ofstream out = open_out(csv);
    out << "n,a,b,closed_re,closed_im,direct_re,direct_im,monomials\n";
    out << task.n << ',' << fmt(task.scalar[0]) << ',' << fmt(task.scalar[1])
        << ',' << fmt(closed.real()) << ',' << fmt(closed.imag()) << ','
        << fmt(direct.real()) << ',' << fmt(direct.imag()) << ',' << monomials
        << '\n';
  }
  record(st, csv);
  write_schema(csv,
               {{"n", "recurrence index"},
                {"a", "scalar one-step coefficient"},
                {"b", "scalar two-step coefficient"},
                {"closed_re", "closed-form x_n, real part"},
                {"closed_im", "closed-form x_n, imaginary part"},
                {"direct_re", "direct recursion x_n, real part"},
                {"direct_im", "direct recursion x_n, imaginary part"},
                {"monomials", "monomial count of the order-n closed form"}});
  record(st, std::filesystem::path(csv.string() + ".schema.txt"));

  st.status = agree ? "ok" : "failed";
  std::ostringstream msg;
  msg << "x_" << task.n << " = " << fmt(closed.real());
  if (closed.imag() != 0.0) msg << " + " << fmt(closed.imag()) << "i";
  msg << " (" << (agree ? "direct route agrees" : "ROUTE MISMATCH") << "; "
      << monomials << " monomials in the closed form)";
  st.message = msg.str();
  return st;
}

}  // namespace

std::vector<std::string> task_file_stems(const std::vector<TaskSpec>& tasks) {
  std::map<std::string, int> counts;
  for (const TaskSpec& t : tasks) ++counts[task_type_name(t.type)];
  std::map<std::string, int> seen;
  std::vector<std::string> stems;
  stems.reserve(tasks.size());
  for (const TaskSpec& t : tasks) {
    const std::string name = task_type_name(t.type);
    const int k = ++seen[name];
    stems.push_back(counts[name] > 1 && k > 1
                        ? name + "_" + std::to_string(k)
                        : name);
  }
  return stems;
}

TaskStatus run_task(const TaskContext& ctx, std::size_t index,
                    const std::string& stem) {
  const TaskSpec& task = ctx.config->tasks.at(index);
  TaskStatus st;
  try {
    switch (task.type) {
      case TaskType::GroundState:
        st = run_ground_state(ctx, stem);
        break;
      case TaskType::WaveFunctions:
        st = run_wavefunctions(ctx, task, stem);
        break;
      case TaskType::Verify:
        st = run_verify(ctx, stem);
        break;
      case TaskType::Sweep:
        st = run_sweep(ctx, task, stem);
        break;
      case TaskType::RecurrenceDemo:
        st = run_recurrence_demo(ctx, task, stem);
        break;
    }
  } catch (const std::exception& e) {
    st.status = "error";
    st.message = e.what();
  }
  st.index = static_cast<int>(index);
  st.type = task_type_name(task.type);
  return st;
}

}  // namespace cli
