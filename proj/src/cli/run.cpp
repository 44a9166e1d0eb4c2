#include <cmath>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "svesim/analysis.hpp"
#include "svesim/cli.hpp"
#include "svesim/errors.hpp"
#include "svesim/mittag_leffler.hpp"
#include "svesim/report_io.hpp"

namespace svesim::cli {

namespace {

using Summary = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double v) { return io::format_double(v); }

class Artifacts {
 public:
  Artifacts(const ExperimentConfig& cfg, std::ostream& log) : dir_(cfg.out_dir), log_(log) {
    for (const auto& f : cfg.formats) {
      if (f == "csv") csv_ = true;
      if (f == "svg") svg_ = true;
    }
    std::filesystem::create_directories(dir_);
  }

  bool csv() const { return csv_; }

  void ensemble(const PathEnsemble& e, const Summary& meta, const std::string& stem = "ensemble") {
    if (!csv_) return;
    io::write_ensemble_csv(dir_ / (stem + ".csv"), e);
    note(stem + ".csv");
    io::write_summary(dir_ / (stem + "_meta.txt"), meta);
    note(stem + "_meta.txt");
  }
  void table(const std::vector<io::Column>& cols, const std::string& name = "report.csv") {
    if (!csv_) return;
    io::write_table_csv(dir_ / name, cols);
    note(name);
  }
  void plot(const io::PlotSpec& spec, const std::vector<io::Series>& series) {
    if (!svg_) return;
    io::write_svg(dir_ / "plot.svg", spec, series);
    note("plot.svg");
  }
  void summary(const Summary& kv) {
    io::write_summary(dir_ / "summary.txt", kv);
    note("summary.txt");
  }

 private:
  void note(const std::string& name) { log_ << "wrote " << (dir_ / name).string() << '\n'; }

  std::filesystem::path dir_;
  std::ostream& log_;
  bool csv_ = false;
  bool svg_ = false;
};

Summary sim_summary(const ExperimentConfig& cfg) {
  const SimConfig& s = cfg.sim;
  return {{"command", cfg.command},
          {"scheme", scheme_name(cfg.scheme)},
          {"kernel", cfg.kernel->describe()},
          {"T", fmt(s.T)},
          {"N", std::to_string(s.N)},
          {"M", std::to_string(s.M)},
          {"n_paths", std::to_string(s.n_paths)},
          {"seed", std::to_string(s.seed)}};
}

Summary ensemble_meta(const ExperimentConfig& cfg, const SveProblem& p) {
  return {{"scheme", scheme_name(cfg.scheme)},
          {"seed", std::to_string(cfg.sim.seed)},
          {"T", fmt(cfg.sim.T)},
          {"N", std::to_string(cfg.sim.N)},
          {"M", std::to_string(cfg.sim.M)},
          {"n_paths", std::to_string(cfg.sim.n_paths)},
          {"kernel", p.k.describe()},
          {"curve", p.g.name},
          {"drift", p.b.name},
          {"diffusion", p.sigma.name}};
}

int run_simulate(const ExperimentConfig& cfg, Artifacts& out) {
  const BrownianDriver drv(cfg.sim.seed);
  const PathEnsemble e = simulate(*cfg.problem, cfg.sim, drv, cfg.scheme);
  std::vector<double> mean(e.n_steps, 0.0), se(e.n_steps, 0.0);
  const double n = static_cast<double>(e.n_paths);
  for (std::size_t k = 0; k < e.n_steps; ++k) {
    // shifted by path 0 so the variance keeps its digits
    const double ref = e.at(0, k);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < e.n_paths; ++i) {
      const double d = e.at(i, k) - ref;
      s1 += d;
      s2 += d * d;
    }
    mean[k] = ref + s1 / n;
    const double var = e.n_paths > 1 ? std::max(0.0, (s2 - s1 * s1 / n) / (n - 1.0)) : 0.0;
    se[k] = std::sqrt(var / n);
  }
  out.ensemble(e, ensemble_meta(cfg, *cfg.problem));
  out.table({{"t", e.grid}, {"g", e.g_values}, {"mean", mean}, {"se", se}});
  Summary kv = sim_summary(cfg);
  kv.emplace_back("mean_at_T", fmt(mean.back()));
  kv.emplace_back("se_at_T", fmt(se.back()));
  out.summary(kv);
  out.plot({"Per-time mean", "t", "X", false, false}, {{"mean X", e.grid, mean}, {"g", e.grid, e.g_values}});
  return kExitOk;
}

int run_compare(const ExperimentConfig& cfg, Artifacts& out) {
  const BrownianDriver drv(cfg.sim.seed);
  const auto [e1, e2] = simulate_coupled(*cfg.problem, *cfg.problem2, cfg.sim, drv, cfg.scheme);
  const ComparisonReport r = comparison_report(e1, e2, cfg.delta);
  out.ensemble(e1, ensemble_meta(cfg, *cfg.problem), "ensemble");
  out.ensemble(e2, ensemble_meta(cfg, *cfg.problem2), "ensemble2");
  out.table({{"t", r.grid},
             {"mean_diff", r.per_time_means},
             {"se", r.per_time_se},
             {"violation_fraction", std::vector<double>(r.grid.size(), r.violation_fraction)}});
  Summary kv = sim_summary(cfg);
  kv.emplace_back("delta", fmt(r.delta));
  kv.emplace_back("n_violating", std::to_string(r.n_violating));
  kv.emplace_back("violation_fraction", fmt(r.violation_fraction));
  kv.emplace_back("max_exceedance", fmt(r.max_exceedance));
  out.summary(kv);
  std::vector<double> lo(r.grid.size()), hi(r.grid.size());
  for (std::size_t k = 0; k < r.grid.size(); ++k) {
    lo[k] = r.per_time_means[k] - 2.0 * r.per_time_se[k];
    hi[k] = r.per_time_means[k] + 2.0 * r.per_time_se[k];
  }
  out.plot({"Mean of X2 - X1", "t", "X2 - X1", false, false},
           {{"mean", r.grid, r.per_time_means}, {"mean - 2 se", r.grid, lo}, {"mean + 2 se", r.grid, hi}});
  return kExitOk;
}

int run_convergence(const ExperimentConfig& cfg, Artifacts& out) {
  const ConvergenceReport r =
      strong_error(*cfg.problem, cfg.sim, cfg.convergence.Ns, cfg.convergence.ref_factor, cfg.convergence.t_eval,
                   cfg.scheme);
  std::vector<double> Ns(r.Ns.begin(), r.Ns.end()), wg, wk, c2;
  for (const auto& c : r.components) {
    wg.push_back(c.omega_g);
    wk.push_back(c.omega_K);
    c2.push_back(c.sup_C2);
  }
  out.table({{"N", Ns}, {"error", r.errors}, {"error_se", r.errors_se}, {"omega_g", wg}, {"omega_K", wk},
             {"sup_C2", c2}});
  Summary kv = sim_summary(cfg);
  kv.erase(kv.begin() + 4);  // N is the study variable
  kv.emplace_back("N_ref", std::to_string(r.N_ref));
  kv.emplace_back("t_eval", fmt(r.t_eval));
  kv.emplace_back("fitted_rate", fmt(r.fitted_rate));
  out.summary(kv);
  out.plot({"Strong error against N", "N", "mean square error", true, true}, {{"error", Ns, r.errors}});
  return kExitOk;
}

int run_ml(const ExperimentConfig& cfg, Artifacts& out) {
  const MlBlock& m = cfg.ml;
  Summary kv{{"command", "ml"}, {"alpha", fmt(m.alpha)}, {"beta", fmt(m.beta)}};
  if (!m.z.empty()) {
    std::vector<double> v, err;
    for (double z : m.z) {
      const MlResult r = mittag_leffler(m.alpha, m.beta, z);
      v.push_back(r.value);
      err.push_back(r.error_estimate);
      std::string tag = ml_method_name(r.method);
      if (r.accuracy_warning) tag += " (accuracy warning)";
      kv.emplace_back("ml(" + fmt(z) + ")", fmt(r.value) + " [" + tag + "]");
    }
    out.table({{"z", m.z}, {"value", v}, {"error_estimate", err}});
  }
  std::vector<io::Series> series;
  if (m.scan) {
    const MlScan& s = *m.scan;
    const SignReport r = ml_sign_scan(m.alpha, m.beta, s.t_max, s.n_grid, s.rate);
    kv.emplace_back("scan_rate", fmt(s.rate));
    kv.emplace_back("scan_t_max", fmt(s.t_max));
    kv.emplace_back("first_negative_t", r.first_negative_t ? fmt(*r.first_negative_t) : std::string("none"));
    kv.emplace_back("min_value", fmt(r.min_value));
    kv.emplace_back("t_at_min", fmt(r.t_at_min));
    std::vector<double> t(s.n_grid), v(s.n_grid);
    const double t0 = s.t_max * 1e-6;
    for (std::size_t i = 0; i < s.n_grid; ++i) {
      t[i] = t0 * std::pow(s.t_max / t0, static_cast<double>(i) / static_cast<double>(s.n_grid - 1));
      v[i] = ml(m.alpha, m.beta, -s.rate * std::pow(t[i], m.alpha));
    }
    out.table({{"t", t}, {"value", v}}, "scan.csv");
    series.push_back({"E(-rate t^alpha)", t, v});
  }
  if (m.laplace) {
    const MlLaplace& l = *m.laplace;
    const LaplaceCheck c = laplace_identity_check(m.alpha, l.gamma, l.lam, l.s, l.T_trunc);
    kv.emplace_back("laplace_numeric", fmt(c.numeric));
    kv.emplace_back("laplace_analytic", fmt(c.analytic));
    kv.emplace_back("laplace_abs_diff", fmt(std::abs(c.numeric - c.analytic)));
    kv.emplace_back("laplace_tail_bound", fmt(c.tail_bound));
    kv.emplace_back("laplace_accuracy_warning", c.accuracy_warning ? "true" : "false");
  }
  out.summary(kv);
  if (!series.empty()) out.plot({"Mittag-Leffler sign scan", "t", "value", true, false}, series);
  return kExitOk;
}

int run_check(const ExperimentConfig& cfg, Artifacts& out) {
  SveProblem p = *cfg.problem;
  p.k = *cfg.kernel_exact;
  const AssumptionReport r = check_assumption(p, cfg.check.q, cfg.check.eta);
  bool ok = r.all_passed();
  Summary kv{{"command", "check"}, {"kernel", p.k.describe()}, {"q", fmt(cfg.check.q)}, {"eta", fmt(cfg.check.eta)},
             {"gamma", fmt(r.gamma)}, {"xi", fmt(r.xi)}};
  std::vector<double> passed, margin;
  for (const Clause& c : r.clauses) {
    const char* verdict = !c.applicable ? "n/a" : (c.passed ? "pass" : "fail");
    kv.emplace_back("clause." + c.name, std::string(verdict) + (c.detail.empty() ? "" : " (" + c.detail + ")"));
    passed.push_back(c.applicable ? (c.passed ? 1.0 : 0.0) : -1.0);
    margin.push_back(c.margin);
  }
  if (cfg.check.nonneg) {
    NonnegCheckOptions opt;
    opt.n_trials = cfg.check.n_trials;
    opt.seed = cfg.check.seed;
    const PropertyReport n = check_nonneg_preserving(*cfg.kernel, opt);
    kv.emplace_back("nonneg.trials", std::to_string(n.trials));
    kv.emplace_back("nonneg.violations", std::to_string(n.violations));
    kv.emplace_back("nonneg.worst_value", fmt(n.worst_value));
    if (n.witness) kv.emplace_back("nonneg.witness_t", fmt(n.witness->probe_t));
    if (n.violations > 0) ok = false;
  }
  kv.emplace_back("all_passed", ok ? "true" : "false");
  out.summary(kv);
  if (!r.clauses.empty()) {
    std::vector<double> idx(r.clauses.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
    out.table({{"clause_index", idx}, {"passed", passed}, {"margin", margin}});
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int run_counterexample(const ExperimentConfig& cfg, Artifacts& out) {
  const CounterexampleBlock& c = cfg.counterexample;
  const CounterexampleReport r = counterexample_report(c.alpha, c.beta0, c.x1, c.x2, cfg.sim);
  out.table({{"t", r.grid}, {"analytic_diff", r.analytic_diff}, {"mc_diff_mean", r.mc_diff_mean},
             {"mc_diff_se", r.mc_diff_se}});
  Summary kv{{"command", "counterexample"},
             {"alpha", fmt(c.alpha)},
             {"beta0", fmt(c.beta0)},
             {"x1", fmt(c.x1)},
             {"x2", fmt(c.x2)},
             {"T", fmt(cfg.sim.T)},
             {"N", std::to_string(cfg.sim.N)},
             {"n_paths", std::to_string(cfg.sim.n_paths)},
             {"seed", std::to_string(cfg.sim.seed)},
             {"scan_min_t", fmt(r.scan_min_t)},
             {"grid_t_at_min", fmt(r.grid[r.scan_min_index])},
             {"mc_diff_at_min", fmt(r.mc_diff_mean[r.scan_min_index])},
             {"mc_se_at_min", fmt(r.mc_diff_se[r.scan_min_index])},
             {"analytic_at_min", fmt(r.analytic_diff[r.scan_min_index])},
             {"fraction_within_3se", fmt(r.fraction_within_3se)},
             {"max_abs_deviation", fmt(r.max_abs_deviation)}};
  out.summary(kv);
  out.plot({"Mean difference X2 - X1", "t", "X2 - X1", false, false},
           {{"analytic", r.grid, r.analytic_diff}, {"Monte Carlo", r.grid, r.mc_diff_mean}});
  return kExitOk;
}

}  // namespace

int run_text(std::string_view text, const RunOptions& opt, std::ostream& log, std::string_view source) {
  ParseResult parsed = parse_config(text, source);
  if (!parsed.config) {
    for (const auto& d : parsed.diagnostics) log << source << ": " << to_string(d) << '\n';
    return kExitInvalid;
  }
  ExperimentConfig cfg = std::move(*parsed.config);
  if (opt.out_dir) cfg.out_dir = *opt.out_dir;
  if (opt.threads) cfg.sim.threads = *opt.threads;
  if (opt.formats) cfg.formats = *opt.formats;

  try {
    Artifacts out(cfg, log);
    if (cfg.command == "simulate") return run_simulate(cfg, out);
    if (cfg.command == "compare") return run_compare(cfg, out);
    if (cfg.command == "convergence") return run_convergence(cfg, out);
    if (cfg.command == "ml") return run_ml(cfg, out);
    if (cfg.command == "check") return run_check(cfg, out);
    if (cfg.command == "counterexample") return run_counterexample(cfg, out);
  } catch (const std::exception& e) {
    log << source << ": " << cfg.command << ": " << e.what() << '\n';
    return kExitRuntime;
  }
  log << source << ": unknown command '" << cfg.command << "'\n";
  return kExitInvalid;
}

int run_file(const std::filesystem::path& file, const RunOptions& opt, std::ostream& log) {
  std::ifstream is(file, std::ios::binary);
  if (!is) {
    log << file.string() << ": cannot read config\n";
    return kExitInvalid;
  }
  std::ostringstream ss;
  ss << is.rdbuf();
  return run_text(ss.str(), opt, log, file.string());
}

}  // namespace svesim::cli
