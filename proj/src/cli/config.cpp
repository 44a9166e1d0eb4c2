#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_HEADER_ONLY 1
#include <toml.hpp>

#include "svesim/errors.hpp"

namespace svesim::cli {

std::string to_string(const Diagnostic& d) { return d.field + ": " + d.message; }

namespace {

std::string join(const std::string& prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : prefix + "." + std::string(key);
}

class Reader {
 public:
  std::vector<Diagnostic> diags;

  void error(std::string field, std::string msg) { diags.push_back({std::move(field), std::move(msg)}); }

  const toml::table* table(const toml::table* t, std::string_view key, const std::string& prefix, bool required) {
    const std::string path = join(prefix, key);
    if (!t) return nullptr;
    const toml::node* n = t->get(key);
    if (!n) {
      if (required) error(path, "required table missing");
      return nullptr;
    }
    if (!n->is_table()) {
      error(path, "expected a table");
      return nullptr;
    }
    return n->as_table();
  }

  std::optional<double> num(const toml::table* t, std::string_view key, const std::string& prefix, bool required,
                            std::optional<double> def = std::nullopt) {
    const std::string path = join(prefix, key);
    const toml::node* n = t ? t->get(key) : nullptr;
    if (!n) {
      if (required) error(path, "required field missing");
      return def;
    }
    if (auto v = n->value<double>(); v && (n->is_floating_point() || n->is_integer())) {
      if (!std::isfinite(*v)) {
        error(path, "must be finite");
        return std::nullopt;
      }
      return v;
    }
    error(path, "expected a number");
    return std::nullopt;
  }

  std::optional<std::int64_t> integer(const toml::table* t, std::string_view key, const std::string& prefix,
                                      bool required, std::optional<std::int64_t> def = std::nullopt,
                                      std::int64_t min_value = 0) {
    const std::string path = join(prefix, key);
    const toml::node* n = t ? t->get(key) : nullptr;
    if (!n) {
      if (required) error(path, "required field missing");
      return def;
    }
    if (!n->is_integer()) {
      error(path, "expected an integer");
      return std::nullopt;
    }
    const std::int64_t v = *n->value<std::int64_t>();
    if (v < min_value) {
      error(path, "must be >= " + std::to_string(min_value));
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::string> str(const toml::table* t, std::string_view key, const std::string& prefix, bool required,
                                 std::optional<std::string> def = std::nullopt) {
    const std::string path = join(prefix, key);
    const toml::node* n = t ? t->get(key) : nullptr;
    if (!n) {
      if (required) error(path, "required field missing");
      return def;
    }
    if (!n->is_string()) {
      error(path, "expected a string");
      return std::nullopt;
    }
    return *n->value<std::string>();
  }

  std::optional<bool> boolean(const toml::table* t, std::string_view key, const std::string& prefix, bool def) {
    const toml::node* n = t ? t->get(key) : nullptr;
    if (!n) return def;
    if (!n->is_boolean()) {
      error(join(prefix, key), "expected true or false");
      return std::nullopt;
    }
    return *n->value<bool>();
  }

  std::optional<std::vector<double>> num_array(const toml::table* t, std::string_view key, const std::string& prefix,
                                               bool required) {
    const std::string path = join(prefix, key);
    const toml::node* n = t ? t->get(key) : nullptr;
    if (!n) {
      if (required) error(path, "required field missing");
      return std::nullopt;
    }
    if (!n->is_array()) {
      error(path, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& el : *n->as_array()) {
      auto v = el.value<double>();
      if (!v || !(el.is_floating_point() || el.is_integer())) {
        error(path, "expected an array of numbers");
        return std::nullopt;
      }
      out.push_back(*v);
    }
    return out;
  }

  void known_keys(const toml::table* t, const std::string& prefix, std::initializer_list<std::string_view> keys) {
    if (!t) return;
    const std::set<std::string_view> allowed(keys);
    for (const auto& [k, v] : *t)
      if (!allowed.count(k.str())) error(join(prefix, k.str()), "unknown field");
  }
};

std::optional<Kernel> read_kernel(Reader& r, const toml::table* t, const std::string& path) {
  if (!t) return std::nullopt;
  const auto type = r.str(t, "type", path, true);
  if (!type) return std::nullopt;
  try {
    if (*type == "fractional") {
      r.known_keys(t, path, {"type", "alpha", "soe", "truncate_H"});
      const auto a = r.num(t, "alpha", path, true);
      if (!a) return std::nullopt;
      return Kernel::fractional(*a);
    }
    if (*type == "expsum") {
      r.known_keys(t, path, {"type", "weights", "rates", "truncate_H"});
      const auto w = r.num_array(t, "weights", path, true);
      const auto q = r.num_array(t, "rates", path, true);
      if (!w || !q) return std::nullopt;
      return Kernel::exp_sum(*w, *q);
    }
    if (*type == "shifted") {
      r.known_keys(t, path, {"type", "eps", "base", "truncate_H"});
      const auto eps = r.num(t, "eps", path, true);
      const auto base = read_kernel(r, r.table(t, "base", path, true), join(path, "base"));
      if (!eps || !base) return std::nullopt;
      return shift(*base, *eps);
    }
    if (*type == "tabulated") {
      r.known_keys(t, path, {"type", "grid", "values"});
      const auto g = r.num_array(t, "grid", path, true);
      const auto v = r.num_array(t, "values", path, true);
      if (!g || !v) return std::nullopt;
      return Kernel::tabulated(*g, *v);
    }
    r.error(join(path, "type"), "unknown kernel type '" + *type + "' (fractional, expsum, shifted, tabulated)");
  } catch (const std::exception& e) {
    r.error(path, e.what());
  }
  return std::nullopt;
}

// Kernel the schemes run on: optional SoE approximation, then optional truncation.
std::optional<Kernel> effective_kernel(Reader& r, const toml::table* t, const std::string& path, const Kernel& exact) {
  std::optional<Kernel> k = exact;
  try {
    if (const toml::table* soe = r.table(t, "soe", path, false)) {
      const std::string sp = join(path, "soe");
      r.known_keys(soe, sp, {"n_nodes", "rho_min", "rho_max"});
      const auto* f = std::get_if<Kernel::Fractional>(&exact.variant());
      if (!f) {
        r.error(sp, "an SoE approximation applies to fractional kernels only");
        return std::nullopt;
      }
      const auto n = r.integer(soe, "n_nodes", sp, false, 60, 2);
      const auto lo = r.num(soe, "rho_min", sp, false, 1e-3);
      const auto hi = r.num(soe, "rho_max", sp, false, 1e4);
      if (!n || !lo || !hi) return std::nullopt;
      k = soe_from_fractional(f->alpha, static_cast<std::size_t>(*n), *lo, *hi);
    }
    if (const auto H = r.num(t, "truncate_H", path, false)) {
      if (!k->is_exp_sum()) {
        r.error(join(path, "truncate_H"), "truncation applies to exponential sums (add a soe block)");
        return std::nullopt;
      }
      k = bernstein_truncate(*k, *H);
    }
  } catch (const std::exception& e) {
    r.error(path, e.what());
    return std::nullopt;
  }
  return k;
}

std::optional<InputCurve> read_curve(Reader& r, const toml::table* t, const std::string& path) {
  if (!t) return std::nullopt;
  const auto type = r.str(t, "type", path, true);
  if (!type) return std::nullopt;
  try {
    if (*type == "constant") {
      r.known_keys(t, path, {"type", "x"});
      const auto x = r.num(t, "x", path, true);
      if (!x) return std::nullopt;
      return InputCurve::constant(*x);
    }
    if (*type == "power") {
      r.known_keys(t, path, {"type", "x", "gamma0"});
      const auto x = r.num(t, "x", path, true);
      const auto g0 = r.num(t, "gamma0", path, true);
      if (!x || !g0) return std::nullopt;
      return InputCurve::power(*x, *g0);
    }
    r.error(join(path, "type"), "unknown curve type '" + *type + "' (constant, power)");
  } catch (const std::exception& e) {
    r.error(path, e.what());
  }
  return std::nullopt;
}

std::optional<Coefficient> read_coefficient(Reader& r, const toml::table* t, const std::string& path, bool drift) {
  if (!t) return std::nullopt;
  const auto type = r.str(t, "type", path, true);
  if (!type) return std::nullopt;
  std::optional<Coefficient> c;
  try {
    if (*type == "linear") {
      r.known_keys(t, path, {"type", "b0", "beta", "mollify"});
      const auto b0 = r.num(t, "b0", path, false, 0.0);
      const auto beta = r.num(t, "beta", path, false, 0.0);
      if (!b0 || !beta) return std::nullopt;
      c = Coefficient::linear(*b0, *beta);
    } else if (*type == "constant") {
      r.known_keys(t, path, {"type", "value", "mollify"});
      const auto v = r.num(t, "value", path, true);
      if (!v) return std::nullopt;
      c = Coefficient::constant(*v);
    } else if (*type == "cir") {
      const auto n = r.integer(t, "n", path, false, std::nullopt, 1);
      std::optional<std::size_t> nn;
      if (n) nn = static_cast<std::size_t>(*n);
      if (drift) {
        r.known_keys(t, path, {"type", "lam", "theta", "gamma1", "n", "mollify"});
        const auto lam = r.num(t, "lam", path, true);
        const auto theta = r.num(t, "theta", path, true);
        const auto g1 = r.num(t, "gamma1", path, false, 1.0);
        if (!lam || !theta || !g1) return std::nullopt;
        c = cir_coefficients(*lam, *theta, 1.0, *g1, 1.0, nn).b;
      } else {
        r.known_keys(t, path, {"type", "sigma0", "gamma2", "n", "mollify"});
        const auto s0 = r.num(t, "sigma0", path, true);
        const auto g2 = r.num(t, "gamma2", path, false, 0.5);
        if (!s0 || !g2) return std::nullopt;
        c = cir_coefficients(1.0, 1.0, *s0, 1.0, *g2, nn).sigma;
      }
    } else {
      r.error(join(path, "type"), "unknown coefficient family '" + *type + "' (linear, constant, cir)");
      return std::nullopt;
    }
    if (const auto m = r.integer(t, "mollify", path, false, std::nullopt, 1))
      c = mollify(*c, static_cast<std::size_t>(*m));
  } catch (const std::exception& e) {
    r.error(path, e.what());
    return std::nullopt;
  }
  return c;
}

std::optional<SveProblem> read_problem(Reader& r, const toml::table* t, const std::string& path,
                                       const std::optional<Kernel>& k, double T,
                                       const std::optional<Coefficient>& inherited_sigma) {
  if (!t) return std::nullopt;
  r.known_keys(t, path, {"curve", "drift", "diffusion"});
  const auto g = read_curve(r, r.table(t, "curve", path, true), join(path, "curve"));
  const auto b = read_coefficient(r, r.table(t, "drift", path, true), join(path, "drift"), true);
  std::optional<Coefficient> s;
  if (inherited_sigma && !t->get("diffusion"))
    s = inherited_sigma;
  else
    s = read_coefficient(r, r.table(t, "diffusion", path, true), join(path, "diffusion"), false);
  if (!g || !b || !s || !k) return std::nullopt;
  return SveProblem{*g, *k, *b, *s, T};
}

void require_splitting_kernel(Reader& r, const Kernel& k, const Kernel& exact) {
  const double k0 = k.meta().k0;
  if (!std::isfinite(k0))
    r.error("kernel", "K(0+) = inf (" + exact.describe() +
                          "): the splitting scheme needs a finite K(0+); add a [kernel.soe] block or use scheme = \"euler\"");
  else if (!(k0 > 0.0))
    r.error("kernel", "K(0+) = 0 (" + exact.describe() + "): the splitting scheme needs K(0+) > 0; use scheme = \"euler\"");
}

void read_sim(Reader& r, const toml::table* root, ExperimentConfig& cfg, bool need_N) {
  const toml::table* t = r.table(root, "sim", "", true);
  if (!t) return;
  r.known_keys(t, "sim", {"T", "N", "M", "n_paths", "seed", "scheme", "threads"});
  if (auto v = r.num(t, "T", "sim", false, 1.0)) {
    if (*v > 0.0)
      cfg.sim.T = *v;
    else
      r.error("sim.T", "must be positive");
  }
  if (auto v = r.integer(t, "N", "sim", need_N, 64, 1)) cfg.sim.N = static_cast<std::size_t>(*v);
  if (auto v = r.integer(t, "M", "sim", false, 1, 1)) cfg.sim.M = static_cast<std::size_t>(*v);
  if (auto v = r.integer(t, "n_paths", "sim", true, std::nullopt, 1)) cfg.sim.n_paths = static_cast<std::size_t>(*v);
  if (auto v = r.integer(t, "seed", "sim", true, std::nullopt, 0)) cfg.sim.seed = static_cast<std::uint64_t>(*v);
  if (auto v = r.integer(t, "threads", "sim", false, 0, 0)) cfg.sim.threads = static_cast<std::size_t>(*v);
  if (auto s = r.str(t, "scheme", "sim", false, std::string("splitting"))) {
    if (*s == "splitting")
      cfg.scheme = Scheme::splitting;
    else if (*s == "euler")
      cfg.scheme = Scheme::euler;
    else
      r.error("sim.scheme", "expected \"splitting\" or \"euler\"");
  }
}

void read_output(Reader& r, const toml::table* root, ExperimentConfig& cfg) {
  const toml::table* t = r.table(root, "output", "", false);
  if (!t) return;
  r.known_keys(t, "output", {"dir", "formats"});
  if (auto d = r.str(t, "dir", "output", false)) cfg.out_dir = *d;
  if (const toml::node* n = t->get("formats")) {
    if (!n->is_array()) {
      r.error("output.formats", "expected an array of strings");
      return;
    }
    cfg.formats.clear();
    for (const auto& el : *n->as_array()) {
      auto s = el.value<std::string>();
      if (!s || (*s != "csv" && *s != "svg"))
        r.error("output.formats", "entries must be \"csv\" or \"svg\"");
      else
        cfg.formats.push_back(*s);
    }
  }
}

void read_model(Reader& r, const toml::table* root, ExperimentConfig& cfg, bool need_problem2) {
  const toml::table* kt = r.table(root, "kernel", "", true);
  if (kt) {
    cfg.kernel_exact = read_kernel(r, kt, "kernel");
    if (cfg.kernel_exact) cfg.kernel = effective_kernel(r, kt, "kernel", *cfg.kernel_exact);
  }
  cfg.problem = read_problem(r, r.table(root, "problem", "", true), "problem", cfg.kernel, cfg.sim.T, std::nullopt);
  if (need_problem2) {
    std::optional<Coefficient> sigma;
    if (cfg.problem) sigma = cfg.problem->sigma;
    cfg.problem2 = read_problem(r, r.table(root, "problem2", "", true), "problem2", cfg.kernel, cfg.sim.T, sigma);
  }
}

}  // namespace

ParseResult parse_config(std::string_view text, std::string_view source) {
  ParseResult out;
  Reader r;
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "line " << e.source().begin.line << ", column " << e.source().begin.column << ": " << e.description();
    out.diagnostics.push_back({"<file>", os.str()});
    return out;
  }

  ExperimentConfig cfg;
  r.known_keys(&root, "", {"command", "kernel", "problem", "problem2", "sim", "compare", "convergence", "ml", "check",
                           "counterexample", "output"});
  const auto cmd = r.str(&root, "command", "", true);
  read_output(r, &root, cfg);
  if (!cmd) {
    out.diagnostics = std::move(r.diags);
    return out;
  }
  cfg.command = *cmd;

  if (*cmd == "simulate") {
    read_sim(r, &root, cfg, true);
    read_model(r, &root, cfg, false);
    if (cfg.kernel && cfg.kernel_exact && cfg.scheme == Scheme::splitting)
      require_splitting_kernel(r, *cfg.kernel, *cfg.kernel_exact);
  } else if (*cmd == "compare") {
    read_sim(r, &root, cfg, true);
    read_model(r, &root, cfg, true);
    if (cfg.kernel && cfg.kernel_exact && cfg.scheme == Scheme::splitting)
      require_splitting_kernel(r, *cfg.kernel, *cfg.kernel_exact);
    if (cfg.problem && cfg.problem2 && !cfg.problem->sigma.same_as(cfg.problem2->sigma))
      r.error("problem2.diffusion", "coupled problems must share the diffusion coefficient");
    const toml::table* ct = r.table(&root, "compare", "", false);
    r.known_keys(ct, "compare", {"delta"});
    const toml::node* p1 = root.get("problem");
    const toml::node* p2 = root.get("problem2");
    bool identical = p1 && p2 && p1->is_table() && p2->is_table() && *p1->as_table() == *p2->as_table();
    if (const auto d = r.num(ct, "delta", "compare", !identical, 0.0)) {
      if (*d >= 0.0)
        cfg.delta = *d;
      else
        r.error("compare.delta", "must be >= 0");
    }
  } else if (*cmd == "convergence") {
    read_sim(r, &root, cfg, false);
    read_model(r, &root, cfg, false);
    if (cfg.kernel && cfg.kernel_exact && cfg.scheme == Scheme::splitting)
      require_splitting_kernel(r, *cfg.kernel, *cfg.kernel_exact);
    const toml::table* ct = r.table(&root, "convergence", "", true);
    r.known_keys(ct, "convergence", {"Ns", "ref_factor", "t_eval"});
    if (const auto ns = r.num_array(ct, "Ns", "convergence", true)) {
      for (double v : *ns) {
        if (!(v >= 1.0) || v != std::floor(v)) {
          r.error("convergence.Ns", "entries must be positive integers");
          break;
        }
        cfg.convergence.Ns.push_back(static_cast<std::size_t>(v));
      }
      for (std::size_t i = 1; i < cfg.convergence.Ns.size(); ++i)
        if (cfg.convergence.Ns[i] <= cfg.convergence.Ns[i - 1]) r.error("convergence.Ns", "must be strictly increasing");
      if (cfg.convergence.Ns.empty()) r.error("convergence.Ns", "must not be empty");
    }
    if (auto v = r.integer(ct, "ref_factor", "convergence", false, 4, 1))
      cfg.convergence.ref_factor = static_cast<std::size_t>(*v);
    if (auto v = r.num(ct, "t_eval", "convergence", false, cfg.sim.T)) cfg.convergence.t_eval = *v;
    if (!cfg.convergence.Ns.empty()) {
      const std::size_t n_ref = cfg.convergence.ref_factor * cfg.convergence.Ns.back();
      for (std::size_t N : cfg.convergence.Ns) {
        if (n_ref % N != 0) r.error("convergence.Ns", "every N must divide ref_factor * max(Ns)");
        const double pos = cfg.convergence.t_eval * static_cast<double>(N) / cfg.sim.T;
        if (std::abs(pos - std::round(pos)) > 1e-9 || pos < 0.5 || pos > static_cast<double>(N) + 1e-9) {
          r.error("convergence.t_eval", "must be a grid point of every resolution in Ns");
          break;
        }
      }
    }
  } else if (*cmd == "ml") {
    const toml::table* mt = r.table(&root, "ml", "", true);
    r.known_keys(mt, "ml", {"alpha", "beta", "z", "scan", "laplace"});
    const auto a = r.num(mt, "alpha", "ml", true);
    const auto b = r.num(mt, "beta", "ml", true);
    if (a && !(*a > 0.0 && *a <= 2.0)) r.error("ml.alpha", "must lie in (0, 2]");
    if (b && !(*b > 0.0)) r.error("ml.beta", "must be positive");
    if (a) cfg.ml.alpha = *a;
    if (b) cfg.ml.beta = *b;
    if (auto z = r.num_array(mt, "z", "ml", false)) cfg.ml.z = *z;
    if (const toml::table* st = r.table(mt, "scan", "ml", false)) {
      r.known_keys(st, "ml.scan", {"t_max", "n_grid", "rate"});
      MlScan s;
      if (auto v = r.num(st, "t_max", "ml.scan", false, 50.0)) s.t_max = *v;
      if (auto v = r.integer(st, "n_grid", "ml.scan", false, 2000, 2)) s.n_grid = static_cast<std::size_t>(*v);
      if (auto v = r.num(st, "rate", "ml.scan", false, 1.0)) s.rate = *v;
      if (!(s.t_max > 0.0)) r.error("ml.scan.t_max", "must be positive");
      if (!(s.rate > 0.0)) r.error("ml.scan.rate", "must be positive");
      cfg.ml.scan = s;
    }
    if (const toml::table* lt = r.table(mt, "laplace", "ml", false)) {
      r.known_keys(lt, "ml.laplace", {"gamma", "lam", "s", "T_trunc"});
      MlLaplace l;
      if (auto v = r.num(lt, "gamma", "ml.laplace", true)) l.gamma = *v;
      if (auto v = r.num(lt, "lam", "ml.laplace", false, 1.0)) l.lam = *v;
      if (auto v = r.num(lt, "s", "ml.laplace", false, 1.0)) l.s = *v;
      if (auto v = r.num(lt, "T_trunc", "ml.laplace", false, 200.0)) l.T_trunc = *v;
      if (!(l.gamma > 0.0 && l.gamma < cfg.ml.alpha)) r.error("ml.laplace.gamma", "must lie in (0, alpha)");
      if (!(l.lam > 0.0 && l.s > 0.0 && l.T_trunc > 0.0)) r.error("ml.laplace", "lam, s and T_trunc must be positive");
      cfg.ml.laplace = l;
    }
    if (cfg.ml.z.empty() && !cfg.ml.scan && !cfg.ml.laplace) r.error("ml", "nothing to do: give z, scan or laplace");
  } else if (*cmd == "check") {
    if (root.get("sim")) read_sim(r, &root, cfg, false);
    // check needs neither paths nor a seed
    r.diags.erase(std::remove_if(r.diags.begin(), r.diags.end(),
                                 [](const Diagnostic& d) { return d.field == "sim.n_paths" || d.field == "sim.seed"; }),
                  r.diags.end());
    read_model(r, &root, cfg, false);
    const toml::table* ct = r.table(&root, "check", "", true);
    r.known_keys(ct, "check", {"q", "eta", "nonneg", "n_trials", "seed"});
    if (auto v = r.num(ct, "q", "check", true)) cfg.check.q = *v;
    if (auto v = r.num(ct, "eta", "check", true)) cfg.check.eta = *v;
    if (ct && ct->get("q") && !(cfg.check.q > 2.0)) r.error("check.q", "must exceed 2");
    if (ct && ct->get("eta") && !(cfg.check.eta > 0.0)) r.error("check.eta", "must be positive");
    if (auto v = r.boolean(ct, "nonneg", "check", false)) cfg.check.nonneg = *v;
    if (auto v = r.integer(ct, "n_trials", "check", false, 1000, 1)) cfg.check.n_trials = static_cast<std::size_t>(*v);
    if (auto v = r.integer(ct, "seed", "check", false, 1, 0)) cfg.check.seed = static_cast<std::uint64_t>(*v);
    if (cfg.check.nonneg && cfg.kernel) {
      const double k0 = cfg.kernel->meta().k0;
      if (!std::isfinite(k0) || !(k0 > 0.0))
        r.error("check.nonneg", "the non-negativity test needs 0 < K(0+) < inf; add a [kernel.soe] block");
    }
  } else if (*cmd == "counterexample") {
    read_sim(r, &root, cfg, true);
    const toml::table* ct = r.table(&root, "counterexample", "", true);
    r.known_keys(ct, "counterexample", {"alpha", "beta0", "x1", "x2"});
    if (auto v = r.num(ct, "alpha", "counterexample", true)) cfg.counterexample.alpha = *v;
    if (auto v = r.num(ct, "beta0", "counterexample", true)) cfg.counterexample.beta0 = *v;
    if (auto v = r.num(ct, "x1", "counterexample", false, 0.0)) cfg.counterexample.x1 = *v;
    if (auto v = r.num(ct, "x2", "counterexample", false, 1.0)) cfg.counterexample.x2 = *v;
    if (!(cfg.counterexample.alpha > 1.0 && cfg.counterexample.alpha < 2.0))
      r.error("counterexample.alpha", "must lie in (1, 2)");
    if (!(cfg.counterexample.beta0 > 0.0)) r.error("counterexample.beta0", "must be positive");
    if (!(cfg.counterexample.x2 >= cfg.counterexample.x1)) r.error("counterexample.x2", "must be >= x1");
  } else {
    r.error("command", "unknown command '" + *cmd + "' (simulate, compare, convergence, ml, check, counterexample)");
  }

  out.diagnostics = std::move(r.diags);
  if (out.diagnostics.empty()) out.config = std::move(cfg);
  return out;
}

std::vector<Diagnostic> validate_text(std::string_view text, std::string_view source) {
  return parse_config(text, source).diagnostics;
}

std::vector<Diagnostic> validate_file(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) return {{"<file>", "cannot read " + file.string()}};
  std::ostringstream ss;
  ss << is.rdbuf();
  return validate_text(ss.str(), file.string());
}

}  // namespace svesim::cli
