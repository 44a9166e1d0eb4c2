#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "svesim/cli.hpp"
#include "svesim/kernels.hpp"
#include "svesim/model.hpp"
#include "svesim/schemes.hpp"

namespace svesim::cli {

struct MlScan {
  double t_max = 50.0;
  std::size_t n_grid = 2000;
  double rate = 1.0;
};

struct MlLaplace {
  double gamma = 0.5;
  double lam = 1.0;
  double s = 1.0;
  double T_trunc = 200.0;
};

struct MlBlock {
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<double> z;
  std::optional<MlScan> scan;
  std::optional<MlLaplace> laplace;
};

struct CheckBlock {
  double q = 4.0;
  double eta = 1.0;
  bool nonneg = false;
  std::size_t n_trials = 1000;
  std::uint64_t seed = 1;
};

struct ConvergenceBlock {
  std::vector<std::size_t> Ns;
  std::size_t ref_factor = 4;
  double t_eval = 0.0;
};

struct CounterexampleBlock {
  double alpha = 1.5;
  double beta0 = 1.0;
  double x1 = 0.0;
  double x2 = 1.0;
};

struct ExperimentConfig {
  std::string command;
  std::optional<Kernel> kernel;  ///< kernel used by the schemes (after any approximation)
  std::optional<Kernel> kernel_exact;
  std::optional<SveProblem> problem;
  std::optional<SveProblem> problem2;
  SimConfig sim;
  Scheme scheme = Scheme::splitting;
  double delta = 0.0;
  ConvergenceBlock convergence;
  MlBlock ml;
  CheckBlock check;
  CounterexampleBlock counterexample;
  std::filesystem::path out_dir = "out";
  std::vector<std::string> formats{"csv", "svg"};
};

struct ParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<Diagnostic> diagnostics;
};

ParseResult parse_config(std::string_view text, std::string_view source);

}  // namespace svesim::cli
