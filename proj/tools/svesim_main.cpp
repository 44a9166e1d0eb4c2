#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "svesim/cli.hpp"

namespace {

std::vector<std::string> split_formats(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification tools for stochastic Volterra equations"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::size_t threads = 0;
  std::string formats;

  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config, "Experiment config (TOML)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  run->add_option("--threads", threads, "Worker threads (0: all cores)");
  run->add_option("--format", formats, "Comma-separated subset of csv,svg")
      ->check([](const std::string& s) -> std::string {
        for (const auto& f : split_formats(s))
          if (f != "csv" && f != "svg") return "unknown format '" + f + "'";
        return {};
      });

  CLI::App* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", config, "Experiment config (TOML)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : svesim::cli::kExitInvalid;
  }

  if (*validate) {
    const auto diags = svesim::cli::validate_file(config);
    for (const auto& d : diags) std::cerr << config << ": " << svesim::cli::to_string(d) << '\n';
    if (diags.empty()) std::cout << config << ": ok\n";
    return diags.empty() ? svesim::cli::kExitOk : svesim::cli::kExitInvalid;
  }

  svesim::cli::RunOptions opt;
  if (!out_dir.empty()) opt.out_dir = out_dir;
  if (run->count("--threads")) opt.threads = threads;
  if (!formats.empty()) opt.formats = split_formats(formats);
  return svesim::cli::run_file(config, opt, std::cerr);
}
