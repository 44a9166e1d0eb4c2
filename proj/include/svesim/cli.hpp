#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace svesim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCheckFailed = 3;

struct Diagnostic {
  std::string field;    ///< dotted path, e.g. "sim.seed"; "<file>" for parse errors
  std::string message;
};

std::string to_string(const Diagnostic& d);

/// Schema and cross-field checks. No side effects.
std::vector<Diagnostic> validate_text(std::string_view text, std::string_view source = "<config>");
std::vector<Diagnostic> validate_file(const std::filesystem::path& file);

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::size_t> threads;
  std::optional<std::vector<std::string>> formats;  ///< subset of {csv, svg}
};

/// Validates, dispatches the configured command and writes its artifacts.
/// Returns one of the kExit* codes; diagnostics and errors go to `log`.
int run_file(const std::filesystem::path& file, const RunOptions& opt, std::ostream& log);
int run_text(std::string_view text, const RunOptions& opt, std::ostream& log, std::string_view source = "<config>");

}  // namespace svesim::cli
