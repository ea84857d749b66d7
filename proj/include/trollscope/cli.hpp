#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace trollscope::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitInvalid = 2,
  kExitDegenerate = 3,
};

struct SimulateOptions {
  std::optional<std::string> scenario;   // "example1" | "example2"
  std::optional<std::string> spec_path;  // scenario JSON
  std::optional<std::uint64_t> seed;     // overrides the spec's seed
  std::string out_path;
};

struct DetectOptions {
  std::string thread_path;
  std::optional<std::string> json_path;
};

struct ConflictOptions {
  std::string thread_path;
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
};

int simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int detect(const DetectOptions& options, std::ostream& out, std::ostream& err);
int conflict(const ConflictOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand. Usage errors exit with
/// kExitInvalid.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trollscope::cli
