#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace stfields::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfigError = 2,
  kExitModelInvalid = 3,
  kExitInternalError = 4,
};

enum class Format { Csv, Json };

struct Options {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = ".";
  Format format = Format::Csv;
  std::optional<int> threads;
  bool series = false;
  std::optional<int> d_lift;
  std::optional<int> n;  // expand without a config file
  std::optional<int> d;
};

/// Runs one command and maps library errors onto the exit-code contract.
/// Nothing is written under `out` unless the command succeeds up to its
/// output stage.
int run(const std::string& command, const Options& opts, std::ostream& out, std::ostream& err);

/// --threads, then STFIELDS_THREADS, then the OpenMP default.
void configure_threads(const Options& opts);

}  // namespace stfields::cli
