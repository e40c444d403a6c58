#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace spaceform::cli {

// Exit codes: 0 success, 1 tolerance failure, 2 input error.
inline constexpr int kOk = 0;
inline constexpr int kToleranceFailure = 1;
inline constexpr int kInputError = 2;

struct Options {
  std::string command;
  std::string config;
  std::optional<double> tolerance;
  int threads = 1;
  std::string out = ".";
};

// Reads SPACEFORM_THREADS when --threads is absent.
int resolve_threads(std::optional<int> flag);

int run_check(const Options& o, std::ostream& log);
int run_twistor(const Options& o, std::ostream& log);
int run_reconstruct(const Options& o, std::ostream& log);
int run_construct(const Options& o, std::ostream& log);
int run_group(const Options& o, std::ostream& log);
int run_export(const Options& o, std::ostream& log);

// Parses argv, dispatches, and maps every failure onto the three exit codes.
int main(int argc, char** argv, std::ostream& log, std::ostream& err);

}  // namespace spaceform::cli
