#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace loops::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvariant = 2,
  kResource = 3,
  kNegative = 10,
  kInterrupted = 130,
};

/// Set from the SIGINT handler; long loops poll it and flush what they have.
std::atomic<bool>& interrupted();

struct ExperimentSpec {
  std::string name;
  std::uint64_t seed = 1;
  unsigned pairs = 50;
  unsigned h_class = 1;
  unsigned workers = 1;
  bool mlt = false;
};

/// Deterministic for a fixed spec; the report embeds the spec and the seed.
nlohmann::ordered_json run_experiment(const ExperimentSpec& spec);

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loops::cli
