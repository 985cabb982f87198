#pragma once

// Command implementations behind the chordnoise executable. Every command
// turns a validated RunConfig into a Table, which is then written as CSV or
// JSON with the config embedded.

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "chordnoise/spectral.hpp"

namespace chordnoise::cli {

/// Invalid user input; `flag()` names the offending command-line flag.
class CliError : public std::invalid_argument {
 public:
  CliError(std::string flag, const std::string& message)
      : std::invalid_argument(flag + ": " + message), flag_(std::move(flag)) {}
  const std::string& flag() const { return flag_; }

 private:
  std::string flag_;
};

struct RunConfig {
  std::string command;
  int n = 32;
  std::string family = "depolarizing";
  double epsilon = 0.5;
  double sigma = 0.0;  // required (> 0) for the gaussian family
  std::array<int, 3> line{1, -1, 0};
  bool cat = true;
  double k = 0.0;
  double a = 2.0;
  int count = 0;  // 0 means every eigenvalue
  std::string out;
  std::string format = "csv";
  std::vector<std::string> inputs;
};

/// Keys mirror the long flag names: n, family, epsilon, sigma, line, cat, k,
/// a, count, out, format, in. Unknown keys are rejected.
RunConfig config_from_json(const std::string& command, const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

/// One run per object: a config file holding an array expands into a sweep.
/// Explicit flags in `overrides` take precedence over file entries.
std::vector<RunConfig> expand_configs(const std::string& command, const nlohmann::json& file,
                                      const nlohmann::json& overrides);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Table run_channel_spectrum(const RunConfig& cfg);
/// Wigner grids of the cat state before and after one channel step.
Table run_evolve(const RunConfig& cfg);
/// Wigner grid of the cat state.
Table run_wigner(const RunConfig& cfg);
Table run_propagator_spectrum(const RunConfig& cfg, int threads = 1);
/// Compares the leading `count` eigenvalues of two spectrum files.
double run_stability(const RunConfig& cfg);

/// Writes to a sibling temporary file and renames it into place.
void write_table(const Table& table, const RunConfig& cfg);
/// Reads the re/im columns of a spectrum file in either format.
SpectrumResult read_spectrum(const std::string& path);

/// Thread count from CHORDNOISE_THREADS, defaulting to the hardware count.
int threads_from_env();

/// Runs one config and writes its output. Progress lines go to `log`.
void execute(const RunConfig& cfg, std::ostream& log);

}  // namespace chordnoise::cli
