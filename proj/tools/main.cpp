#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using nlohmann::json;
using chordnoise::cli::CliError;

// Registers the shared flags on a subcommand. Only flags given explicitly end
// up in `overrides`, so config-file values survive unless overridden.
void add_flags(CLI::App* sub, json& overrides, std::string& config_path) {
  sub->add_option_function<int>("--n", [&](const int& v) { overrides["n"] = v; }, "Hilbert space dimension N");
  sub->add_option_function<std::string>(
      "--family", [&](const std::string& v) { overrides["family"] = v; }, "depolarizing | pdc-line | gaussian");
  sub->add_option_function<double>("--epsilon", [&](const double& v) { overrides["epsilon"] = v; },
                                   "noise strength in [0, 1]");
  sub->add_option_function<double>("--sigma", [&](const double& v) { overrides["sigma"] = v; },
                                   "Gaussian kernel width");
  sub->add_option_function<std::string>(
      "--line", [&](const std::string& v) { overrides["line"] = v; }, "line coefficients n1,n2,n3");
  sub->add_flag_function("--cat,!--no-cat", [&](std::int64_t v) { overrides["cat"] = v > 0; },
                         "compose the kick with the cat map (default on)");
  sub->add_option_function<double>("--k", [&](const double& v) { overrides["k"] = v; }, "kick strength");
  sub->add_option_function<double>("--a", [&](const double& v) { overrides["a"] = v; },
                                   "truncation coefficient");
  sub->add_option_function<int>("--count", [&](const int& v) { overrides["count"] = v; },
                                "number of eigenvalues (0 = all)");
  sub->add_option_function<std::string>("--out", [&](const std::string& v) { overrides["out"] = v; },
                                        "output path");
  sub->add_option_function<std::string>(
      "--format", [&](const std::string& v) { overrides["format"] = v; }, "csv | json");
  sub->add_option_function<std::vector<std::string>>(
      "--in", [&](const std::vector<std::string>& v) { overrides["in"] = v; }, "spectrum files to compare");
  sub->add_option("--config", config_path, "JSON config object, or an array of objects for a sweep");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chord-diagonal noise channels on the discrete torus"};
  app.require_subcommand(1);
  json overrides = json::object();
  std::string config_path;
  const char* names[] = {"channel-spectrum", "evolve", "wigner", "propagator-spectrum", "stability"};
  const char* help[] = {"write the channel eigenvalue for every chord point",
                        "write cat-state Wigner grids before and after one channel step",
                        "write the cat-state Wigner grid",
                        "write the leading spectrum of the truncated noisy propagator",
                        "compare the leading eigenvalues of two spectrum files"};
  for (int i = 0; i < 5; ++i) add_flags(app.add_subcommand(names[i], help[i]), overrides, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    json file;  // null without --config
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw CliError("--config", "cannot open '" + config_path + "'");
      try {
        in >> file;
      } catch (const json::exception& e) {
        throw CliError("--config", e.what());
      }
    }
    for (const auto& cfg : chordnoise::cli::expand_configs(command, file, overrides)) {
      chordnoise::cli::execute(cfg, std::cout);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
