#pragma once

// Shared fixtures and process helpers for the test binaries.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "evogame/game.hpp"
#include "evogame/sweep.hpp"

namespace testsupport {

// Combination-4 baseline of the subsidy sensitivity experiment: adoption is
// intrinsically profitable and the subsidy costs the government more than it
// returns, so the unique ESS is (adopt, no-subsidy).
inline evogame::game::GameParams baseline_params(double s = 0.5) {
  evogame::game::GameParams p;
  p.u2 = 0.5;
  p.t1 = 1.0;
  p.g_beta = 1.0;
  p.t2 = 0.5;
  p.pi1 = 3.0;
  p.pi2 = 2.0;
  p.s = s;
  return p;
}

inline evogame::game::StrategyState baseline_init() { return {0.2, 0.8}; }

inline evogame::sweep::Scenario baseline_scenario(double s = 0.5) {
  evogame::sweep::Scenario scenario;
  scenario.name = "baseline";
  scenario.game = baseline_params(s);
  scenario.init = baseline_init();
  return scenario;
}

// Random Combination-4 parameter set with eigenvalue magnitudes bounded away
// from zero so every interior trajectory settles well before t_end = 200.
inline evogame::game::GameParams random_combination4(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    evogame::game::GameParams p;
    p.u2 = unit(rng);
    p.t1 = 0.3 + 1.2 * unit(rng);
    p.s = 0.2 + 1.3 * unit(rng);
    p.g_beta = 0.4 + 0.6 * unit(rng);
    p.t2 = 0.3 + 0.7 * unit(rng);
    p.pi2 = 0.5 + 1.5 * unit(rng);
    p.pi1 = p.pi2 + 0.3 + 1.7 * unit(rng);
    if (p.g_beta * p.s + p.t1 - p.u2 >= 0.3) return p;
  }
}

// Unconstrained-but-valid draw for algebraic identity checks.
inline evogame::game::GameParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> wide(-3.0, 3.0);
  evogame::game::GameParams p;
  p.u1 = wide(rng);
  p.u2 = wide(rng);
  p.u3 = wide(rng);
  p.t = 2.0 * unit(rng);
  p.t1 = 2.0 * unit(rng);
  p.t2 = 2.0 * unit(rng);
  p.s = 2.0 * unit(rng);
  p.g_beta = unit(rng);
  p.pi1 = wide(rng);
  p.pi2 = wide(rng);
  return p;
}

inline evogame::game::StrategyState random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return {unit(rng), unit(rng)};
}

// --- process helpers for exercising the CLI binary ---

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string cli_binary() {
  const char* bin = std::getenv("EVOGAME_CLI");
  return bin ? bin : "";
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CliResult run_cli(const std::string& args,
                         const std::filesystem::path& scratch) {
  const std::filesystem::path out_path = scratch / "cli_stdout.txt";
  const std::filesystem::path err_path = scratch / "cli_stderr.txt";
  const std::string cmd = cli_binary() + " " + args + " >" + out_path.string() +
                          " 2>" + err_path.string();
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

// Fresh scratch directory under the system temp dir; removed by the caller.
inline std::filesystem::path make_scratch_dir(const std::string& tag) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("evogame_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

// Scenario config for the baseline sensitivity experiment.
inline std::string baseline_config_json() {
  return R"({
  "game": {"u2": 0.5, "t1": 1, "g_beta": 1, "t2": 0.5, "pi1": 3, "pi2": 2, "s": 0.5},
  "init": {"x": 0.2, "y": 0.8},
  "integrator": {"dt": 0.01, "t_end": 100}
})";
}

}  // namespace testsupport
