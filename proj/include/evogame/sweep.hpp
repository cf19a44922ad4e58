#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evogame/dynamics.hpp"
#include "evogame/hotelling.hpp"

namespace evogame::sweep {

/// A complete simulation setup. When the demand layer is present, pi1/pi2 in
/// the game parameters are replaced by the profits from market_outcome before
/// anything is simulated.
struct Scenario {
  std::string name;
  game::GameParams game;
  std::optional<hotelling::DemandParams> demand;
  game::StrategyState init;
  dynamics::IntegratorConfig integrator;

  void validate() const;
  game::GameParams resolved_game() const;
};

/// Integrate the scenario, dispatching on tau.
dynamics::Trajectory simulate(const Scenario& scenario);

enum class SweepParameter { s, tau, t1, t2, u2, g_beta, init_x, init_y };

std::string_view to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

/// Returns a copy of the scenario with one parameter replaced.
Scenario with_parameter(const Scenario& base, SweepParameter param, double value);

struct SweepSpec {
  Scenario base;
  SweepParameter parameter = SweepParameter::s;
  std::vector<double> values;

  void validate() const;
};

// Company-adoption threshold behind the secondary time-to-adoption metric.
inline constexpr double kAdoptionThreshold = 0.99;

struct SweepRun {
  double value = 0.0;
  dynamics::Trajectory trajectory;
  std::optional<double> time_to_adoption;  // first grid time with x >= 0.99
};

struct Sensitivity {
  double spread_government = 0.0;  // max over grid times of the y range across runs
  double spread_company = 0.0;     // same for x
  // Secondary metric: range of time_to_adoption, present when every run
  // reached the threshold.
  std::optional<double> spread_adoption_time;
};

struct SweepResult {
  std::vector<SweepRun> runs;  // ascending by parameter value
  Sensitivity sensitivity;
};

/// One integration per value with everything else held fixed. Runs are
/// ordered by parameter value; validation failures are annotated with the
/// offending value.
SweepResult run_sweep(const SweepSpec& spec);

/// Spread metrics over runs sharing a common time grid. Requires >= 2 runs.
Sensitivity sensitivity_metric(const SweepResult& result);

inline constexpr std::array<game::StrategyState, 4> kCorners = {
    {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}}};

struct BasinMap {
  int grid_n = 0;
  // Row-major over init points ((i+0.5)/n, (j+0.5)/n): index = j * n + i.
  // Each label is an index into kCorners, or empty when the run did not
  // converge to a corner by t_end.
  std::vector<std::optional<int>> labels;
};

/// Integrates from a grid_n x grid_n lattice of interior initial points and
/// labels each by the corner it converged to.
BasinMap basin_map(const Scenario& scenario, int grid_n);

}  // namespace evogame::sweep
