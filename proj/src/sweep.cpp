#include "evogame/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace evogame::sweep {

void Scenario::validate() const {
  game.validate();
  if (demand) demand->validate();
  init.validate();
  integrator.validate();
}

game::GameParams Scenario::resolved_game() const {
  game::GameParams resolved = game;
  if (demand) {
    const hotelling::MarketOutcome mo = hotelling::market_outcome(*demand);
    resolved.pi1 = mo.pi1;
    resolved.pi2 = mo.pi2;
  }
  return resolved;
}

dynamics::Trajectory simulate(const Scenario& scenario) {
  scenario.validate();
  const game::GameParams p = scenario.resolved_game();
  if (scenario.integrator.tau > 0.0) {
    return dynamics::integrate_delayed(p, scenario.init, scenario.integrator);
  }
  return dynamics::integrate(p, scenario.init, scenario.integrator);
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::s: return "s";
    case SweepParameter::tau: return "tau";
    case SweepParameter::t1: return "t1";
    case SweepParameter::t2: return "t2";
    case SweepParameter::u2: return "u2";
    case SweepParameter::g_beta: return "g_beta";
    case SweepParameter::init_x: return "init_x";
    case SweepParameter::init_y: return "init_y";
  }
  return "?";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (SweepParameter p : {SweepParameter::s, SweepParameter::tau,
                           SweepParameter::t1, SweepParameter::t2,
                           SweepParameter::u2, SweepParameter::g_beta,
                           SweepParameter::init_x, SweepParameter::init_y}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

Scenario with_parameter(const Scenario& base, SweepParameter param, double value) {
  Scenario out = base;
  switch (param) {
    case SweepParameter::s: out.game.s = value; break;
    case SweepParameter::tau: out.integrator.tau = value; break;
    case SweepParameter::t1: out.game.t1 = value; break;
    case SweepParameter::t2: out.game.t2 = value; break;
    case SweepParameter::u2: out.game.u2 = value; break;
    case SweepParameter::g_beta: out.game.g_beta = value; break;
    case SweepParameter::init_x: out.init.x = value; break;
    case SweepParameter::init_y: out.init.y = value; break;
  }
  return out;
}

void SweepSpec::validate() const {
  base.validate();
  if (values.empty()) throw ValidationError("sweep: values must be nonempty");
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("sweep: values must be finite");
  }
}

namespace {

std::optional<double> time_to_adoption(const dynamics::Trajectory& traj) {
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    if (traj.states[k].x >= kAdoptionThreshold) return traj.times[k];
  }
  return std::nullopt;
}

void check_common_grid(const std::vector<SweepRun>& runs) {
  const auto& first = runs.front().trajectory;
  if (first.times.size() < 2) {
    throw ValidationError("sensitivity: trajectories are too short");
  }
  for (const SweepRun& run : runs) {
    const auto& traj = run.trajectory;
    const bool same_size = traj.times.size() == first.times.size();
    if (!same_size || traj.times[1] != first.times[1]) {
      throw ValidationError("sensitivity: runs must share one time grid");
    }
  }
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();

  std::vector<double> ordered = spec.values;
  std::stable_sort(ordered.begin(), ordered.end());

  SweepResult result;
  result.runs.reserve(ordered.size());
  for (double value : ordered) {
    try {
      const Scenario scenario = with_parameter(spec.base, spec.parameter, value);
      SweepRun run;
      run.value = value;
      run.trajectory = simulate(scenario);
      run.time_to_adoption = time_to_adoption(run.trajectory);
      result.runs.push_back(std::move(run));
    } catch (const ValidationError& e) {
      std::ostringstream msg;
      msg << "sweep value " << to_string(spec.parameter) << "=" << value << ": "
          << e.what();
      throw ValidationError(msg.str());
    }
  }

  if (result.runs.size() >= 2) {
    result.sensitivity = sensitivity_metric(result);
  }
  return result;
}

Sensitivity sensitivity_metric(const SweepResult& result) {
  const std::vector<SweepRun>& runs = result.runs;
  if (runs.size() < 2) {
    throw ValidationError("sensitivity: needs at least two runs");
  }
  check_common_grid(runs);

  Sensitivity s;
  const std::size_t len = runs.front().trajectory.times.size();
  for (std::size_t k = 0; k < len; ++k) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const SweepRun& run : runs) {
      const game::StrategyState& st = run.trajectory.states[k];
      x_lo = std::min(x_lo, st.x);
      x_hi = std::max(x_hi, st.x);
      y_lo = std::min(y_lo, st.y);
      y_hi = std::max(y_hi, st.y);
    }
    s.spread_company = std::max(s.spread_company, x_hi - x_lo);
    s.spread_government = std::max(s.spread_government, y_hi - y_lo);
  }

  double t_lo = std::numeric_limits<double>::infinity(), t_hi = -t_lo;
  bool all_adopted = true;
  for (const SweepRun& run : runs) {
    if (!run.time_to_adoption) {
      all_adopted = false;
      break;
    }
    t_lo = std::min(t_lo, *run.time_to_adoption);
    t_hi = std::max(t_hi, *run.time_to_adoption);
  }
  if (all_adopted) s.spread_adoption_time = t_hi - t_lo;
  return s;
}

BasinMap basin_map(const Scenario& scenario, int grid_n) {
  if (grid_n < 2) throw ValidationError("basin_map: grid_n must be >= 2");
  scenario.validate();

  // A run counts as landing on a corner when it converged and its final state
  // sits within this distance of the corner.
  constexpr double corner_tol = 1e-3;

  BasinMap map;
  map.grid_n = grid_n;
  map.labels.resize(static_cast<std::size_t>(grid_n) * grid_n);
  for (int j = 0; j < grid_n; ++j) {
    for (int i = 0; i < grid_n; ++i) {
      Scenario cell = scenario;
      cell.init = {(i + 0.5) / grid_n, (j + 0.5) / grid_n};
      const dynamics::Trajectory traj = simulate(cell);
      std::optional<int> label;
      if (traj.converged_to) {
        for (std::size_t c = 0; c < kCorners.size(); ++c) {
          if (std::abs(traj.converged_to->x - kCorners[c].x) <= corner_tol &&
              std::abs(traj.converged_to->y - kCorners[c].y) <= corner_tol) {
            label = static_cast<int>(c);
            break;
          }
        }
      }
      map.labels[static_cast<std::size_t>(j) * grid_n + i] = label;
    }
  }
  return map;
}

}  // namespace evogame::sweep
