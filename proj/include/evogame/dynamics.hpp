#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "evogame/game.hpp"

namespace evogame::dynamics {

/// Fixed-step integration settings. A positive tau turns on the delayed
/// system and must be an integer multiple of dt.
struct IntegratorConfig {
  double dt = 0.01;
  double t_end = 100.0;
  double tau = 0.0;
  double convergence_tol = 1e-6;
  double convergence_window = 5.0;

  void validate() const;  // throws ValidationError

  /// Number of dt steps covering [0, t_end] (floor semantics).
  std::size_t step_count() const;

  /// tau expressed in steps; validates the integer-multiple restriction.
  std::size_t delay_steps() const;
};

struct Trajectory {
  std::vector<double> times;               // times[k] = k * dt
  std::vector<game::StrategyState> states;  // same length as times
  std::optional<game::StrategyState> converged_to;  // state at t_end
  std::optional<double> convergence_time;
  double max_overshoot = 0.0;  // worst pre-clamp boundary violation seen
};

/// Classical RK4 on the replicator system (tau must be 0). States are clamped
/// to [0,1] after each step; an overshoot beyond 1e-6 aborts with
/// NumericsError since it signals a too-large dt, not round-off.
Trajectory integrate(const game::GameParams& params, const game::StrategyState& init,
                     const IntegratorConfig& cfg);

/// Method-of-steps RK4 for the delayed system (tau > 0): each player observes
/// the opponent's strategy with lag tau, own-state factors stay instantaneous.
/// The history is constant and equal to init on [-tau, 0]; mid-step stage
/// lookups interpolate linearly between stored grid points.
Trajectory integrate_delayed(const game::GameParams& params,
                             const game::StrategyState& init,
                             const IntegratorConfig& cfg);

struct Convergence {
  game::StrategyState state;  // state at t_end
  double time = 0.0;          // start of the first quiet window
};

/// First time after which the right-hand-side max-norm stays below
/// convergence_tol for the full convergence_window. For delayed trajectories
/// the lagged arguments are read back from the stored grid.
std::optional<Convergence> detect_convergence(const Trajectory& traj,
                                              const game::GameParams& params,
                                              const IntegratorConfig& cfg);

}  // namespace evogame::dynamics
