#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "evogame/dynamics.hpp"
#include "evogame/game.hpp"
#include "evogame/sweep.hpp"

namespace evogame::io {

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);

/// Header `t,x_company,y_government` plus one row per grid point.
void write_trajectory_csv(std::ostream& out, const dynamics::Trajectory& traj);

nlohmann::json trajectory_to_json(const dynamics::Trajectory& traj);
dynamics::Trajectory trajectory_from_json(const nlohmann::json& j);

/// Contents of sensitivity.json for a sweep: the spread metrics plus per-run
/// convergence points and times.
nlohmann::json sensitivity_report(const sweep::SweepResult& result);

nlohmann::json equilibrium_to_json(const game::Equilibrium& eq);

}  // namespace evogame::io
