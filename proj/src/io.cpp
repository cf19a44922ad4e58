#include "evogame/io.hpp"

#include <charconv>

namespace evogame::io {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& out, const dynamics::Trajectory& traj) {
  out << "t,x_company,y_government\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << format_double(traj.times[k]) << ',' << format_double(traj.states[k].x)
        << ',' << format_double(traj.states[k].y) << '\n';
  }
}

namespace {

nlohmann::json state_to_json(const game::StrategyState& st) {
  return {{"x", st.x}, {"y", st.y}};
}

game::StrategyState state_from_json(const nlohmann::json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>()};
}

}  // namespace

nlohmann::json trajectory_to_json(const dynamics::Trajectory& traj) {
  nlohmann::json states = nlohmann::json::array();
  for (const game::StrategyState& st : traj.states) states.push_back(state_to_json(st));
  nlohmann::json j{
      {"times", traj.times},
      {"states", std::move(states)},
      {"converged_to", nullptr},
      {"convergence_time", nullptr},
      {"max_overshoot", traj.max_overshoot},
  };
  if (traj.converged_to) j["converged_to"] = state_to_json(*traj.converged_to);
  if (traj.convergence_time) j["convergence_time"] = *traj.convergence_time;
  return j;
}

dynamics::Trajectory trajectory_from_json(const nlohmann::json& j) {
  dynamics::Trajectory traj;
  traj.times = j.at("times").get<std::vector<double>>();
  for (const nlohmann::json& st : j.at("states")) {
    traj.states.push_back(state_from_json(st));
  }
  if (!j.at("converged_to").is_null()) {
    traj.converged_to = state_from_json(j.at("converged_to"));
  }
  if (!j.at("convergence_time").is_null()) {
    traj.convergence_time = j.at("convergence_time").get<double>();
  }
  traj.max_overshoot = j.at("max_overshoot").get<double>();
  return traj;
}

nlohmann::json sensitivity_report(const sweep::SweepResult& result) {
  nlohmann::json runs = nlohmann::json::array();
  for (const sweep::SweepRun& run : result.runs) {
    nlohmann::json r{
        {"value", run.value},
        {"converged_to", nullptr},
        {"convergence_time", nullptr},
        {"time_to_adoption", nullptr},
    };
    if (run.trajectory.converged_to) {
      r["converged_to"] = state_to_json(*run.trajectory.converged_to);
    }
    if (run.trajectory.convergence_time) {
      r["convergence_time"] = *run.trajectory.convergence_time;
    }
    if (run.time_to_adoption) r["time_to_adoption"] = *run.time_to_adoption;
    runs.push_back(std::move(r));
  }

  nlohmann::json j{
      {"spread_government", result.sensitivity.spread_government},
      {"spread_company", result.sensitivity.spread_company},
      {"adoption_threshold", sweep::kAdoptionThreshold},
      {"spread_adoption_time", nullptr},
      {"runs", std::move(runs)},
  };
  if (result.sensitivity.spread_adoption_time) {
    j["spread_adoption_time"] = *result.sensitivity.spread_adoption_time;
  }
  return j;
}

nlohmann::json equilibrium_to_json(const game::Equilibrium& eq) {
  nlohmann::json eigs = nlohmann::json::array();
  for (const auto& ev : eq.eigenvalues) {
    eigs.push_back({{"re", ev.real()}, {"im", ev.imag()}});
  }
  return {
      {"point", state_to_json(eq.point)},
      {"jacobian", {{eq.jacobian[0][0], eq.jacobian[0][1]},
                    {eq.jacobian[1][0], eq.jacobian[1][1]}}},
      {"eigenvalues", std::move(eigs)},
      {"classification", std::string(game::to_string(eq.classification))},
      {"is_interior", eq.is_interior},
  };
}

}  // namespace evogame::io
