#pragma once

#include <string>

#include <json.hpp>

#include "evogame/sweep.hpp"

namespace evogame::config {

/// Which sections a command needs beyond `game`.
struct Needs {
  bool init = false;    // simulation commands need a starting state
  bool demand = false;  // the demand command needs the demand section
};

/// Parse a scenario config document. Top-level sections: `game`, `demand`
/// (optional), `init`, `integrator`; field names match the parameter structs.
/// Unknown keys anywhere are a hard error.
sweep::Scenario parse_scenario(const nlohmann::json& doc, const Needs& needs);

/// Read and parse a config file. The scenario name is the file stem.
sweep::Scenario load_scenario(const std::string& path, const Needs& needs);

}  // namespace evogame::config
