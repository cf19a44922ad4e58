#include "evogame/config.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>

#include "evogame/errors.hpp"

namespace evogame::config {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw ValidationError("config: " + msg);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown key '" + item.key() + "' in " + where);
  }
}

const json* section(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) return nullptr;
  if (!it->is_object()) fail(std::string(name) + " must be an object");
  return &*it;
}

double number(const json& sec, const std::string& where, const char* key,
              double fallback, bool required = false) {
  const auto it = sec.find(key);
  if (it == sec.end()) {
    if (required) fail(where + "." + key + " is required");
    return fallback;
  }
  if (!it->is_number()) fail(where + "." + key + " must be a number");
  return it->get<double>();
}

bool boolean(const json& sec, const std::string& where, const char* key,
             bool fallback) {
  const auto it = sec.find(key);
  if (it == sec.end()) return fallback;
  if (!it->is_boolean()) fail(where + "." + key + " must be a boolean");
  return it->get<bool>();
}

game::GameParams parse_game(const json& sec) {
  check_keys(sec, "game", {"u1", "u2", "u3", "t", "t1", "t2", "s", "g_beta",
                           "pi1", "pi2", "decay_lambda"});
  game::GameParams p;
  p.u1 = number(sec, "game", "u1", p.u1);
  p.u2 = number(sec, "game", "u2", p.u2);
  p.u3 = number(sec, "game", "u3", p.u3);
  p.t = number(sec, "game", "t", p.t);
  p.t1 = number(sec, "game", "t1", p.t1);
  p.t2 = number(sec, "game", "t2", p.t2);
  p.s = number(sec, "game", "s", p.s);
  p.g_beta = number(sec, "game", "g_beta", p.g_beta);
  p.pi1 = number(sec, "game", "pi1", p.pi1);
  p.pi2 = number(sec, "game", "pi2", p.pi2);
  p.decay_lambda = number(sec, "game", "decay_lambda", p.decay_lambda);
  return p;
}

hotelling::DemandParams parse_demand(const json& sec) {
  check_keys(sec, "demand",
             {"T", "V1", "V2", "q", "e1", "e2", "h1", "mu1", "p1", "p2", "P1",
              "P2", "C1", "C2", "assume_equal_base_value"});
  hotelling::DemandParams d;
  d.T = number(sec, "demand", "T", d.T, /*required=*/true);
  d.V1 = number(sec, "demand", "V1", d.V1);
  d.V2 = number(sec, "demand", "V2", d.V2);
  d.q = number(sec, "demand", "q", d.q);
  d.e1 = number(sec, "demand", "e1", d.e1);
  d.e2 = number(sec, "demand", "e2", d.e2);
  d.h1 = number(sec, "demand", "h1", d.h1);
  d.mu1 = number(sec, "demand", "mu1", d.mu1);
  d.p1 = number(sec, "demand", "p1", d.p1);
  d.p2 = number(sec, "demand", "p2", d.p2);
  d.P1 = number(sec, "demand", "P1", d.P1);
  d.P2 = number(sec, "demand", "P2", d.P2);
  d.C1 = number(sec, "demand", "C1", d.C1);
  d.C2 = number(sec, "demand", "C2", d.C2);
  d.assume_equal_base_value =
      boolean(sec, "demand", "assume_equal_base_value", d.assume_equal_base_value);
  return d;
}

game::StrategyState parse_init(const json& sec) {
  check_keys(sec, "init", {"x", "y"});
  game::StrategyState st;
  st.x = number(sec, "init", "x", 0.0, /*required=*/true);
  st.y = number(sec, "init", "y", 0.0, /*required=*/true);
  return st;
}

dynamics::IntegratorConfig parse_integrator(const json& sec) {
  check_keys(sec, "integrator",
             {"dt", "t_end", "tau", "convergence_tol", "convergence_window"});
  dynamics::IntegratorConfig cfg;
  cfg.dt = number(sec, "integrator", "dt", cfg.dt);
  cfg.t_end = number(sec, "integrator", "t_end", cfg.t_end);
  cfg.tau = number(sec, "integrator", "tau", cfg.tau);
  cfg.convergence_tol =
      number(sec, "integrator", "convergence_tol", cfg.convergence_tol);
  cfg.convergence_window =
      number(sec, "integrator", "convergence_window", cfg.convergence_window);
  return cfg;
}

}  // namespace

sweep::Scenario parse_scenario(const json& doc, const Needs& needs) {
  if (!doc.is_object()) fail("document root must be an object");
  check_keys(doc, "the document root", {"game", "demand", "init", "integrator"});

  sweep::Scenario scenario;
  if (const json* sec = section(doc, "game")) scenario.game = parse_game(*sec);
  if (const json* sec = section(doc, "demand")) {
    scenario.demand = parse_demand(*sec);
  } else if (needs.demand) {
    fail("a demand section is required for this command");
  }
  if (const json* sec = section(doc, "init")) {
    scenario.init = parse_init(*sec);
  } else if (needs.init) {
    fail("an init section is required for this command");
  }
  if (const json* sec = section(doc, "integrator")) {
    scenario.integrator = parse_integrator(*sec);
  }

  scenario.validate();
  return scenario;
}

sweep::Scenario load_scenario(const std::string& path, const Needs& needs) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("'" + path + "' is not valid JSON: " + e.what());
  }
  sweep::Scenario scenario = parse_scenario(doc, needs);
  scenario.name = std::filesystem::path(path).stem().string();
  return scenario;
}

}  // namespace evogame::config
