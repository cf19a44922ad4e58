#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evogame/config.hpp"
#include "evogame/io.hpp"

namespace fs = std::filesystem;

using namespace evogame;

namespace {

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    const std::string token =
        list.substr(start, comma == std::string::npos ? comma : comma - start);
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      throw ValidationError("--values: '" + token + "' is not a number");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

std::string format_complex(const std::complex<double>& z) {
  if (z.imag() == 0.0) return io::format_double(z.real());
  const std::string im = io::format_double(std::abs(z.imag()));
  return io::format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

std::string format_state(const game::StrategyState& st) {
  return "(" + io::format_double(st.x) + ", " + io::format_double(st.y) + ")";
}

void print_combination(const game::CombinationLabel& label) {
  std::cout << "combination label: " << label.label;
  if (label.boundary()) {
    std::cout << " (boundary:";
    if (label.subsidy_tie) std::cout << " u2 = g_beta*s + t1";
    if (label.profit_tie) std::cout << (label.subsidy_tie ? "," : "") << " pi1 = pi2";
    std::cout << ")";
  }
  std::cout << "\n";
}

void print_convergence(const dynamics::Trajectory& traj, double t_end) {
  if (traj.converged_to) {
    std::cout << "converged to (x_company, y_government) = "
              << format_state(*traj.converged_to) << " at t = "
              << io::format_double(*traj.convergence_time) << "\n";
  } else {
    std::cout << "no convergence within t_end = " << io::format_double(t_end)
              << "\n";
  }
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << contents;
  if (!out.flush()) throw ValidationError("failed writing '" + path.string() + "'");
}

struct SimulateArgs {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<double> s, tau, dt, t_end, init_x, init_y;
};

int cmd_simulate(const SimulateArgs& args) {
  if (args.format != "csv" && args.format != "json") {
    throw ValidationError("--format must be csv or json");
  }
  sweep::Scenario scenario =
      config::load_scenario(args.config_path, {.init = true});
  if (args.s) scenario.game.s = *args.s;
  if (args.tau) scenario.integrator.tau = *args.tau;
  if (args.dt) scenario.integrator.dt = *args.dt;
  if (args.t_end) scenario.integrator.t_end = *args.t_end;
  if (args.init_x) scenario.init.x = *args.init_x;
  if (args.init_y) scenario.init.y = *args.init_y;

  const dynamics::Trajectory traj = sweep::simulate(scenario);
  print_combination(game::combination_label(scenario.resolved_game()));
  print_convergence(traj, scenario.integrator.t_end);

  if (!args.out_path.empty()) {
    if (args.format == "csv") {
      std::ostringstream csv;
      io::write_trajectory_csv(csv, traj);
      write_file(args.out_path, csv.str());
    } else {
      write_file(args.out_path, io::trajectory_to_json(traj).dump(2) + "\n");
    }
    std::cout << "wrote " << args.out_path << " (" << traj.times.size()
              << " rows)\n";
  }
  return 0;
}

struct SweepArgs {
  std::string config_path;
  std::string param_name;
  std::string values;
  std::string out_dir;
};

int cmd_sweep(const SweepArgs& args) {
  const auto param = sweep::parse_sweep_parameter(args.param_name);
  if (!param) {
    throw ValidationError("--param: unknown parameter '" + args.param_name +
                          "' (expected s, tau, t1, t2, u2, g_beta, init_x, init_y)");
  }
  sweep::SweepSpec spec;
  spec.base = config::load_scenario(args.config_path, {.init = true});
  spec.parameter = *param;
  spec.values = parse_values(args.values);

  const sweep::SweepResult result = sweep::run_sweep(spec);

  // All computation is done; only now touch the filesystem.
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) throw ValidationError("cannot create '" + args.out_dir + "'");
  std::vector<fs::path> written;
  try {
    for (const sweep::SweepRun& run : result.runs) {
      const fs::path path =
          fs::path(args.out_dir) / (args.param_name + "_" +
                                    io::format_double(run.value) + ".csv");
      std::ostringstream csv;
      io::write_trajectory_csv(csv, run.trajectory);
      write_file(path, csv.str());
      written.push_back(path);
    }
    const fs::path sens_path = fs::path(args.out_dir) / "sensitivity.json";
    write_file(sens_path, io::sensitivity_report(result).dump(2) + "\n");
    written.push_back(sens_path);
  } catch (...) {
    for (const fs::path& path : written) fs::remove(path, ec);
    throw;
  }

  std::cout << "wrote " << result.runs.size() << " trajectories + sensitivity.json to "
            << args.out_dir << "\n";
  std::cout << "spread_government = "
            << io::format_double(result.sensitivity.spread_government)
            << ", spread_company = "
            << io::format_double(result.sensitivity.spread_company) << "\n";
  return 0;
}

int cmd_equilibria(const std::string& config_path, const std::string& format) {
  if (format != "table" && format != "json") {
    throw ValidationError("--format must be table or json");
  }
  const sweep::Scenario scenario = config::load_scenario(config_path, {});
  const game::GameParams params = scenario.resolved_game();
  const game::FixedPointSet set = game::classified_equilibria(params);
  const game::CombinationLabel label = game::combination_label(params);

  if (format == "json") {
    nlohmann::json points = nlohmann::json::array();
    for (const game::Equilibrium& eq : set.points) {
      points.push_back(io::equilibrium_to_json(eq));
    }
    const nlohmann::json j{{"combination_label", label.label},
                           {"boundary", label.boundary()},
                           {"degenerate", set.degenerate},
                           {"fixed_points", std::move(points)}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  print_combination(label);
  if (set.degenerate) {
    std::cout << "note: degenerate parameters (an interior-candidate denominator "
                 "is zero); only the corners are listed\n";
  }
  std::cout << std::left << std::setw(14) << "point" << std::setw(30)
            << "eigenvalues" << std::setw(16) << "classification"
            << "interior\n";
  for (const game::Equilibrium& eq : set.points) {
    std::cout << std::setw(14) << format_state(eq.point) << std::setw(30)
              << (format_complex(eq.eigenvalues[0]) + ", " +
                  format_complex(eq.eigenvalues[1]))
              << std::setw(16) << game::to_string(eq.classification)
              << (eq.is_interior ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_hotelling(const std::string& config_path, const std::string& mode_name,
                  const std::string& format) {
  const auto mode = hotelling::parse_formula_mode(mode_name);
  if (!mode) {
    throw ValidationError("--mode must be corrected or paper-verbatim");
  }
  if (format != "text" && format != "json") {
    throw ValidationError("--format must be text or json");
  }
  const sweep::Scenario scenario =
      config::load_scenario(config_path, {.demand = true});
  const hotelling::MarketOutcome mo = hotelling::market_outcome(*scenario.demand, *mode);

  if (mo.clamped) {
    std::cerr << "warning: raw indifference point "
              << io::format_double(mo.x_star_raw)
              << " lies outside [0,1]; clamped to " << io::format_double(mo.x_star)
              << "\n";
  }
  if (format == "json") {
    const nlohmann::json j{
        {"mode", std::string(hotelling::to_string(*mode))},
        {"x_star_raw", mo.x_star_raw},
        {"x_star", mo.x_star},
        {"share_new", mo.share_new},
        {"share_traditional", mo.share_traditional},
        {"pi1", mo.pi1},
        {"pi2", mo.pi2},
        {"clamped", mo.clamped},
        {"inconvenience_assumption_holds", mo.inconvenience_assumption_holds},
    };
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "mode: " << hotelling::to_string(*mode) << "\n"
            << "x_star_raw = " << io::format_double(mo.x_star_raw) << "\n"
            << "x_star = " << io::format_double(mo.x_star) << "\n"
            << "share_new = " << io::format_double(mo.share_new)
            << ", share_traditional = " << io::format_double(mo.share_traditional)
            << "\n"
            << "pi1 = " << io::format_double(mo.pi1)
            << ", pi2 = " << io::format_double(mo.pi2) << "\n"
            << "inconvenience assumption T*X < T*(1-X): "
            << (mo.inconvenience_assumption_holds ? "holds" : "does not hold")
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary subsidy/adoption game simulator"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Integrate one scenario and emit the trajectory");
  sim->add_option("config", sim_args.config_path, "Scenario config (JSON)")
      ->required();
  sim->add_option("--out", sim_args.out_path, "Output file for the trajectory");
  sim->add_option("--format", sim_args.format, "Output format: csv or json")
      ->capture_default_str();
  sim->add_option("--s", sim_args.s, "Override the subsidy amount s");
  sim->add_option("--tau", sim_args.tau, "Override the time delay tau");
  sim->add_option("--dt", sim_args.dt, "Override the step size dt");
  sim->add_option("--t-end", sim_args.t_end, "Override the horizon t_end");
  sim->add_option("--init-x", sim_args.init_x, "Override the initial x");
  sim->add_option("--init-y", sim_args.init_y, "Override the initial y");

  SweepArgs sweep_args;
  CLI::App* swp = app.add_subcommand(
      "sweep", "Run one scenario per parameter value and report sensitivity");
  swp->add_option("config", sweep_args.config_path, "Scenario config (JSON)")
      ->required();
  swp->add_option("--param", sweep_args.param_name,
                  "Parameter to sweep: s, tau, t1, t2, u2, g_beta, init_x, init_y")
      ->required();
  swp->add_option("--values", sweep_args.values, "Comma-separated values")
      ->required();
  swp->add_option("--out", sweep_args.out_dir, "Output directory")->required();

  std::string eq_config, eq_format = "table";
  CLI::App* eq = app.add_subcommand(
      "equilibria", "List fixed points with stability classification");
  eq->add_option("config", eq_config, "Scenario config (JSON)")->required();
  eq->add_option("--format", eq_format, "Output format: table or json")
      ->capture_default_str();

  std::string hot_config, hot_mode = "corrected", hot_format = "text";
  CLI::App* hot = app.add_subcommand(
      "hotelling", "Market split and firm profits from the demand layer");
  hot->add_option("config", hot_config, "Scenario config (JSON)")->required();
  hot->add_option("--mode", hot_mode, "corrected or paper-verbatim")
      ->capture_default_str();
  hot->add_option("--format", hot_format, "Output format: text or json")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_args);
    if (swp->parsed()) return cmd_sweep(sweep_args);
    if (eq->parsed()) return cmd_equilibria(eq_config, eq_format);
    if (hot->parsed()) return cmd_hotelling(hot_config, hot_mode, hot_format);
  } catch (const NumericsError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
