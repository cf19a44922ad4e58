#include <doctest.h>

#include <cmath>
#include <random>

#include "evogame/dynamics.hpp"
#include "support.hpp"

using namespace evogame;
using namespace evogame::dynamics;
using evogame::game::GameParams;
using evogame::game::StrategyState;
using testsupport::baseline_init;
using testsupport::baseline_params;

namespace {

IntegratorConfig config(double dt, double t_end, double tau = 0.0) {
  IntegratorConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.tau = tau;
  return cfg;
}

double max_state_gap(const Trajectory& a, const Trajectory& b, std::size_t k) {
  return std::max(std::abs(a.states[k].x - b.states[k].x),
                  std::abs(a.states[k].y - b.states[k].y));
}

}  // namespace

TEST_CASE("integrator config validation") {
  CHECK_THROWS_AS(config(0.0, 10.0).validate(), ValidationError);
  CHECK_THROWS_AS(config(-0.01, 10.0).validate(), ValidationError);
  CHECK_THROWS_AS(config(0.01, 0.005).validate(), ValidationError);
  CHECK_THROWS_AS(config(0.01, 10.0, -1.0).validate(), ValidationError);
  CHECK_THROWS_AS(config(0.01, 10.0, 0.015).validate(), ValidationError);
  CHECK_NOTHROW(config(0.01, 10.0, 0.03).validate());

  IntegratorConfig cfg = config(0.01, 10.0);
  cfg.convergence_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  CHECK(config(0.01, 100.0).step_count() == 10000);
  CHECK(config(0.02, 10.0).step_count() == 500);
  CHECK(config(0.01, 10.0, 1.0).delay_steps() == 100);
}

TEST_CASE("wrong integrator for the delay setting") {
  const GameParams p = baseline_params();
  CHECK_THROWS_AS(integrate(p, baseline_init(), config(0.01, 10.0, 0.5)),
                  ValidationError);
  CHECK_THROWS_AS(integrate_delayed(p, baseline_init(), config(0.01, 10.0, 0.0)),
                  ValidationError);
}

TEST_CASE("corners are fixed points of the integration") {
  const GameParams p = baseline_params();
  for (double cx : {0.0, 1.0}) {
    for (double cy : {0.0, 1.0}) {
      const StrategyState corner{cx, cy};
      const Trajectory traj = integrate(p, corner, config(0.01, 10.0));
      for (const StrategyState& st : traj.states) {
        CHECK(st.x == cx);
        CHECK(st.y == cy);
      }
      REQUIRE(traj.converged_to.has_value());
      CHECK(traj.converged_to->x == cx);
      CHECK(traj.converged_to->y == cy);
      CHECK(*traj.convergence_time == 0.0);
    }
  }
}

TEST_CASE("baseline run settles on adopt/no-subsidy") {
  const Trajectory traj =
      integrate(baseline_params(), baseline_init(), config(0.01, 100.0));
  REQUIRE(traj.converged_to.has_value());
  CHECK(std::abs(traj.converged_to->x - 1.0) < 1e-3);
  CHECK(std::abs(traj.converged_to->y) < 1e-3);
  CHECK(*traj.convergence_time < 100.0);
  CHECK(traj.times.size() == 10001);
}

TEST_CASE("time grid is the exact step multiple") {
  const Trajectory traj =
      integrate(baseline_params(), baseline_init(), config(0.01, 5.0));
  REQUIRE(traj.times.size() == 501);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    CHECK(traj.times[k] == static_cast<double>(k) * 0.01);
  }
}

TEST_CASE("company frozen when no incentive exists") {
  GameParams p;
  p.pi1 = p.pi2 = 2.0;
  p.u2 = 0.4;  // the government still moves
  const Trajectory traj = integrate(p, {0.37, 0.8}, config(0.01, 10.0));
  for (const StrategyState& st : traj.states) {
    CHECK(st.x == 0.37);
  }
  CHECK(traj.states.back().y != 0.8);
}

TEST_CASE("identical inputs give bit-identical trajectories") {
  const Trajectory a =
      integrate(baseline_params(), baseline_init(), config(0.01, 20.0));
  const Trajectory b =
      integrate(baseline_params(), baseline_init(), config(0.01, 20.0));
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    CHECK(a.states[k].x == b.states[k].x);
    CHECK(a.states[k].y == b.states[k].y);
  }
}

TEST_CASE("trajectories stay inside the unit square") {
  std::mt19937 rng(20240813);
  for (int i = 0; i < 25; ++i) {
    const GameParams p = testsupport::random_params(rng);
    const StrategyState init = testsupport::random_state(rng);
    const Trajectory traj = integrate(p, init, config(0.01, 20.0));
    for (const StrategyState& st : traj.states) {
      CHECK(st.x >= 0.0);
      CHECK(st.x <= 1.0);
      CHECK(st.y >= 0.0);
      CHECK(st.y <= 1.0);
    }
    // Boundary crossings at this step size are pure round-off.
    CHECK(traj.max_overshoot <= 1e-9);
  }
}

TEST_CASE("fourth-order convergence against a fine reference") {
  const GameParams p = baseline_params();
  const StrategyState init = baseline_init();
  const Trajectory ref = integrate(p, init, config(1e-4, 10.0));
  const Trajectory coarse = integrate(p, init, config(0.02, 10.0));
  const Trajectory fine = integrate(p, init, config(0.01, 10.0));

  const StrategyState& r = ref.states.back();
  const StrategyState& c = coarse.states.back();
  const StrategyState& f = fine.states.back();
  const double err_coarse = std::max(std::abs(c.x - r.x), std::abs(c.y - r.y));
  const double err_fine = std::max(std::abs(f.x - r.x), std::abs(f.y - r.y));
  const double slope = std::log2(err_coarse / err_fine);
  CHECK(slope >= 3.5);
  CHECK(slope <= 4.5);
}

TEST_CASE("step overshoot beyond round-off is a hard error") {
  GameParams p;
  p.pi1 = 100.0;
  p.pi2 = 0.0;
  CHECK_THROWS_AS(integrate(p, {0.999, 0.5}, config(1.0, 10.0)), NumericsError);
}

TEST_CASE("delayed integration") {
  const GameParams p = baseline_params();

  SUBCASE("corner history pins the trajectory") {
    const Trajectory traj =
        integrate_delayed(p, {1.0, 0.0}, config(0.01, 10.0, 0.01));
    for (const StrategyState& st : traj.states) {
      CHECK(st.x == 1.0);
      CHECK(st.y == 0.0);
    }
  }

  SUBCASE("lagged observation still reaches adopt/no-subsidy, later") {
    const Trajectory plain =
        integrate(p, baseline_init(), config(0.01, 100.0));
    const Trajectory delayed =
        integrate_delayed(p, baseline_init(), config(0.01, 100.0, 1.0));
    REQUIRE(delayed.converged_to.has_value());
    CHECK(std::abs(delayed.converged_to->x - 1.0) < 1e-3);
    CHECK(std::abs(delayed.converged_to->y) < 1e-3);
    CHECK(*delayed.convergence_time >= *plain.convergence_time);
    for (const StrategyState& st : delayed.states) {
      CHECK(st.x >= 0.0);
      CHECK(st.x <= 1.0);
      CHECK(st.y >= 0.0);
      CHECK(st.y <= 1.0);
    }
  }

  SUBCASE("deviation from the undelayed run shrinks linearly with tau") {
    const Trajectory base = integrate(p, baseline_init(), config(0.01, 5.0));
    double prev = -1.0;
    for (double tau : {0.04, 0.02, 0.01}) {
      const Trajectory delayed =
          integrate_delayed(p, baseline_init(), config(0.01, 5.0, tau));
      const double dev = max_state_gap(base, delayed, base.states.size() - 1);
      if (prev >= 0.0) CHECK(prev >= 2.0 * dev);
      prev = dev;
    }
  }
}

TEST_CASE("near-corner states never back away from an attracting corner") {
  auto check_absorption = [](const Trajectory& traj) {
    bool inside = false;
    double last = 0.0;
    for (const StrategyState& st : traj.states) {
      if (inside) {
        CHECK(st.x >= last);
      } else if (std::abs(st.x - 1.0) < 1e-14) {
        inside = true;
      }
      last = st.x;
    }
    return inside;
  };
  CHECK(check_absorption(
      integrate(baseline_params(), baseline_init(), config(0.01, 100.0))));

  std::mt19937 rng(3);
  for (int i = 0; i < 5; ++i) {
    const GameParams p = testsupport::random_combination4(rng);
    check_absorption(integrate(p, {0.3, 0.7}, config(0.01, 200.0)));
  }
}

TEST_CASE("convergence detection") {
  const GameParams p = baseline_params();

  SUBCASE("a window longer than the horizon can never confirm") {
    IntegratorConfig cfg = config(0.01, 2.0);  // window is 5 by default
    const Trajectory traj = integrate(p, {1.0, 0.0}, cfg);
    CHECK_FALSE(traj.converged_to.has_value());
  }

  SUBCASE("a cycling interior orbit never converges") {
    GameParams center;
    center.t2 = 0.5;
    center.t1 = 0.5;
    center.g_beta = 1.0;
    center.s = 0.5;
    center.u2 = 0.5;
    center.pi1 = 1.25;
    center.pi2 = 2.0;
    const Trajectory traj = integrate(center, {0.4, 0.4}, config(0.01, 50.0));
    CHECK_FALSE(traj.converged_to.has_value());
  }

  SUBCASE("detector matches the integrator's own record") {
    const IntegratorConfig cfg = config(0.01, 100.0);
    const Trajectory traj = integrate(p, baseline_init(), cfg);
    const auto conv = detect_convergence(traj, p, cfg);
    REQUIRE(conv.has_value());
    CHECK(conv->time == *traj.convergence_time);
    CHECK(conv->state.x == traj.converged_to->x);
  }
}

TEST_CASE("subsidy decay weakens the government's exit incentive") {
  GameParams decayed = baseline_params();
  decayed.decay_lambda = 1.0;
  const Trajectory with_decay =
      integrate(decayed, baseline_init(), config(0.01, 30.0));
  const Trajectory constant =
      integrate(baseline_params(), baseline_init(), config(0.01, 30.0));
  // A fading subsidy keeps the government subsidizing for longer at every
  // point in time; the endgame is still adopt/no-subsidy.
  bool differs = false;
  for (std::size_t k = 1; k < constant.states.size(); ++k) {
    if (with_decay.states[k].y != constant.states[k].y) differs = true;
    CHECK(with_decay.states[k].y >= constant.states[k].y - 1e-12);
  }
  CHECK(differs);
  const Trajectory long_run = integrate(decayed, baseline_init(), config(0.01, 100.0));
  REQUIRE(long_run.converged_to.has_value());
  CHECK(std::abs(long_run.converged_to->x - 1.0) < 1e-3);
  CHECK(std::abs(long_run.converged_to->y) < 1e-3);
}
