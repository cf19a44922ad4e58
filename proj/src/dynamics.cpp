#include "evogame/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace evogame::dynamics {

namespace {

// Pre-clamp overshoot beyond this stops integration: the boundaries are
// invariant, so anything larger than round-off means dt is too large.
constexpr double kOvershootLimit = 1e-6;

void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

struct Derivs {
  double dx = 0.0;
  double dy = 0.0;
};

Derivs rhs(const game::GameParams& p, double time, double x, double y,
           double x_observed, double y_observed) {
  return {game::company_replicator(x, y_observed, p, time),
          game::government_replicator(y, x_observed, p, time)};
}

// Clamps the post-step state to [0,1]^2, tracking the pre-clamp violation.
game::StrategyState clamp_step(double x, double y, Trajectory& traj) {
  const double overshoot =
      std::max({0.0, -x, x - 1.0, -y, y - 1.0});
  if (overshoot > traj.max_overshoot) traj.max_overshoot = overshoot;
  if (overshoot > kOvershootLimit) {
    throw NumericsError("integration overshot [0,1] by " +
                        std::to_string(overshoot) +
                        "; reduce dt");
  }
  return {std::clamp(x, 0.0, 1.0), std::clamp(y, 0.0, 1.0)};
}

}  // namespace

void IntegratorConfig::validate() const {
  for (double v : {dt, t_end, tau, convergence_tol, convergence_window}) {
    require(std::isfinite(v), "integrator: all settings must be finite");
  }
  require(dt > 0.0, "integrator: dt must be > 0");
  require(t_end >= dt, "integrator: t_end must be >= dt");
  require(tau >= 0.0, "integrator: tau must be >= 0");
  require(convergence_tol > 0.0, "integrator: convergence_tol must be > 0");
  require(convergence_window > 0.0, "integrator: convergence_window must be > 0");
  if (tau > 0.0) delay_steps();  // enforces the integer-multiple restriction
}

std::size_t IntegratorConfig::step_count() const {
  return static_cast<std::size_t>(std::floor(t_end / dt + 1e-6));
}

std::size_t IntegratorConfig::delay_steps() const {
  const double ratio = tau / dt;
  const auto m = static_cast<long long>(std::llround(ratio));
  require(m >= 1 && std::abs(static_cast<double>(m) * dt - tau) <=
                        1e-9 * std::max(1.0, tau),
          "integrator: tau must be a positive integer multiple of dt");
  return static_cast<std::size_t>(m);
}

namespace {

void finalize_convergence(Trajectory& traj, const game::GameParams& p,
                          const IntegratorConfig& cfg) {
  if (auto conv = detect_convergence(traj, p, cfg)) {
    traj.converged_to = conv->state;
    traj.convergence_time = conv->time;
  }
}

}  // namespace

Trajectory integrate(const game::GameParams& p, const game::StrategyState& init,
                     const IntegratorConfig& cfg) {
  cfg.validate();
  require(cfg.tau == 0.0, "integrate: tau must be 0; use integrate_delayed");
  p.validate();
  init.validate();

  const std::size_t n = cfg.step_count();
  const double dt = cfg.dt;
  Trajectory traj;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(init);

  double x = init.x;
  double y = init.y;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    const Derivs k1 = rhs(p, t, x, y, x, y);
    const double x2 = x + 0.5 * dt * k1.dx, y2 = y + 0.5 * dt * k1.dy;
    const Derivs k2 = rhs(p, t + 0.5 * dt, x2, y2, x2, y2);
    const double x3 = x + 0.5 * dt * k2.dx, y3 = y + 0.5 * dt * k2.dy;
    const Derivs k3 = rhs(p, t + 0.5 * dt, x3, y3, x3, y3);
    const double x4 = x + dt * k3.dx, y4 = y + dt * k3.dy;
    const Derivs k4 = rhs(p, t + dt, x4, y4, x4, y4);

    const double xn = x + dt / 6.0 * (k1.dx + 2.0 * (k2.dx + k3.dx) + k4.dx);
    const double yn = y + dt / 6.0 * (k1.dy + 2.0 * (k2.dy + k3.dy) + k4.dy);
    const game::StrategyState next = clamp_step(xn, yn, traj);
    x = next.x;
    y = next.y;
    traj.times.push_back(static_cast<double>(k + 1) * dt);
    traj.states.push_back(next);
  }
  finalize_convergence(traj, p, cfg);
  return traj;
}

Trajectory integrate_delayed(const game::GameParams& p,
                             const game::StrategyState& init,
                             const IntegratorConfig& cfg) {
  cfg.validate();
  require(cfg.tau > 0.0, "integrate_delayed: tau must be > 0; use integrate");
  p.validate();
  init.validate();

  const std::size_t n = cfg.step_count();
  const std::size_t m = cfg.delay_steps();
  const double dt = cfg.dt;
  Trajectory traj;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(init);

  // State at fractional grid index q (q = (t - tau)/dt for the stage lookups).
  // Negative times fall into the constant history; half-integer q is resolved
  // by linear interpolation between stored nodes, all of which are <= current.
  const auto lagged = [&](double q) -> game::StrategyState {
    if (q <= 0.0) return init;
    const auto k0 = static_cast<std::size_t>(q);
    const double frac = q - static_cast<double>(k0);
    const game::StrategyState& a = traj.states[k0];
    if (frac == 0.0) return a;
    const game::StrategyState& b = traj.states[k0 + 1];
    return {a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)};
  };

  double x = init.x;
  double y = init.y;
  const double md = static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double kd = static_cast<double>(k);
    const game::StrategyState l0 = lagged(kd - md);
    const game::StrategyState lh = lagged(kd + 0.5 - md);
    const game::StrategyState l1 = lagged(kd + 1.0 - md);

    const Derivs k1 = rhs(p, t, x, y, l0.x, l0.y);
    const Derivs k2 = rhs(p, t + 0.5 * dt, x + 0.5 * dt * k1.dx,
                          y + 0.5 * dt * k1.dy, lh.x, lh.y);
    const Derivs k3 = rhs(p, t + 0.5 * dt, x + 0.5 * dt * k2.dx,
                          y + 0.5 * dt * k2.dy, lh.x, lh.y);
    const Derivs k4 = rhs(p, t + dt, x + dt * k3.dx, y + dt * k3.dy, l1.x, l1.y);

    const double xn = x + dt / 6.0 * (k1.dx + 2.0 * (k2.dx + k3.dx) + k4.dx);
    const double yn = y + dt / 6.0 * (k1.dy + 2.0 * (k2.dy + k3.dy) + k4.dy);
    const game::StrategyState next = clamp_step(xn, yn, traj);
    x = next.x;
    y = next.y;
    traj.times.push_back(static_cast<double>(k + 1) * dt);
    traj.states.push_back(next);
  }
  finalize_convergence(traj, p, cfg);
  return traj;
}

std::optional<Convergence> detect_convergence(const Trajectory& traj,
                                              const game::GameParams& p,
                                              const IntegratorConfig& cfg) {
  if (traj.states.empty()) return std::nullopt;
  const std::size_t n = traj.states.size() - 1;
  const std::size_t m = cfg.tau > 0.0 ? cfg.delay_steps() : 0;

  // Steps spanning one full convergence window.
  const auto window = static_cast<std::size_t>(
      std::ceil(cfg.convergence_window / cfg.dt - 1e-9));
  if (window > n) return std::nullopt;

  std::size_t quiet_start = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const game::StrategyState& st = traj.states[k];
    const game::StrategyState& lag = traj.states[k >= m ? k - m : 0];
    const Derivs d = rhs(p, traj.times[k], st.x, st.y, lag.x, lag.y);
    if (std::max(std::abs(d.dx), std::abs(d.dy)) >= cfg.convergence_tol) {
      quiet_start = k + 1;
    } else if (k - quiet_start >= window) {
      return Convergence{traj.states[n],
                         static_cast<double>(quiet_start) * cfg.dt};
    }
  }
  return std::nullopt;
}

}  // namespace evogame::dynamics
