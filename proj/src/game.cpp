#include "evogame/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace evogame::game {

namespace {

constexpr double kFixedPointTol = 1e-12;
constexpr double kEigenvalueTol = 1e-9;

void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace

void GameParams::validate() const {
  for (double v : {u1, u2, u3, t, t1, t2, s, g_beta, pi1, pi2, decay_lambda}) {
    require(std::isfinite(v), "game: all parameters must be finite");
  }
  require(t >= 0.0, "game: t must be >= 0");
  require(t1 >= 0.0, "game: t1 must be >= 0");
  require(t2 >= 0.0, "game: t2 must be >= 0");
  require(s >= 0.0, "game: s must be >= 0");
  require(g_beta >= 0.0 && g_beta <= 1.0, "game: g_beta must lie in [0,1]");
  require(decay_lambda >= 0.0, "game: decay_lambda must be >= 0");
}

double GameParams::g_beta_at(double time) const {
  return decay_lambda == 0.0 ? g_beta : g_beta * std::exp(-decay_lambda * time);
}

void StrategyState::validate() const {
  require(std::isfinite(x) && x >= 0.0 && x <= 1.0, "state: x must lie in [0,1]");
  require(std::isfinite(y) && y >= 0.0 && y <= 1.0, "state: y must lie in [0,1]");
}

PayoffBimatrix build_bimatrix(const GameParams& p) {
  p.validate();
  const double gs = p.g_beta * p.s;
  PayoffBimatrix m;
  m.at(CompanyStrategy::adopt, GovernmentStrategy::subsidize) =
      {p.pi1 - p.t + p.t1 + gs, p.u1 + p.u2 + p.t - p.t1 - gs};
  m.at(CompanyStrategy::adopt, GovernmentStrategy::no_subsidy) =
      {p.pi1 - p.t, p.u1 + p.t};
  m.at(CompanyStrategy::keep, GovernmentStrategy::subsidize) =
      {p.pi2 - p.t - p.t2, p.u3 + p.t + p.t2};
  m.at(CompanyStrategy::keep, GovernmentStrategy::no_subsidy) =
      {p.pi2 - p.t, p.u3 + p.t};
  return m;
}

ExpectedPayoffs expected_payoffs(const PayoffBimatrix& m, const StrategyState& state) {
  state.validate();
  const double x = state.x;
  const double y = state.y;
  const auto& as = m.at(CompanyStrategy::adopt, GovernmentStrategy::subsidize);
  const auto& an = m.at(CompanyStrategy::adopt, GovernmentStrategy::no_subsidy);
  const auto& ks = m.at(CompanyStrategy::keep, GovernmentStrategy::subsidize);
  const auto& kn = m.at(CompanyStrategy::keep, GovernmentStrategy::no_subsidy);

  ExpectedPayoffs e;
  e.e11 = y * as.company + (1.0 - y) * an.company;
  e.e12 = y * ks.company + (1.0 - y) * kn.company;
  e.e1 = x * e.e11 + (1.0 - x) * e.e12;
  e.e21 = x * as.government + (1.0 - x) * ks.government;
  e.e22 = x * an.government + (1.0 - x) * kn.government;
  e.e2 = y * e.e21 + (1.0 - y) * e.e22;
  return e;
}

double company_replicator(double x, double y_observed, const GameParams& p,
                          double time) {
  const double gs = p.g_beta_at(time) * p.s;
  return x * (1.0 - x) * (y_observed * (gs + p.t1 + p.t2) + (p.pi1 - p.pi2));
}

double government_replicator(double y, double x_observed, const GameParams& p,
                             double time) {
  const double gs = p.g_beta_at(time) * p.s;
  return y * (1.0 - y) *
         (x_observed * (p.u2 - p.t1 - gs) + p.t2 * (1.0 - x_observed));
}

double company_replicator(const StrategyState& state, const GameParams& p) {
  return company_replicator(state.x, state.y, p, 0.0);
}

double government_replicator(const StrategyState& state, const GameParams& p) {
  return government_replicator(state.y, state.x, p, 0.0);
}

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::unclassified: return "unclassified";
    case Stability::ess: return "ESS";
    case Stability::saddle: return "saddle";
    case Stability::unstable: return "unstable";
    case Stability::undetermined: return "undetermined";
  }
  return "unclassified";
}

FixedPointSet fixed_points(const GameParams& p) {
  p.validate();
  FixedPointSet set;
  for (double cx : {0.0, 1.0}) {
    for (double cy : {0.0, 1.0}) {
      Equilibrium eq;
      eq.point = {cx, cy};
      set.points.push_back(eq);
    }
  }

  const double gs = p.g_beta * p.s;
  const double den_x = p.t2 + p.t1 + gs - p.u2;
  const double den_y = gs + p.t1 + p.t2;
  if (den_x == 0.0 || den_y == 0.0) {
    set.degenerate = true;
    return set;
  }
  const double ix = p.t2 / den_x;
  const double iy = (p.pi2 - p.pi1) / den_y;
  if (ix > 0.0 && ix < 1.0 && iy > 0.0 && iy < 1.0) {
    Equilibrium eq;
    eq.point = {ix, iy};
    eq.is_interior = true;
    set.points.push_back(eq);
  }
  return set;
}

Matrix2 jacobian(const StrategyState& state, const GameParams& p) {
  const double x = state.x;
  const double y = state.y;
  const double gs = p.g_beta * p.s;
  const double a = gs + p.t1 + p.t2;       // company bracket slope in y
  const double d = p.pi1 - p.pi2;          // company bracket intercept
  const double b = p.u2 - p.t1 - gs;       // government bracket slope at x=1
  const double bracket_x = y * a + d;
  const double bracket_y = x * b + p.t2 * (1.0 - x);
  return {{{(1.0 - 2.0 * x) * bracket_x, x * (1.0 - x) * a},
           {y * (1.0 - y) * (b - p.t2), (1.0 - 2.0 * y) * bracket_y}}};
}

namespace {

std::array<std::complex<double>, 2> eigenvalues_2x2(const Matrix2& m) {
  if (m[0][1] == 0.0 || m[1][0] == 0.0) {
    // Triangular (every corner Jacobian is): the diagonal is exact.
    const auto [lo, hi] = std::minmax(m[0][0], m[1][1]);
    return {std::complex<double>(lo, 0.0), std::complex<double>(hi, 0.0)};
  }
  const double tr = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    return {std::complex<double>((tr - root) / 2.0, 0.0),
            std::complex<double>((tr + root) / 2.0, 0.0)};
  }
  const double im = std::sqrt(-disc) / 2.0;
  return {std::complex<double>(tr / 2.0, -im), std::complex<double>(tr / 2.0, im)};
}

}  // namespace

Equilibrium classify(const StrategyState& point, const GameParams& p) {
  p.validate();
  point.validate();
  const double fx = company_replicator(point, p);
  const double fy = government_replicator(point, p);
  require(std::abs(fx) <= kFixedPointTol && std::abs(fy) <= kFixedPointTol,
          "classify: point is not a fixed point of the replicator system");

  Equilibrium eq;
  eq.point = point;
  eq.is_interior = point.x > 0.0 && point.x < 1.0 && point.y > 0.0 && point.y < 1.0;
  eq.jacobian = jacobian(point, p);
  eq.eigenvalues = eigenvalues_2x2(eq.jacobian);

  const double re0 = eq.eigenvalues[0].real();
  const double re1 = eq.eigenvalues[1].real();
  if (std::abs(re0) < kEigenvalueTol || std::abs(re1) < kEigenvalueTol) {
    eq.classification = Stability::undetermined;
  } else if (re0 < 0.0 && re1 < 0.0) {
    eq.classification = Stability::ess;
  } else if (re0 > 0.0 && re1 > 0.0) {
    eq.classification = Stability::unstable;
  } else {
    eq.classification = Stability::saddle;
  }
  return eq;
}

FixedPointSet classified_equilibria(const GameParams& p) {
  FixedPointSet set = fixed_points(p);
  for (Equilibrium& eq : set.points) {
    const bool interior = eq.is_interior;
    eq = classify(eq.point, p);
    eq.is_interior = interior;
  }
  return set;
}

CombinationLabel combination_label(const GameParams& p) {
  const double threshold = p.g_beta * p.s + p.t1;
  CombinationLabel out;
  out.subsidy_tie = p.u2 == threshold;
  out.profit_tie = p.pi1 == p.pi2;
  const bool subsidy_cond = p.u2 < threshold;  // subsidy costlier than its benefit
  const bool profit_cond = p.pi2 < p.pi1;      // adoption intrinsically profitable
  if (subsidy_cond && profit_cond) {
    out.label = 4;
  } else if (subsidy_cond) {
    out.label = 3;
  } else if (profit_cond) {
    out.label = 2;
  } else {
    out.label = 1;
  }
  return out;
}

}  // namespace evogame::game
