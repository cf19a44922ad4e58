#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include "evogame/errors.hpp"

namespace evogame::game {

/// Parameters of the government/company strategic layer. The revenue levels
/// u1, u3 and the basic tax t enter the payoff tables but provably cancel out
/// of the dynamics; they are carried for reporting only.
struct GameParams {
  double u1 = 0.0;  // government revenue, adoption without subsidy
  double u2 = 0.0;  // additional government revenue, adoption with subsidy
  double u3 = 0.0;  // government revenue under the traditional equipment
  double t = 0.0;   // basic tax paid by the company, >= 0
  double t1 = 0.0;  // tax reduction for adopters, >= 0
  double t2 = 0.0;  // penalty tax on traditional equipment under the
                    // subsidize policy, >= 0
  double s = 0.0;   // initial subsidy amount to companies, >= 0
  double g_beta = 1.0;  // fiscal subsidy coefficient, in [0,1]
  double pi1 = 0.0;     // profit from the innovative equipment
  double pi2 = 0.0;     // profit from the traditional equipment

  // Optional exponential decay of the subsidy coefficient over simulated
  // time: g_beta(t) = g_beta * exp(-decay_lambda * t). Zero keeps it constant.
  double decay_lambda = 0.0;

  void validate() const;  // throws ValidationError
  double g_beta_at(double time) const;
};

/// Mixed-strategy state: x is the probability the company adopts the
/// innovative equipment, y the probability the government subsidizes.
struct StrategyState {
  double x = 0.0;
  double y = 0.0;

  void validate() const;  // throws ValidationError unless both lie in [0,1]
};

enum class CompanyStrategy { adopt = 0, keep = 1 };
enum class GovernmentStrategy { subsidize = 0, no_subsidy = 1 };

struct PayoffCell {
  double company = 0.0;
  double government = 0.0;
};

/// 2x2 bimatrix indexed by (company strategy, government strategy).
struct PayoffBimatrix {
  std::array<std::array<PayoffCell, 2>, 2> cells{};

  const PayoffCell& at(CompanyStrategy c, GovernmentStrategy g) const {
    return cells[static_cast<int>(c)][static_cast<int>(g)];
  }
  PayoffCell& at(CompanyStrategy c, GovernmentStrategy g) {
    return cells[static_cast<int>(c)][static_cast<int>(g)];
  }
};

/// Payoff table for the one-shot stage game:
///   company:     adopt/subsidize  -> pi1 - t + t1 + g_beta*s
///                adopt/no-subsidy -> pi1 - t
///                keep/subsidize   -> pi2 - t - t2
///                keep/no-subsidy  -> pi2 - t
///   government:  adopt/subsidize  -> u1 + u2 + t - t1 - g_beta*s
///                adopt/no-subsidy -> u1 + t
///                keep/subsidize   -> u3 + t + t2
///                keep/no-subsidy  -> u3 + t
PayoffBimatrix build_bimatrix(const GameParams& params);

/// Expected payoffs against the opponent's mixed strategy.
/// e11/e12: company payoff when adopting/keeping, given government mix y.
/// e21/e22: government payoff when subsidizing/not, given company mix x.
/// e1/e2: the population-average payoffs.
struct ExpectedPayoffs {
  double e11 = 0.0;
  double e12 = 0.0;
  double e1 = 0.0;
  double e21 = 0.0;
  double e22 = 0.0;
  double e2 = 0.0;
};

ExpectedPayoffs expected_payoffs(const PayoffBimatrix& m, const StrategyState& state);

/// dx/dt = x(1-x) * { y*[g_beta*s + t1 + t2] + (pi1 - pi2) }
double company_replicator(const StrategyState& state, const GameParams& params);

/// dy/dt = y(1-y) * [ x*(u2 - t1 - g_beta*s) + t2*(1 - x) ]
double government_replicator(const StrategyState& state, const GameParams& params);

// Same right-hand sides with the opponent observation decoupled from the own
// state; the delayed integrator feeds lagged observations through these.
double company_replicator(double x, double y_observed, const GameParams& params,
                          double time);
double government_replicator(double y, double x_observed, const GameParams& params,
                             double time);

enum class Stability {
  unclassified,   // fixed point not yet classified
  ess,            // asymptotically stable: both eigenvalue real parts < 0
  saddle,         // real parts of opposite sign
  unstable,       // unstable node/focus: both real parts > 0
  undetermined,   // center/undetermined: a real part within 1e-9 of zero
};

std::string_view to_string(Stability s);

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct Equilibrium {
  StrategyState point;
  Matrix2 jacobian{};
  std::array<std::complex<double>, 2> eigenvalues{};
  Stability classification = Stability::unclassified;
  bool is_interior = false;
};

struct FixedPointSet {
  std::vector<Equilibrium> points;  // the four corners, then the interior
                                    // candidate when it is admissible
  bool degenerate = false;  // an interior-candidate denominator was zero
};

/// All fixed points of the replicator system, unclassified. The four corners
/// are always fixed points; the interior candidate
///   x* = t2 / (t2 + t1 + g_beta*s - u2),  y* = (pi2 - pi1) / (g_beta*s + t1 + t2)
/// is included only when both coordinates lie strictly inside (0,1).
FixedPointSet fixed_points(const GameParams& params);

/// Analytic Jacobian of (dx/dt, dy/dt) at an arbitrary state.
Matrix2 jacobian(const StrategyState& state, const GameParams& params);

/// Classify a fixed point by the eigenvalues of the analytic Jacobian.
/// Throws ValidationError when the point is not a fixed point (derivatives
/// must vanish within 1e-12).
Equilibrium classify(const StrategyState& point, const GameParams& params);

/// fixed_points + classify over each point.
FixedPointSet classified_equilibria(const GameParams& params);

/// Sign taxonomy of (u2 vs g_beta*s + t1) x (pi2 vs pi1). Label 4 is the
/// regime u2 < g_beta*s + t1 and pi2 < pi1, whose unique ESS is
/// (adopt, no-subsidy). Exact ties are flagged as boundary cases.
struct CombinationLabel {
  int label = 0;  // 1: neither strict condition holds, 2: only pi2 < pi1,
                  // 3: only u2 < g_beta*s + t1, 4: both
  bool subsidy_tie = false;  // u2 == g_beta*s + t1 exactly
  bool profit_tie = false;   // pi1 == pi2 exactly

  bool boundary() const { return subsidy_tie || profit_tie; }
};

CombinationLabel combination_label(const GameParams& params);

}  // namespace evogame::game
