#pragma once

#include <optional>
#include <string_view>

#include "evogame/errors.hpp"

namespace evogame::hotelling {

/// Which indifference-point formula to evaluate.
///
/// `corrected` solves the utility balance U_new(X) = U_trad(X) exactly, which
/// puts +T in the numerator and yields the classic 1/2 split for symmetric
/// parameters. `paper_verbatim` keeps the -T sign as printed in the source
/// model; it differs from `corrected` by exactly 1 in the raw split.
enum class FormulaMode { corrected, paper_verbatim };

std::optional<FormulaMode> parse_formula_mode(std::string_view name);
std::string_view to_string(FormulaMode mode);

/// Consumer demand layer parameters for the two-product linear city.
/// Product 1 is the innovative equipment (position 0 on the line), product 2
/// the traditional equipment (position 1).
struct DemandParams {
  double T = 1.0;    // unit mismatch cost per unit distance, must be > 0
  double V1 = 0.0;   // perceived base value, innovative
  double V2 = 0.0;   // perceived base value, traditional
  double q = 0.0;    // preference weight for energy saving, >= 0
  double e1 = 0.0;   // environmental utility, innovative
  double e2 = 0.0;   // environmental utility, traditional
  double h1 = 0.0;   // consumer-side subsidy for the innovative product, >= 0
  double mu1 = 0.0;  // consumer sensitivity to that subsidy, >= 0
  double p1 = 0.0;   // consumer payment price, innovative, >= 0
  double p2 = 0.0;   // consumer payment price, traditional, >= 0
  double P1 = 0.0;   // selling price, innovative, >= 0
  double P2 = 0.0;   // selling price, traditional, >= 0
  double C1 = 0.0;   // unit cost, innovative, >= 0
  double C2 = 0.0;   // unit cost, traditional, >= 0

  // When set (default), V1 == V2 is required; when cleared, the indifference
  // numerator picks up the (V1 - V2) term from re-solving the balance.
  bool assume_equal_base_value = true;

  void validate() const;  // throws ValidationError
};

/// Raw and [0,1]-clamped consumer indifference location.
struct IndifferenceSplit {
  double raw = 0.0;
  double clamped = 0.0;
  bool was_clamped() const { return raw != clamped; }
};

/// Market split plus the firm profits it generates.
struct MarketOutcome {
  double x_star_raw = 0.0;
  double x_star = 0.0;  // clamp(x_star_raw, 0, 1)
  double share_new = 0.0;
  double share_traditional = 0.0;
  double pi1 = 0.0;  // (P1 - C1) * x_star
  double pi2 = 0.0;  // (P2 - C2) * (1 - x_star)
  bool clamped = false;
  // Split-side diagnostic for the mismatch-asymmetry assumption
  // T*X < T*(1-X); holds exactly when x_star < 1/2.
  bool inconvenience_assumption_holds = false;
};

/// Utility of a consumer at position x buying the innovative product:
/// V1 - p1 + q*e1 - T*x + h1*mu1.
double utility_new(const DemandParams& params, double x);

/// Utility of a consumer at position x buying the traditional product:
/// V2 - p2 + q*e2 - T*(1 - x).
double utility_traditional(const DemandParams& params, double x);

/// Consumer location indifferent between the two products.
IndifferenceSplit indifference_point(const DemandParams& params,
                                     FormulaMode mode = FormulaMode::corrected);

/// Market shares and firm profits implied by the indifference split.
MarketOutcome market_outcome(const DemandParams& params,
                             FormulaMode mode = FormulaMode::corrected);

}  // namespace evogame::hotelling
