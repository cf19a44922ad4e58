#include "evogame/hotelling.hpp"

#include <algorithm>
#include <cmath>

namespace evogame::hotelling {

std::optional<FormulaMode> parse_formula_mode(std::string_view name) {
  if (name == "corrected") return FormulaMode::corrected;
  if (name == "paper-verbatim") return FormulaMode::paper_verbatim;
  return std::nullopt;
}

std::string_view to_string(FormulaMode mode) {
  return mode == FormulaMode::corrected ? "corrected" : "paper-verbatim";
}

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw ValidationError(msg);
}

bool all_finite(const DemandParams& d) {
  for (double v : {d.T, d.V1, d.V2, d.q, d.e1, d.e2, d.h1, d.mu1, d.p1, d.p2,
                   d.P1, d.P2, d.C1, d.C2}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

void DemandParams::validate() const {
  require(all_finite(*this), "demand: all parameters must be finite");
  require(T > 0.0, "demand: T must be > 0");
  require(q >= 0.0, "demand: q must be >= 0");
  require(h1 >= 0.0, "demand: h1 must be >= 0");
  require(mu1 >= 0.0, "demand: mu1 must be >= 0");
  require(p1 >= 0.0 && p2 >= 0.0, "demand: consumer prices must be >= 0");
  require(P1 >= 0.0 && P2 >= 0.0, "demand: selling prices must be >= 0");
  require(C1 >= 0.0 && C2 >= 0.0, "demand: costs must be >= 0");
  if (assume_equal_base_value) {
    require(V1 == V2,
            "demand: V1 must equal V2 while assume_equal_base_value is set");
  }
}

double utility_new(const DemandParams& d, double x) {
  return d.V1 - d.p1 + d.q * d.e1 - d.T * x + d.h1 * d.mu1;
}

double utility_traditional(const DemandParams& d, double x) {
  return d.V2 - d.p2 + d.q * d.e2 - d.T * (1.0 - x);
}

IndifferenceSplit indifference_point(const DemandParams& d, FormulaMode mode) {
  d.validate();
  // Solving U_new(X) = U_trad(X) for X. The (V1 - V2) term is exactly zero in
  // the default equal-base-value mode.
  const double numerator =
      (d.V1 - d.V2) + (d.p2 - d.p1) + d.q * (d.e1 - d.e2) + d.h1 * d.mu1 + d.T;
  double raw = numerator / (2.0 * d.T);
  if (mode == FormulaMode::paper_verbatim) {
    raw -= 1.0;  // the printed -T numerator is the solved +T form shifted by 2T/2T
  }
  return {raw, std::clamp(raw, 0.0, 1.0)};
}

MarketOutcome market_outcome(const DemandParams& d, FormulaMode mode) {
  const IndifferenceSplit split = indifference_point(d, mode);
  MarketOutcome out;
  out.x_star_raw = split.raw;
  out.x_star = split.clamped;
  out.share_new = out.x_star;
  out.share_traditional = 1.0 - out.x_star;
  out.pi1 = (d.P1 - d.C1) * out.x_star;
  out.pi2 = (d.P2 - d.C2) * (1.0 - out.x_star);
  out.clamped = split.was_clamped();
  out.inconvenience_assumption_holds = out.x_star < 0.5;
  return out;
}

}  // namespace evogame::hotelling
