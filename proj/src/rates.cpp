#include "qkdrate/rates.hpp"

#include <string>

#include "qkdrate/errors.hpp"
#include "qkdrate/sacrifice.hpp"

namespace qkdrate {

namespace {

RatePoint finish(RatePoint point, double raw_key) {
  point.r_raw = raw_key - point.s1 - point.s2;
  point.r = positive_part(point.r_raw);
  return point;
}

}  // namespace

std::string_view to_string(PhaseModel model) {
  return model == PhaseModel::bit_formula ? "bit" : "phase";
}

PhaseModel parse_phase_model(std::string_view name) {
  if (name == "bit" || name == "bit-formula") return PhaseModel::bit_formula;
  if (name == "phase" || name == "phase-formula") return PhaseModel::phase_formula;
  throw DomainError("unknown phase model '" + std::string(name) + "'");
}

RatePoint rate_asymmetric(const ProtocolParams& params, const ErrorRates& rates, double c,
                          const ToleranceConfig& cfg) {
  rates.validate();
  RatePoint point{.q_plus = rates.q_plus,
                  .q_times = rates.q_times,
                  .c = c,
                  .p1 = params.p1(),
                  .p2 = params.p2()};
  point.s1 = s_by_inversion(Basis::bit, params, rates.q_plus, c, cfg).s;
  point.s2 = s_by_inversion(Basis::phase, params, rates.q_times, c, cfg).s;
  return finish(point, params.raw_key());
}

RatePoint rate_symmetric(double p1, const ErrorRates& rates, double c, PhaseModel model,
                         const ToleranceConfig& cfg) {
  rates.validate();
  const ProtocolParams params(p1, 0.5);
  RatePoint point{.q_plus = rates.q_plus,
                  .q_times = rates.q_times,
                  .c = c,
                  .p1 = p1,
                  .p2 = 0.5};
  point.s1 = s_by_inversion(Basis::bit, params, rates.q_plus, c, cfg).s;
  const Basis second = model == PhaseModel::bit_formula ? Basis::bit : Basis::phase;
  point.s2 = s_by_inversion(second, params, rates.q_times, c, cfg).s;
  return finish(point, params.raw_key());
}

BasisRatioOptimum basis_ratio_optimality_check(double coincidence, int grid_n) {
  if (!(coincidence > 0.0 && coincidence <= 0.25)) {
    throw DomainError("coincidence probability must lie in (0, 1/4]");
  }
  if (grid_n < 2) throw DomainError("grid_n must be at least 2");
  // b = P / a <= 1/2 forces a >= 2P.
  const double lo = 2.0 * coincidence;
  const double hi = 0.5;
  BasisRatioOptimum best;
  best.grid_step = (hi - lo) / (grid_n - 1);
  best.value = -1.0;
  for (double a : uniform_grid(lo, hi, grid_n)) {
    const double b = coincidence / a;
    const double value = (1.0 - a) * (1.0 - b);
    if (value > best.value) {
      best.a = a;
      best.b = b;
      best.value = value;
    }
  }
  return best;
}

}  // namespace qkdrate
