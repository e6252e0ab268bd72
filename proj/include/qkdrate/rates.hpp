#pragma once

#include <string_view>

#include "qkdrate/exponents.hpp"

namespace qkdrate {

/// One evaluated key-generation rate. R_raw may be negative; R = max(R_raw, 0).
struct RatePoint {
  double q_plus = 0.0;
  double q_times = 0.0;
  double c = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double r_raw = 0.0;
  double r = 0.0;
};

/// How the symmetric rate bounds the phase-basis (privacy amplification) term.
///
/// bit_formula uses the bit-basis functional with q_times for both terms, as
/// the symmetric rate is usually printed; phase_formula uses the phase-basis
/// functional S2(p1, 1/2, q_times, C) for the second term.
enum class PhaseModel { bit_formula, phase_formula };

std::string_view to_string(PhaseModel model);
PhaseModel parse_phase_model(std::string_view name);

/// R_A = (1-p2)^2 (1-p1) - S1 - S2 with both sacrificed rates from inversion.
RatePoint rate_asymmetric(const ProtocolParams& params, const ErrorRates& rates, double c,
                          const ToleranceConfig& cfg = {});

/// R_S = (1-p1)/4 - S1(p1, 1/2, q_plus, C) - second term per `model`.
RatePoint rate_symmetric(double p1, const ErrorRates& rates, double c,
                         PhaseModel model = PhaseModel::bit_formula,
                         const ToleranceConfig& cfg = {});

struct BasisRatioOptimum {
  double a = 0.0;      ///< Alice's x-basis ratio
  double b = 0.0;      ///< Bob's x-basis ratio, P / a
  double value = 0.0;  ///< (1-a)(1-b), the +-basis coincidence probability
  double grid_step = 0.0;
};

/// Brute force over a * b = P with both ratios in [0, 1/2]: maximizes the
/// +-basis coincidence (1-a)(1-b) on a grid of `grid_n` values of a.
BasisRatioOptimum basis_ratio_optimality_check(double coincidence, int grid_n);

}  // namespace qkdrate
