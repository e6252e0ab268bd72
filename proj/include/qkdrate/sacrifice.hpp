#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qkdrate/exponents.hpp"

namespace qkdrate {

/// Which piece of the closed-form case split applies.
///
/// interior:     q'_1 <= q'_2, S = raw h(q'_1)
/// stationary:   q'_1 >  q'_2, S = D(q'_2) + C (formula as published)
/// saturated:    D(1/2) < C, no q'_1 exists; only inversion applies
/// unclassified: q outside (0, 1/2), where q'_2 is undefined
enum class Branch { interior, stationary, saturated, unclassified };

enum class SacrificeMethod { closed_form, inversion };

std::string_view to_string(Branch branch);
std::string_view to_string(SacrificeMethod method);

struct SacrificeResult {
  double s = 0.0;                  ///< sacrificed-bit rate, bits per transmitted qubit
  Branch branch = Branch::unclassified;
  SacrificeMethod method = SacrificeMethod::inversion;
  std::optional<double> q1;        ///< root of D(q') = C on [q, 1/2]
  std::optional<double> q2;        ///< stationarity root
  double residual = 0.0;           ///< |exponent(s) - C|
};

/// Root of D(q') = C on [q, 1/2], absent when D(1/2) < C.
std::optional<double> q_prime_one(Basis basis, const ProtocolParams& params, double q, double c,
                                  const ToleranceConfig& cfg = {});

/// Root on (q, 1/2) of (q'/(1-q'))^2 = (ws q + wr q') / (ws (1-q) + wr (1-q')),
/// the stationary point of D(q') - raw h(q'). Requires 0 < q < 1/2.
double q_prime_two(Basis basis, const ProtocolParams& params, double q,
                   const ToleranceConfig& cfg = {});

/// Closed-form case split. Saturated points are delegated to s_by_inversion.
SacrificeResult s_closed(Basis basis, const ProtocolParams& params, double q, double c,
                         const ToleranceConfig& cfg = {});

/// Smallest S with exponent(S) = C, by bisection on the monotone exponent
/// functional. C = 0 yields the boundary of the zero set of the exponent.
SacrificeResult s_by_inversion(Basis basis, const ProtocolParams& params, double q, double c,
                               const ToleranceConfig& cfg = {});

/// Same as s_by_inversion, reusing a prebuilt curve for (basis, params, q).
SacrificeResult s_by_inversion(const ExponentCurve& curve, double c,
                               const ToleranceConfig& cfg = {});

struct CrossCheckReport {
  Basis basis = Basis::bit;
  double p1 = 0.0;
  double p2 = 0.0;
  double q = 0.0;
  double c = 0.0;
  std::optional<SacrificeResult> closed;
  std::optional<SacrificeResult> inversion;
  double discrepancy = 0.0;
  /// raw h(q'_2) - D(q'_2) + C: the value at which the stationary point of the
  /// exponent objective equals C. Present only on the stationary branch.
  std::optional<double> stationary_corrected;
  std::string error;  ///< empty unless one of the methods threw
};

/// Compares s_closed with s_by_inversion. Never throws.
CrossCheckReport cross_check(Basis basis, const ProtocolParams& params, double q, double c,
                             const ToleranceConfig& cfg = {}) noexcept;

}  // namespace qkdrate
