#pragma once

#include <string_view>
#include <vector>

#include "qkdrate/numerics.hpp"

namespace qkdrate {

/// Bit (+) basis: error correction. Phase (x) basis: privacy amplification.
enum class Basis { bit, phase };

std::string_view to_string(Basis basis);
Basis parse_basis(std::string_view name);

/// Check-bit ratio p1 and x-basis ratio p2, both in [0, 1/2].
class ProtocolParams {
 public:
  ProtocolParams(double p1, double p2);

  double p1() const { return p1_; }
  double p2() const { return p2_; }

  /// x-basis coincidences, p2^2.
  double phase_sample() const { return p2_ * p2_; }
  /// Announced check bits, (1-p2)^2 p1.
  double bit_sample() const { return plus_coincidence() * p1_; }
  /// Unannounced +-basis bits, (1-p2)^2 (1-p1).
  double raw_key() const { return plus_coincidence() * (1.0 - p1_); }
  double phase_population() const { return phase_sample() + raw_key(); }
  double plus_coincidence() const { return (1.0 - p2_) * (1.0 - p2_); }

  /// Fraction of transmitted qubits whose errors estimate the basis' error rate.
  double sample_weight(Basis basis) const {
    return basis == Basis::phase ? phase_sample() : bit_sample();
  }

 private:
  double p1_;
  double p2_;
};

struct ErrorRates {
  double q_plus = 0.0;
  double q_times = 0.0;

  /// Throws DomainError unless both rates lie in [0, 1/2].
  void validate() const;
  double of(Basis basis) const { return basis == Basis::phase ? q_times : q_plus; }
};

/// Large-deviation rate of a hypergeometric split between a sample (weight
/// `sample_weight`, error rate `q_sample`) and a population (`pop_weight`,
/// `q_pop`): (ws+wp) h(mix) - ws h(q_sample) - wp h(q_pop).
double mixture_divergence(double sample_weight, double pop_weight, double q_sample,
                          double q_pop);

/// D_p: phase-basis divergence. q_prime may range over [0, 1].
double d_phase(const ProtocolParams& params, double q_times, double q_prime);

/// D_b = (1-p2)^2 (h(p1 q + (1-p1) q') - p1 h(q) - (1-p1) h(q')).
double d_bit(const ProtocolParams& params, double q_plus, double q_prime);

double divergence(Basis basis, const ProtocolParams& params, double q, double q_prime);

/// min over q' in [0,1/2] of [S - raw h(q')]_+ + D_p(q', q_times).
double exponent_phase(double s2, const ProtocolParams& params, double q_times,
                      const ToleranceConfig& cfg = {});

/// min over q' in [0,1/2] of D_b(q', q_plus) + [S - raw h(q')]_+.
double exponent_bit(double s1, const ProtocolParams& params, double q_plus,
                    const ToleranceConfig& cfg = {});

double exponent(Basis basis, double s, const ProtocolParams& params, double q,
                const ToleranceConfig& cfg = {});

/// The exponent as a function of the sacrificed-bit rate for fixed
/// (basis, params, q).
///
/// The divergence and raw h(q') are tabulated once on the minimizer's seeding
/// grid, so repeated evaluation (bisection on S, optimizer sweeps) only pays for
/// the golden-section refinement. Values are identical to exponent().
class ExponentCurve {
 public:
  ExponentCurve(Basis basis, const ProtocolParams& params, double q, const ToleranceConfig& cfg);

  double operator()(double s) const;
  /// Inner objective at one q'.
  double objective(double s, double q_prime) const;

  Basis basis() const { return basis_; }
  const ProtocolParams& params() const { return params_; }
  double q() const { return q_; }
  double raw_key() const { return raw_key_; }

 private:
  Basis basis_;
  ProtocolParams params_;
  double q_;
  double raw_key_;
  ToleranceConfig cfg_;
  std::vector<double> divergence_;
  std::vector<double> raw_entropy_;
};

}  // namespace qkdrate
