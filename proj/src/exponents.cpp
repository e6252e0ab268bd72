#include "qkdrate/exponents.hpp"

#include <string>

#include "qkdrate/errors.hpp"

namespace qkdrate {

namespace {

constexpr double kInnerLo = 0.0;
constexpr double kInnerHi = 0.5;

void require_rate(double q, double hi, const char* what) {
  if (!(q >= 0.0 && q <= hi)) {
    throw DomainError(std::string(what) + " = " + std::to_string(q) + " outside [0, " +
                      std::to_string(hi) + "]");
  }
}

}  // namespace

std::string_view to_string(Basis basis) { return basis == Basis::bit ? "bit" : "phase"; }

Basis parse_basis(std::string_view name) {
  if (name == "bit" || name == "plus") return Basis::bit;
  if (name == "phase" || name == "times") return Basis::phase;
  throw DomainError("unknown basis '" + std::string(name) + "'");
}

ProtocolParams::ProtocolParams(double p1, double p2) : p1_(p1), p2_(p2) {
  require_rate(p1, 0.5, "p1");
  require_rate(p2, 0.5, "p2");
}

void ErrorRates::validate() const {
  require_rate(q_plus, 0.5, "q_plus");
  require_rate(q_times, 0.5, "q_times");
}

double mixture_divergence(double sample_weight, double pop_weight, double q_sample,
                          double q_pop) {
  const double total = sample_weight + pop_weight;
  if (!(total > 0.0)) {
    throw DegenerateParameterError("no qubits in either the sample or the population");
  }
  const double mix = (sample_weight * q_sample + pop_weight * q_pop) / total;
  const double d = total * binary_entropy(mix) - sample_weight * binary_entropy(q_sample) -
                   pop_weight * binary_entropy(q_pop);
  // Concavity of h makes d >= 0; rounding may leave a tiny negative value.
  return d > 0.0 ? d : 0.0;
}

double d_phase(const ProtocolParams& params, double q_times, double q_prime) {
  require_rate(q_times, 0.5, "q_times");
  require_rate(q_prime, 1.0, "q_prime");
  return mixture_divergence(params.phase_sample(), params.raw_key(), q_times, q_prime);
}

double d_bit(const ProtocolParams& params, double q_plus, double q_prime) {
  require_rate(q_plus, 0.5, "q_plus");
  require_rate(q_prime, 1.0, "q_prime");
  return mixture_divergence(params.bit_sample(), params.raw_key(), q_plus, q_prime);
}

double divergence(Basis basis, const ProtocolParams& params, double q, double q_prime) {
  return basis == Basis::phase ? d_phase(params, q, q_prime) : d_bit(params, q, q_prime);
}

double exponent(Basis basis, double s, const ProtocolParams& params, double q,
                const ToleranceConfig& cfg) {
  if (!(s >= 0.0)) throw DomainError("sacrificed-bit rate must be nonnegative");
  require_rate(q, 0.5, "q");
  cfg.validate();
  const double raw = params.raw_key();
  auto objective = [&](double qp) {
    return positive_part(s - raw * binary_entropy(qp)) + divergence(basis, params, q, qp);
  };
  return minimize_scalar(objective, kInnerLo, kInnerHi, cfg).min;
}

double exponent_phase(double s2, const ProtocolParams& params, double q_times,
                      const ToleranceConfig& cfg) {
  return exponent(Basis::phase, s2, params, q_times, cfg);
}

double exponent_bit(double s1, const ProtocolParams& params, double q_plus,
                    const ToleranceConfig& cfg) {
  return exponent(Basis::bit, s1, params, q_plus, cfg);
}

ExponentCurve::ExponentCurve(Basis basis, const ProtocolParams& params, double q,
                             const ToleranceConfig& cfg)
    : basis_(basis), params_(params), q_(q), raw_key_(params.raw_key()), cfg_(cfg) {
  cfg_.validate();
  require_rate(q, 0.5, "q");
  const std::vector<double> xs = uniform_grid(kInnerLo, kInnerHi, cfg_.grid_points);
  divergence_.reserve(xs.size());
  raw_entropy_.reserve(xs.size());
  for (double x : xs) {
    divergence_.push_back(divergence(basis_, params_, q_, x));
    raw_entropy_.push_back(raw_key_ * binary_entropy(x));
  }
}

double ExponentCurve::objective(double s, double q_prime) const {
  return positive_part(s - raw_key_ * binary_entropy(q_prime)) +
         divergence(basis_, params_, q_, q_prime);
}

double ExponentCurve::operator()(double s) const {
  if (!(s >= 0.0)) throw DomainError("sacrificed-bit rate must be nonnegative");
  std::vector<double> values(divergence_.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = positive_part(s - raw_entropy_[i]) + divergence_[i];
  }
  auto f = [this, s](double qp) { return objective(s, qp); };
  return refine_grid_minimum(f, kInnerLo, kInnerHi, values, cfg_).min;
}

}  // namespace qkdrate
