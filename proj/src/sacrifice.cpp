#include "qkdrate/sacrifice.hpp"

#include <cmath>
#include <exception>

#include "qkdrate/errors.hpp"

namespace qkdrate {

namespace {

void require_constraint(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("exponent constraint C must be >= 0");
}

bool strictly_inside(double q) { return q > 0.0 && q < 0.5; }

struct Classification {
  Branch branch = Branch::unclassified;
  std::optional<double> q1;
  std::optional<double> q2;
};

Classification classify(Basis basis, const ProtocolParams& params, double q, double c,
                        const ToleranceConfig& cfg) {
  Classification out;
  if (!strictly_inside(q)) return out;
  out.q1 = q_prime_one(basis, params, q, c, cfg);
  out.q2 = q_prime_two(basis, params, q, cfg);
  if (!out.q1) {
    out.branch = Branch::saturated;
  } else {
    out.branch = *out.q1 <= *out.q2 ? Branch::interior : Branch::stationary;
  }
  return out;
}

}  // namespace

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::interior: return "interior";
    case Branch::stationary: return "stationary";
    case Branch::saturated: return "saturated";
    case Branch::unclassified: return "unclassified";
  }
  return "unclassified";
}

std::string_view to_string(SacrificeMethod method) {
  return method == SacrificeMethod::closed_form ? "closed_form" : "inversion";
}

std::optional<double> q_prime_one(Basis basis, const ProtocolParams& params, double q, double c,
                                  const ToleranceConfig& cfg) {
  require_constraint(c);
  if (c == 0.0) return q;
  if (divergence(basis, params, q, 0.5) < c) return std::nullopt;
  auto f = [&](double x) { return divergence(basis, params, q, x) - c; };
  return bisect_root(f, q, 0.5, cfg);
}

double q_prime_two(Basis basis, const ProtocolParams& params, double q,
                   const ToleranceConfig& cfg) {
  if (!strictly_inside(q)) throw DomainError("q_prime_two requires 0 < q < 1/2");
  const double ws = params.sample_weight(basis);
  const double wr = params.raw_key();
  auto g = [=](double x) {
    const double odds = x / (1.0 - x);
    return odds * odds - (ws * q + wr * x) / (ws * (1.0 - q) + wr * (1.0 - x));
  };
  return bisect_root(g, q, 0.5, cfg);
}

SacrificeResult s_by_inversion(const ExponentCurve& curve, double c, const ToleranceConfig& cfg) {
  require_constraint(c);
  const double raw = curve.raw_key();
  const double q = curve.q();
  const double zero_boundary =
      curve.params().sample_weight(curve.basis()) > 0.0 ? raw * binary_entropy(q) : raw;

  SacrificeResult out;
  out.method = SacrificeMethod::inversion;
  if (c == 0.0) {
    out.s = zero_boundary;
  } else {
    auto f = [&](double s) { return curve(s) - c; };
    const double hi = raw + c + 1.0;
    if (f(hi) < 0.0) {
      throw InfeasibleError("exponent never reaches C on [0, raw_key + C + 1]");
    }
    out.s = bisect_root(f, zero_boundary, hi, cfg);
  }
  out.residual = std::abs(curve(out.s) - c);

  const Classification cls = classify(curve.basis(), curve.params(), q, c, cfg);
  out.branch = cls.branch;
  out.q1 = cls.q1;
  out.q2 = cls.q2;
  return out;
}

SacrificeResult s_by_inversion(Basis basis, const ProtocolParams& params, double q, double c,
                               const ToleranceConfig& cfg) {
  return s_by_inversion(ExponentCurve(basis, params, q, cfg), c, cfg);
}

SacrificeResult s_closed(Basis basis, const ProtocolParams& params, double q, double c,
                         const ToleranceConfig& cfg) {
  require_constraint(c);
  if (!strictly_inside(q)) throw DomainError("s_closed requires 0 < q < 1/2");
  const Classification cls = classify(basis, params, q, c, cfg);
  if (cls.branch == Branch::saturated) {
    SacrificeResult out = s_by_inversion(basis, params, q, c, cfg);
    out.branch = Branch::saturated;
    return out;
  }
  SacrificeResult out;
  out.method = SacrificeMethod::closed_form;
  out.branch = cls.branch;
  out.q1 = cls.q1;
  out.q2 = cls.q2;
  if (cls.branch == Branch::interior) {
    out.s = params.raw_key() * binary_entropy(*cls.q1);
  } else {
    out.s = divergence(basis, params, q, *cls.q2) + c;
  }
  out.residual = std::abs(exponent(basis, out.s, params, q, cfg) - c);
  return out;
}

CrossCheckReport cross_check(Basis basis, const ProtocolParams& params, double q, double c,
                             const ToleranceConfig& cfg) noexcept {
  CrossCheckReport report;
  report.basis = basis;
  report.p1 = params.p1();
  report.p2 = params.p2();
  report.q = q;
  report.c = c;
  try {
    report.closed = s_closed(basis, params, q, c, cfg);
    report.inversion = s_by_inversion(basis, params, q, c, cfg);
    report.discrepancy = std::abs(report.closed->s - report.inversion->s);
    if (report.closed->branch == Branch::stationary) {
      const double q2 = *report.closed->q2;
      report.stationary_corrected = params.raw_key() * binary_entropy(q2) -
                                    divergence(basis, params, q, q2) + c;
    }
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  return report;
}

}  // namespace qkdrate
