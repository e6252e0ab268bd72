#pragma once
// Independent reference implementations used only by the tests. Nothing here
// calls into the library's numerics.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <random>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;
using BigInt = boost::multiprecision::cpp_int;

inline Real h(const Real& x) {
  if (x == 0 || x == 1) return Real(0);
  using boost::multiprecision::log;
  return -(x * log(x) + (1 - x) * log(1 - x)) / log(Real(2));
}

/// Weighted-entropy gap written from the definition of D_p / D_b.
inline Real mixture_gap(const Real& ws, const Real& wp, const Real& qs, const Real& qp) {
  const Real t = ws + wp;
  return t * h((ws * qs + wp * qp) / t) - ws * h(qs) - wp * h(qp);
}

inline BigInt binomial(unsigned n, unsigned k) {
  BigInt num = 1;
  for (unsigned i = 1; i <= k; ++i) {
    num *= (n - k + i);
    num /= i;
  }
  return num;
}

inline double log2_exact_binomial(unsigned n, unsigned k) {
  using boost::multiprecision::log;
  const Real v(binomial(n, k));
  return static_cast<double>(log(v) / log(Real(2)));
}

/// Plain double entropy, hand-written.
inline double h_double(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -(x * std::log(x) + (1.0 - x) * std::log(1.0 - x)) / std::log(2.0);
}

/// Exponent objective from its definition, weights given explicitly.
inline double objective(double s, double ws, double raw, double q, double qp) {
  const double t = ws + raw;
  const double gap = t * h_double((ws * q + raw * qp) / t) - ws * h_double(q) - raw * h_double(qp);
  const double pos = s - raw * h_double(qp);
  return (pos > 0.0 ? pos : 0.0) + gap;
}

/// Two-level exhaustive grid minimum over q' in [0, 1/2]: `points` uniform
/// points, then `points` more across the two cells around the best one.
inline double brute_force_exponent(double s, double ws, double raw, double q,
                                   int points = 1'000'000) {
  auto scan = [&](double lo, double hi, double& arg) {
    double best = INFINITY;
    for (int i = 0; i < points; ++i) {
      const double x = lo + (hi - lo) * i / (points - 1);
      const double v = objective(s, ws, raw, q, x);
      if (v < best) {
        best = v;
        arg = x;
      }
    }
    return best;
  };
  double arg = 0.0;
  const double coarse = scan(0.0, 0.5, arg);
  const double cell = 0.5 / (points - 1);
  double arg2 = 0.0;
  const double fine = scan(std::max(0.0, arg - cell), std::min(0.5, arg + cell), arg2);
  return std::min(coarse, fine);
}

/// Bisection written independently of the library: root of 1 - 2h(q) on (0, 1/2).
inline double shor_preskill_threshold() {
  double lo = 0.01, hi = 0.2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 - 2.0 * h_double(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
