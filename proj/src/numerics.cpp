#include "qkdrate/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "qkdrate/errors.hpp"

namespace qkdrate {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

double grid_point(double lo, double hi, int n, int i) {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
}

std::string describe(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(root_tol > 0.0)) throw DomainError("root_tol must be positive");
  if (!(exponent_tol > 0.0)) throw DomainError("exponent_tol must be positive");
  if (max_iter < 1) throw DomainError("max_iter must be at least 1");
  if (grid_points < 16) throw DomainError("grid_points must be at least 16");
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("binary_entropy: argument " + describe(x) + " outside [0,1]");
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double log2_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("log2_binomial: need 0 <= k <= n, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }
  const std::int64_t m = std::min(k, n - k);
  if (m == 0) return 0.0;
  if (n <= 1000) {
    long double acc = 0.0L;
    for (std::int64_t i = 1; i <= m; ++i) {
      acc += std::log2(static_cast<long double>(n - m + i) / static_cast<long double>(i));
    }
    return static_cast<double>(acc);
  }
  const double nats = std::lgamma(static_cast<double>(n) + 1.0) -
                      std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(n - k) + 1.0);
  return nats / std::log(2.0);
}

double log_sum_exp2(std::span<const double> terms) {
  if (terms.empty()) throw DomainError("log_sum_exp2: empty term list");
  const double top = *std::max_element(terms.begin(), terms.end());
  if (std::isinf(top)) return top;  // all -inf, or a +inf term
  double acc = 0.0;
  for (double t : terms) acc += std::exp2(t - top);
  return top + std::log2(acc);
}

double bisect_root(const ScalarFunction& f, double lo, double hi, const ToleranceConfig& cfg,
                   double value_tol) {
  if (!(lo <= hi)) throw DomainError("bisect_root: lo > hi");
  double flo = f(lo);
  const double fhi = f(hi);
  if (std::isnan(flo) || std::isnan(fhi)) {
    throw NumericError("bisect_root: NaN at bracket endpoint", std::isnan(flo) ? lo : hi);
  }
  if (std::abs(flo) <= value_tol) return lo;
  if (std::abs(fhi) <= value_tol) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw BracketError("bisect_root: no sign change on [" + describe(lo) + ", " +
                       describe(hi) + "] (f = " + describe(flo) + ", " + describe(fhi) +
                       ")");
  }
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= cfg.root_tol || mid == lo || mid == hi) return mid;
    const double fm = f(mid);
    if (std::isnan(fm)) throw NumericError("bisect_root: NaN at " + describe(mid), mid);
    if (std::abs(fm) <= value_tol) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("bisect_root: max_iter reached", 0.5 * (lo + hi));
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 2) throw DomainError("uniform_grid: need at least two points");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[i] = grid_point(lo, hi, n, i);
  return xs;
}

ScalarMinimum golden_section(const ScalarFunction& f, double a, double b,
                             const ToleranceConfig& cfg) {
  if (!(a <= b)) throw DomainError("golden_section: a > b");
  ScalarMinimum best{a, f(a)};
  auto consider = [&best](double x, double fx) {
    if (fx < best.min) best = {x, fx};
  };
  consider(b, f(b));
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  consider(c, fc);
  consider(d, fd);
  for (int it = 0; it < cfg.max_iter && (b - a) > cfg.root_tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  if (!std::isfinite(best.min)) throw NumericError("golden_section: non-finite minimum", best.argmin);
  return best;
}

ScalarMinimum refine_grid_minimum(const ScalarFunction& f, double lo, double hi,
                                  std::span<const double> values, const ToleranceConfig& cfg) {
  const int n = static_cast<int>(values.size());
  if (n < 2) throw DomainError("refine_grid_minimum: need at least two grid values");
  int best = 0;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(values[i])) {
      const double x = grid_point(lo, hi, n, i);
      throw NumericError("minimize_scalar: non-finite objective at x = " + describe(x), x);
    }
    if (values[i] < values[best]) best = i;
  }
  ScalarMinimum result{grid_point(lo, hi, n, best), values[best]};
  const double a = grid_point(lo, hi, n, std::max(best - 1, 0));
  const double b = grid_point(lo, hi, n, std::min(best + 1, n - 1));
  const ScalarMinimum refined = golden_section(f, a, b, cfg);
  if (refined.min < result.min) result = refined;
  return result;
}

ScalarMinimum minimize_scalar(const ScalarFunction& f, double lo, double hi,
                              const ToleranceConfig& cfg) {
  if (!(lo < hi)) throw DomainError("minimize_scalar: need lo < hi");
  const std::vector<double> xs = uniform_grid(lo, hi, cfg.grid_points);
  std::vector<double> values(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) values[i] = f(xs[i]);
  return refine_grid_minimum(f, lo, hi, values, cfg);
}

}  // namespace qkdrate
