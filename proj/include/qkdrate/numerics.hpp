#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qkdrate {

/// Tolerances shared by the root finders and the scalar minimizer.
///
/// Exponents in this problem are O(1e-4) bits per qubit, so the defaults sit
/// several orders of magnitude below that scale.
struct ToleranceConfig {
  double root_tol = 1e-12;      ///< absolute tolerance on abscissae
  double exponent_tol = 1e-9;   ///< absolute tolerance on exponent values (bits/qubit)
  int max_iter = 200;
  int grid_points = 2048;       ///< density of the seeding grid in minimize_scalar

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

using ScalarFunction = std::function<double(double)>;

/// h(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0.
double binary_entropy(double x);

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// log2 of the binomial coefficient C(n, k).
///
/// Summation of logs in extended precision for n <= 1000, lgamma above.
double log2_binomial(std::int64_t n, std::int64_t k);

/// log2(sum_i 2^{t_i}); -inf entries are zero summands. Terms are reduced in
/// input order after factoring out the maximum.
double log_sum_exp2(std::span<const double> terms);

/// Bisection for a sign change of f on [lo, hi].
///
/// Stops when the bracket is narrower than cfg.root_tol or |f(mid)| <= value_tol.
/// An endpoint is returned directly if |f| there is <= value_tol.
double bisect_root(const ScalarFunction& f, double lo, double hi,
                   const ToleranceConfig& cfg, double value_tol = 0.0);

struct ScalarMinimum {
  double argmin = 0.0;
  double min = 0.0;
};

/// Grid points lo + (hi - lo) * i / (n - 1), i = 0..n-1.
std::vector<double> uniform_grid(double lo, double hi, int n);

/// Golden-section search on [a, b] down to cfg.root_tol. Returns the best
/// point actually evaluated.
ScalarMinimum golden_section(const ScalarFunction& f, double a, double b,
                             const ToleranceConfig& cfg);

/// Refines a tabulated objective: `values[i]` must equal f(uniform_grid(lo, hi,
/// values.size())[i]). Picks the first minimal grid cell and runs golden-section
/// over its two neighbouring cells. Never returns worse than the grid minimum.
ScalarMinimum refine_grid_minimum(const ScalarFunction& f, double lo, double hi,
                                  std::span<const double> values,
                                  const ToleranceConfig& cfg);

/// Grid scan with cfg.grid_points points followed by golden-section refinement
/// around the best cell. Throws NumericError on a non-finite value.
ScalarMinimum minimize_scalar(const ScalarFunction& f, double lo, double hi,
                              const ToleranceConfig& cfg);

}  // namespace qkdrate
