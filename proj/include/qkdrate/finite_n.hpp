#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "qkdrate/exponents.hpp"

namespace qkdrate {

/// Integer sample/population sizes behind one basis at N transmitted qubits.
struct CountLayout {
  std::int64_t n_total = 0;
  std::int64_t n_sample = 0;
  std::int64_t n_pop = 0;

  void validate() const;
};

/// Rounds N * sample_weight and N * raw_key to the nearest integer.
CountLayout make_layout(std::int64_t n_total, const ProtocolParams& params, Basis basis);

/// Polynomial prefactor of the per-type estimation bound.
///
/// sandwich:   (n+1) 2^{-N D}, which follows from
///             2^{n h(k/n)} / (n+1) <= C(n,k) <= 2^{n h(k/n)}.
/// as_printed: 2^{-N D} / (n+1). Violated near the mode of the distribution;
///             kept for comparison.
enum class BoundForm { sandwich, as_printed };

/// k/N over k = 0..N (total), or k/n_pop over k = 0..n_pop (population).
enum class SumRange { total, population };

std::string_view to_string(BoundForm form);
std::string_view to_string(SumRange range);
BoundForm parse_bound_form(std::string_view name);
SumRange parse_sum_range(std::string_view name);

/// log2 [C(n_s,k_s) C(n_p,k_p) / C(n_s+n_p, k_s+k_p)].
double hypergeom_log_pmf(std::int64_t n_s, std::int64_t n_p, std::int64_t k_s,
                         std::int64_t k_p);

struct HypergeomBoundCheck {
  double max_violation = 0.0;  ///< max over k_p of log2 pmf - log2 bound (bits)
  std::int64_t k_sample = 0;   ///< round(n_sample * q)
  std::int64_t worst_k_pop = 0;
};

/// Exhaustive check over k_p in [0, n_pop] of the hypergeometric pmf against
/// its type bound. The divergence is evaluated at the realized count ratios.
HypergeomBoundCheck verify_hypergeom_bound(const CountLayout& layout, double q,
                                           BoundForm form = BoundForm::sandwich);

struct FiniteNResult {
  std::int64_t n = 0;
  double log2_b = 0.0;
  double empirical_exponent = 0.0;   ///< -log2_b / N
  double asymptotic_exponent = 0.0;  ///< exponent(S) at the same inputs
};

/// log2 B_p = log2 sum_k eps_p(q') delta_p(q'), evaluated in log domain.
FiniteNResult b_phase_exact(std::int64_t n, const ProtocolParams& params, double q_times,
                            double s2, const ToleranceConfig& cfg = {},
                            SumRange range = SumRange::total,
                            BoundForm form = BoundForm::sandwich);

/// log2 B_b = log2 sum_k eps_b(q') delta_b(q'), evaluated in log domain.
FiniteNResult b_bit_exact(std::int64_t n, const ProtocolParams& params, double q_plus,
                          double s1, const ToleranceConfig& cfg = {},
                          SumRange range = SumRange::total,
                          BoundForm form = BoundForm::sandwich);

FiniteNResult b_exact(Basis basis, std::int64_t n, const ProtocolParams& params, double q,
                      double s, const ToleranceConfig& cfg = {},
                      SumRange range = SumRange::total, BoundForm form = BoundForm::sandwich);

struct EstimationCell {
  std::int64_t k_sample = 0;
  std::int64_t k_pop = 0;
  std::uint64_t count = 0;
  double frequency = 0.0;
  double exact_pmf = 0.0;
  double z_score = 0.0;  ///< (count - T p) / sqrt(T p (1-p)); 0 when p is 0 or 1
};

struct EstimationTable {
  std::int64_t n_sample = 0;
  std::int64_t n_pop = 0;
  std::int64_t errors = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<EstimationCell> cells;  ///< one per feasible k_sample, ascending
};

/// Monte Carlo of where K errors fall among n_sample + n_pop positions chosen
/// uniformly without replacement. Trial t draws from a generator keyed by
/// (seed, t), so the table does not depend on `threads`.
EstimationTable simulate_estimation(const CountLayout& layout, std::int64_t errors,
                                    std::uint64_t trials, std::uint64_t seed,
                                    unsigned threads = 1);

}  // namespace qkdrate
