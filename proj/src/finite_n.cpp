#include "qkdrate/finite_n.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "qkdrate/errors.hpp"

namespace qkdrate {

namespace {

__extension__ using Uint128 = unsigned __int128;

/// SplitMix64 (Steele, Lea, Flood 2014): one 64-bit state, full period.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) from the top 53 bits.
  std::uint64_t below(std::uint64_t bound) {
    const Uint128 u = static_cast<Uint128>((*this)() >> 11) * bound;
    return static_cast<std::uint64_t>(u >> 53);
  }

 private:
  std::uint64_t state_;
};

std::uint64_t trial_key(std::uint64_t seed, std::uint64_t trial) {
  return SplitMix64::mix(seed ^ SplitMix64::mix(trial + 0x9e3779b97f4a7c15ULL));
}

/// Number of the `errors` positions drawn without replacement that land among
/// the first n_sample of n_total.
std::int64_t draw_sample_errors(SplitMix64& rng, std::int64_t n_sample, std::int64_t n_total,
                                std::int64_t errors) {
  std::int64_t in_sample = 0;
  for (std::int64_t i = 0; i < errors; ++i) {
    const auto remaining = static_cast<std::uint64_t>(n_total - i);
    if (static_cast<std::int64_t>(rng.below(remaining)) < n_sample - in_sample) ++in_sample;
  }
  return in_sample;
}

}  // namespace

void CountLayout::validate() const {
  if (n_sample < 0 || n_pop < 0) throw DomainError("layout counts must be nonnegative");
  if (n_total < n_sample + n_pop) {
    throw DomainError("layout: n_sample + n_pop exceeds the number of transmitted qubits");
  }
}

CountLayout make_layout(std::int64_t n_total, const ProtocolParams& params, Basis basis) {
  if (n_total < 1) throw DomainError("N must be at least 1");
  const auto n = static_cast<double>(n_total);
  CountLayout layout;
  layout.n_total = n_total;
  layout.n_sample = std::llround(n * params.sample_weight(basis));
  layout.n_pop = std::min<std::int64_t>(std::llround(n * params.raw_key()),
                                        n_total - layout.n_sample);
  return layout;
}

std::string_view to_string(BoundForm form) {
  return form == BoundForm::sandwich ? "sandwich" : "printed";
}

std::string_view to_string(SumRange range) {
  return range == SumRange::total ? "total" : "population";
}

BoundForm parse_bound_form(std::string_view name) {
  if (name == "sandwich") return BoundForm::sandwich;
  if (name == "printed" || name == "as_printed") return BoundForm::as_printed;
  throw DomainError("unknown bound form '" + std::string(name) + "'");
}

SumRange parse_sum_range(std::string_view name) {
  if (name == "total") return SumRange::total;
  if (name == "population") return SumRange::population;
  throw DomainError("unknown sum range '" + std::string(name) + "'");
}

double hypergeom_log_pmf(std::int64_t n_s, std::int64_t n_p, std::int64_t k_s,
                         std::int64_t k_p) {
  if (k_s < 0 || k_s > n_s || k_p < 0 || k_p > n_p) {
    throw DomainError("hypergeom_log_pmf: counts out of range");
  }
  return log2_binomial(n_s, k_s) + log2_binomial(n_p, k_p) -
         log2_binomial(n_s + n_p, k_s + k_p);
}

HypergeomBoundCheck verify_hypergeom_bound(const CountLayout& layout, double q,
                                           BoundForm form) {
  layout.validate();
  if (!(q >= 0.0 && q <= 0.5)) throw DomainError("q must lie in [0, 1/2]");
  const std::int64_t n_s = layout.n_sample;
  const std::int64_t n_p = layout.n_pop;
  const std::int64_t n = n_s + n_p;

  HypergeomBoundCheck out;
  out.k_sample = std::llround(static_cast<double>(n_s) * q);
  if (n == 0) return out;  // single outcome, pmf = bound = 1

  const double q_s = n_s > 0 ? static_cast<double>(out.k_sample) / n_s : 0.0;
  const double prefactor = (form == BoundForm::sandwich ? 1.0 : -1.0) * std::log2(n + 1.0);
  out.max_violation = -std::numeric_limits<double>::infinity();
  for (std::int64_t k_p = 0; k_p <= n_p; ++k_p) {
    const double q_p = n_p > 0 ? static_cast<double>(k_p) / n_p : 0.0;
    // N D evaluated at the realized ratios equals the divergence of the counts.
    const double exponent = mixture_divergence(static_cast<double>(n_s),
                                               static_cast<double>(n_p), q_s, q_p);
    const double violation =
        hypergeom_log_pmf(n_s, n_p, out.k_sample, k_p) - (prefactor - exponent);
    if (violation > out.max_violation) {
      out.max_violation = violation;
      out.worst_k_pop = k_p;
    }
  }
  return out;
}

FiniteNResult b_exact(Basis basis, std::int64_t n, const ProtocolParams& params, double q,
                      double s, const ToleranceConfig& cfg, SumRange range, BoundForm form) {
  if (n < 1) throw DomainError("N must be at least 1");
  if (!(s >= 0.0)) throw DomainError("sacrificed-bit rate must be nonnegative");
  const auto nd = static_cast<double>(n);
  const double raw = params.raw_key();
  const double weight = params.sample_weight(basis) + raw;
  const double prefactor =
      (form == BoundForm::sandwich ? 1.0 : -1.0) * std::log2(nd * weight + 1.0);
  const std::int64_t m = range == SumRange::total ? n : std::llround(nd * raw);

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(m) + 1);
  for (std::int64_t k = 0; k <= m; ++k) {
    const double qp = m > 0 ? static_cast<double>(k) / static_cast<double>(m) : 0.0;
    const double sacrifice_term = nd * positive_part(s - raw * binary_entropy(qp));
    const double estimation_term = nd * divergence(basis, params, q, qp);
    terms.push_back(prefactor - estimation_term - sacrifice_term);
  }

  FiniteNResult out;
  out.n = n;
  out.log2_b = log_sum_exp2(terms);
  out.empirical_exponent = -out.log2_b / nd;
  out.asymptotic_exponent = exponent(basis, s, params, q, cfg);
  return out;
}

FiniteNResult b_phase_exact(std::int64_t n, const ProtocolParams& params, double q_times,
                            double s2, const ToleranceConfig& cfg, SumRange range,
                            BoundForm form) {
  return b_exact(Basis::phase, n, params, q_times, s2, cfg, range, form);
}

FiniteNResult b_bit_exact(std::int64_t n, const ProtocolParams& params, double q_plus,
                          double s1, const ToleranceConfig& cfg, SumRange range,
                          BoundForm form) {
  return b_exact(Basis::bit, n, params, q_plus, s1, cfg, range, form);
}

EstimationTable simulate_estimation(const CountLayout& layout, std::int64_t errors,
                                    std::uint64_t trials, std::uint64_t seed,
                                    unsigned threads) {
  if (layout.n_sample < 0 || layout.n_pop < 0) {
    throw DomainError("layout counts must be nonnegative");
  }
  const std::int64_t n = layout.n_sample + layout.n_pop;
  if (errors < 0 || errors > n) throw DomainError("error count must lie in [0, n_sample + n_pop]");
  if (trials < 1) throw DomainError("trials must be at least 1");

  const std::int64_t k_lo = std::max<std::int64_t>(0, errors - layout.n_pop);
  const std::int64_t k_hi = std::min<std::int64_t>(errors, layout.n_sample);
  const auto width = static_cast<std::size_t>(k_hi - k_lo + 1);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(width, 0));
  auto work = [&](unsigned worker) {
    const std::uint64_t begin = trials * worker / threads;
    const std::uint64_t end = trials * (worker + 1) / threads;
    for (std::uint64_t t = begin; t < end; ++t) {
      SplitMix64 rng(trial_key(seed, t));
      const std::int64_t k = draw_sample_errors(rng, layout.n_sample, n, errors);
      ++partial[worker][static_cast<std::size_t>(k - k_lo)];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  EstimationTable table;
  table.n_sample = layout.n_sample;
  table.n_pop = layout.n_pop;
  table.errors = errors;
  table.trials = trials;
  table.seed = seed;
  const auto t = static_cast<double>(trials);
  for (std::size_t i = 0; i < width; ++i) {
    EstimationCell cell;
    cell.k_sample = k_lo + static_cast<std::int64_t>(i);
    cell.k_pop = errors - cell.k_sample;
    for (const auto& counts : partial) cell.count += counts[i];
    cell.frequency = static_cast<double>(cell.count) / t;
    cell.exact_pmf =
        std::exp2(hypergeom_log_pmf(layout.n_sample, layout.n_pop, cell.k_sample, cell.k_pop));
    const double variance = t * cell.exact_pmf * (1.0 - cell.exact_pmf);
    cell.z_score =
        variance > 0.0 ? (static_cast<double>(cell.count) - t * cell.exact_pmf) / std::sqrt(variance)
                       : 0.0;
    table.cells.push_back(cell);
  }
  return table;
}

}  // namespace qkdrate
