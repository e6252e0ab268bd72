#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qkdrate/errors.hpp"
#include "qkdrate/finite_n.hpp"
#include "qkdrate/sacrifice.hpp"

using namespace qkdrate;

TEST_CASE("hypergeom_log_pmf") {
  // C(20,2) C(30,6) / C(50,8) = 107445 / 511313
  CHECK(hypergeom_log_pmf(20, 30, 2, 6) == doctest::Approx(-2.250608358753277).epsilon(1e-12));
  CHECK(hypergeom_log_pmf(0, 10, 0, 4) == 0.0);
  CHECK(hypergeom_log_pmf(5, 5, 5, 5) == 0.0);
  CHECK_THROWS_AS(hypergeom_log_pmf(5, 5, 6, 0), DomainError);

  for (std::int64_t n_s : {0, 1, 7, 25}) {
    for (std::int64_t n_p : {0, 3, 35}) {
      for (std::int64_t k = 0; k <= n_s + n_p; k += 3) {
        double total = 0.0;
        for (std::int64_t k_s = std::max<std::int64_t>(0, k - n_p); k_s <= std::min(k, n_s); ++k_s) {
          total += std::exp2(hypergeom_log_pmf(n_s, n_p, k_s, k - k_s));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("make_layout") {
  const CountLayout l = make_layout(1000, ProtocolParams(0.1, 0.3), Basis::phase);
  CHECK(l.n_sample == 90);
  CHECK(l.n_pop == 441);
  CHECK(make_layout(1000, ProtocolParams(0.1, 0.3), Basis::bit).n_sample == 49);
  CHECK_THROWS_AS(make_layout(0, ProtocolParams(0.1, 0.3), Basis::bit), DomainError);
}

TEST_CASE("hypergeometric bound: sandwich form dominates, printed form does not") {
  for (std::int64_t n : {40, 200, 1000}) {
    for (Basis basis : {Basis::bit, Basis::phase}) {
      const CountLayout layout = make_layout(n, ProtocolParams(0.2, 0.4), basis);
      for (double q : {0.0, 0.03, 0.1, 0.25, 0.5}) {
        CHECK(verify_hypergeom_bound(layout, q).max_violation <= 1e-9);
      }
    }
  }
  const CountLayout layout = make_layout(1000, ProtocolParams(0.2, 0.4), Basis::phase);
  CHECK(verify_hypergeom_bound(layout, 0.1, BoundForm::as_printed).max_violation > 1.0);

  // no sample: every outcome has probability one and zero exponent
  const HypergeomBoundCheck empty = verify_hypergeom_bound({100, 0, 60}, 0.1);
  CHECK(empty.k_sample == 0);
  CHECK(empty.max_violation <= 1e-9);
}

TEST_CASE("b_exact equals the defining sum") {
  const ProtocolParams p(0.2, 0.3);
  const double s = 0.2;
  const std::int64_t n = 60;
  for (Basis basis : {Basis::bit, Basis::phase}) {
    const double ws = p.sample_weight(basis);
    const double raw = p.raw_key();
    oracle::Real total = 0;
    for (std::int64_t k = 0; k <= n; ++k) {
      const oracle::Real qp = oracle::Real(k) / n;
      const oracle::Real ex =
          oracle::Real(s) - oracle::Real(raw) * oracle::h(qp);
      const oracle::Real sacrifice = ex > 0 ? ex : oracle::Real(0);
      const oracle::Real gap = oracle::mixture_gap(oracle::Real(ws), oracle::Real(raw),
                                                   oracle::Real(0.05), qp);
      total += (n * (ws + raw) + 1) * boost::multiprecision::pow(oracle::Real(2), -n * (gap + sacrifice));
    }
    const double expect = static_cast<double>(boost::multiprecision::log2(total));
    const FiniteNResult r = b_exact(basis, n, p, 0.05, s);
    CHECK(r.log2_b == doctest::Approx(expect).epsilon(1e-9));
    CHECK(r.empirical_exponent == doctest::Approx(-expect / n).epsilon(1e-9));
  }
}

TEST_CASE("b_bit_exact pinned point") {
  // symmetric protocol at q = 0.05, S1 from inversion at C = 1e-4
  const FiniteNResult r =
      b_bit_exact(10'000, ProtocolParams(0.5, 0.5), 0.05, 0.041308817393614389);
  CHECK(r.log2_b == doctest::Approx(16.253111676560721).epsilon(1e-9));
  CHECK(r.asymptotic_exponent == doctest::Approx(1e-4).epsilon(1e-4));
}

TEST_CASE("finite-N exponent approaches the asymptotic exponent") {
  const ProtocolParams p(0.1, 0.3);
  const double s2 = s_by_inversion(Basis::phase, p, 0.05, 1e-4).s;
  double prev_gap = INFINITY;
  double prev_emp = -INFINITY;
  for (std::int64_t n : {1'000, 10'000, 100'000}) {
    const FiniteNResult r = b_phase_exact(n, p, 0.05, s2);
    const double gap = std::abs(r.empirical_exponent - r.asymptotic_exponent);
    CHECK(gap < prev_gap);
    CHECK(r.empirical_exponent >= prev_emp);
    CHECK(r.empirical_exponent <= r.asymptotic_exponent + 1e-12);
    prev_gap = gap;
    prev_emp = r.empirical_exponent;
  }
  const FiniteNResult pop = b_phase_exact(100'000, p, 0.05, s2, {}, SumRange::population);
  CHECK(pop.log2_b < b_phase_exact(100'000, p, 0.05, s2).log2_b);
  CHECK_THROWS_AS(b_phase_exact(0, p, 0.05, s2), DomainError);
}

TEST_CASE("simulate_estimation") {
  const EstimationTable t = simulate_estimation({100, 50, 50}, 10, 20'000, 42);
  REQUIRE(t.cells.size() == 11);
  std::uint64_t total = 0;
  double pmf = 0.0;
  for (const EstimationCell& c : t.cells) {
    total += c.count;
    pmf += c.exact_pmf;
    CHECK(c.k_sample + c.k_pop == 10);
    if (c.exact_pmf * 20'000 >= 10) CHECK(std::abs(c.z_score) < 5.0);
  }
  CHECK(total == 20'000);
  CHECK(pmf == doctest::Approx(1.0).epsilon(1e-12));

  // identical regardless of the number of worker threads
  const EstimationTable t4 = simulate_estimation({100, 50, 50}, 10, 20'000, 42, 4);
  for (std::size_t i = 0; i < t.cells.size(); ++i) CHECK(t.cells[i].count == t4.cells[i].count);
  const EstimationTable other = simulate_estimation({100, 50, 50}, 10, 20'000, 43);
  bool differs = false;
  for (std::size_t i = 0; i < t.cells.size(); ++i) differs |= t.cells[i].count != other.cells[i].count;
  CHECK(differs);

  const EstimationTable none = simulate_estimation({100, 50, 50}, 0, 100, 1);
  REQUIRE(none.cells.size() == 1);
  CHECK(none.cells[0].count == 100);
  CHECK(none.cells[0].z_score == 0.0);
  const EstimationTable all = simulate_estimation({100, 50, 50}, 100, 100, 1);
  REQUIRE(all.cells.size() == 1);
  CHECK(all.cells[0].k_sample == 50);

  CHECK_THROWS_AS(simulate_estimation({100, 50, 50}, 101, 10, 1), DomainError);
  CHECK_THROWS_AS(simulate_estimation({100, 50, 50}, 5, 0, 1), DomainError);
}
