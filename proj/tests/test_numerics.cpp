#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qkdrate/errors.hpp"
#include "qkdrate/numerics.hpp"

using namespace qkdrate;

TEST_CASE("binary_entropy: fixed points and conventions") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  // mpmath at 40 digits: 0.2863969571159561287...
  CHECK(binary_entropy(0.05) == doctest::Approx(0.28639695711595613).epsilon(1e-15));
  CHECK(std::abs(binary_entropy(0.05) - static_cast<double>(oracle::h(oracle::Real("0.05")))) <
        1e-15);
  CHECK_THROWS_AS(binary_entropy(-1e-9), DomainError);
  CHECK_THROWS_AS(binary_entropy(1.5), DomainError);
  CHECK_THROWS_AS(binary_entropy(std::nan("")), DomainError);
}

TEST_CASE("binary_entropy: bounds, symmetry, monotone on [0,1/2]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng);
    const double hx = binary_entropy(x);
    CHECK(hx >= 0.0);
    CHECK(hx <= 1.0);
    CHECK(hx == doctest::Approx(binary_entropy(1.0 - x)).epsilon(1e-12));
  }
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double hx = binary_entropy(0.5 * i / 1000.0);
    CHECK(hx > prev);
    prev = hx;
  }
}

TEST_CASE("positive_part") {
  CHECK(positive_part(0.3) == 0.3);
  CHECK(positive_part(-0.3) == 0.0);
  CHECK(positive_part(0.0) == 0.0);
}

TEST_CASE("log2_binomial: small exact values") {
  CHECK(log2_binomial(4, 2) == doctest::Approx(std::log2(6.0)).epsilon(1e-15));
  CHECK(log2_binomial(10, 0) == 0.0);
  CHECK(log2_binomial(10, 10) == 0.0);
  CHECK_THROWS_AS(log2_binomial(5, 6), DomainError);
  CHECK_THROWS_AS(log2_binomial(5, -1), DomainError);
}

TEST_CASE("log2_binomial: matches exact integers for n <= 1000") {
  for (unsigned n : {1u, 7u, 50u, 333u, 999u, 1000u}) {
    for (unsigned k = 0; k <= n; k += (n > 100 ? 37 : 1)) {
      const double got = log2_binomial(n, k);
      const double want = oracle::log2_exact_binomial(n, k);
      // relative error of 2^got vs the exact integer
      CHECK(std::abs(std::expm1((got - want) * std::log(2.0))) < 1e-12);
    }
  }
  // the exact path in extended precision also covers the middle coefficient
  CHECK(std::abs(std::expm1((log2_binomial(1000, 500) - oracle::log2_exact_binomial(1000, 500)) *
                            std::log(2.0))) < 1e-12);
}

TEST_CASE("log2_binomial: entropy sandwich") {
  for (int n : {10, 100, 1000}) {
    for (int k = 0; k <= n; ++k) {
      const double nh = n * oracle::h_double(static_cast<double>(k) / n);
      const double v = log2_binomial(n, k);
      CHECK(v <= nh + 1e-9);
      CHECK(v >= nh - std::log2(n + 1.0) - 1e-9);
    }
  }
  // lgamma branch; exact value 28632.2630835236... (mpmath)
  const double big = log2_binomial(100000, 5000);
  const double nh = 100000 * static_cast<double>(oracle::h(oracle::Real("0.05")));
  CHECK(big <= nh);
  CHECK(big >= nh - std::log2(100001.0));
  CHECK(big == doctest::Approx(28632.26308352363).epsilon(1e-12));
}

TEST_CASE("log_sum_exp2") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(log_sum_exp2(std::vector<double>{0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(log_sum_exp2(std::vector<double>{-inf, -3.0}) == -3.0);
  CHECK(log_sum_exp2(std::vector<double>{-10, -10, -11}) ==
        doctest::Approx(-8.678071905112638).epsilon(1e-14));
  CHECK(log_sum_exp2(std::vector<double>{-inf, -inf}) == -inf);
  CHECK_THROWS_AS(log_sum_exp2(std::vector<double>{}), DomainError);
  // no underflow at finite-N scales
  CHECK(log_sum_exp2(std::vector<double>{-20000.0, -20000.0}) == doctest::Approx(-19999.0));
}

TEST_CASE("log_sum_exp2: permutation invariance and direct summation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-40.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> t(1 + trial % 17);
    for (double& x : t) x = u(rng);
    double direct = 0.0;
    for (double x : t) direct += std::exp2(x);
    const double a = log_sum_exp2(t);
    CHECK(std::abs(std::exp2(a) - direct) <= 1e-12 * direct);
    std::shuffle(t.begin(), t.end(), rng);
    CHECK(log_sum_exp2(t) == doctest::Approx(a).epsilon(1e-14));
  }
}

TEST_CASE("bisect_root") {
  const ToleranceConfig cfg;
  CHECK(bisect_root([](double x) { return x - 0.25; }, 0.0, 1.0, cfg) ==
        doctest::Approx(0.25).epsilon(1e-12));

  const double r = bisect_root([](double x) { return binary_entropy(x) - 0.5; }, 0.0, 0.5, cfg);
  CHECK(std::abs(oracle::h_double(r) - 0.5) < 1e-11);
  CHECK(r == doctest::Approx(0.11002786443835955).epsilon(1e-11));

  CHECK_THROWS_AS(bisect_root([](double x) { return x + 1.0; }, 0.0, 1.0, cfg), BracketError);

  // determinism
  auto f = [](double x) { return std::cos(x) - x; };
  CHECK(bisect_root(f, 0.0, 1.0, cfg) == bisect_root(f, 0.0, 1.0, cfg));

  ToleranceConfig tight;
  tight.max_iter = 5;
  try {
    bisect_root([](double x) { return x - 0.3; }, 0.0, 1.0, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::abs(e.best_iterate() - 0.3) < 0.05);
  }
}

TEST_CASE("bisect_root: endpoint within value tolerance") {
  const ToleranceConfig cfg;
  CHECK(bisect_root([](double x) { return x; }, 0.0, 1.0, cfg) == 0.0);
  CHECK(bisect_root([](double x) { return x - 1e-14; }, 0.0, 1.0, cfg, 1e-12) == 0.0);
}

TEST_CASE("minimize_scalar") {
  const ToleranceConfig cfg;
  auto m = minimize_scalar([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 0.5, cfg);
  CHECK(m.argmin == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(m.min < 1e-18);

  auto k = minimize_scalar([](double x) { return std::abs(x - 0.2); }, 0.0, 0.5, cfg);
  CHECK(k.argmin == doctest::Approx(0.2).epsilon(1e-11));
  CHECK(k.min < 1e-11);

  // minimum at an endpoint
  auto e = minimize_scalar([](double x) { return x; }, 0.0, 0.5, cfg);
  CHECK(e.argmin == 0.0);
  CHECK(e.min == 0.0);

  try {
    minimize_scalar([](double x) { return x > 0.25 ? std::nan("") : x; }, 0.0, 0.5, cfg);
    FAIL("expected NumericError");
  } catch (const NumericError& err) {
    CHECK(err.abscissa() > 0.25);
  }
  CHECK_THROWS_AS(minimize_scalar([](double x) { return x; }, 0.5, 0.5, cfg), DomainError);
}

TEST_CASE("ToleranceConfig validation") {
  ToleranceConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.grid_points = 8;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.root_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}
