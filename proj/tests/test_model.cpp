#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gkcs/model.hpp"

using namespace gkcs;
using Catch::Approx;

TEST_CASE("make_params populates the derived quantities") {
  const ModelParams ho = make_params(1.0, 0.0);
  REQUIRE(ho.lambda_prime == 0.0);
  REQUIRE(ho.alpha_sq == 1.0);

  const ModelParams soft = make_params(1.0, 0.1);
  REQUIRE(soft.lambda_prime == Approx(0.1).epsilon(1e-15));
  REQUIRE(soft.alpha_sq == Approx(1.1).epsilon(1e-15));

  const ModelParams stiff = make_params(2.0, -0.2);
  REQUIRE(stiff.lambda_prime == Approx(-0.1).epsilon(1e-15));
  REQUIRE(stiff.alpha_sq == Approx(3.6).epsilon(1e-15));
}

TEST_CASE("make_params rejects out-of-domain input") {
  REQUIRE_THROWS_AS(make_params(0.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(make_params(-1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(make_params(1.0, 1.0), std::domain_error);
  REQUIRE_THROWS_AS(make_params(1.0, -1.5), std::domain_error);
  REQUIRE_NOTHROW(make_params(1.0, 0.999));
}

TEST_CASE("energy_level evaluates beta n - (lambda/2) n^2") {
  REQUIRE(energy_level(make_params(1.0, 0.0), 3) == Approx(3.0));
  REQUIRE(energy_level(make_params(2.0, 0.2), 4) == Approx(6.4).epsilon(1e-14));
  REQUIRE(energy_level(make_params(1.0, -0.2), 2) == Approx(2.4).epsilon(1e-14));
}

TEST_CASE("energy_level rejects levels past the positivity cutoff") {
  const ModelParams p = make_params(1.0, 0.1);
  REQUIRE_NOTHROW(energy_level(p, 20));
  REQUIRE_THROWS_AS(energy_level(p, 21), std::domain_error);
  // no cutoff for lambda <= 0
  REQUIRE_NOTHROW(energy_level(make_params(1.0, -0.1), 5000));
}

TEST_CASE("allowed_n_max exposes both bounds for lambda > 0") {
  const auto cut = allowed_n_max(make_params(1.0, 0.1));
  REQUIRE(cut.bounded);
  REQUIRE(cut.positivity == 20);
  REQUIRE(cut.monotonic == 10);

  const auto open = allowed_n_max(make_params(1.0, -0.1));
  REQUIRE_FALSE(open.bounded);
}

TEST_CASE("monotonic bound agrees with a direct scan of e_n") {
  const ModelParams p = make_params(1.0, 0.1);
  const auto cut = allowed_n_max(p);
  // e_n strictly increasing through the bound, decreasing right after
  for (std::int64_t n = 1; n <= cut.monotonic; ++n) {
    REQUIRE(dimensionless_energy(p, n) > dimensionless_energy(p, n - 1));
  }
  REQUIRE(dimensionless_energy(p, cut.monotonic + 1) <=
          dimensionless_energy(p, cut.monotonic));
}

TEST_CASE("rho reproduces factorials at lambda = 0") {
  const ModelParams p = make_params(1.0, 0.0);
  REQUIRE(rho(p, 0) == 1.0);
  REQUIRE(rho(p, 3) == Approx(6.0).epsilon(1e-14));
  double fact = 1.0;
  for (std::int64_t n = 1; n <= 20; ++n) {
    fact *= static_cast<double>(n);
    REQUIRE(rho(p, n) == Approx(fact).epsilon(1e-12));
  }
}

TEST_CASE("rho follows the running product of e_k") {
  const ModelParams p = make_params(1.0, 0.1);
  // e_1 = 0.95, e_2 = 1.8
  REQUIRE(rho(p, 2) == Approx(1.71).epsilon(1e-14));
  REQUIRE(rho(make_params(1.0, -0.3), 0) == 1.0);
}

TEST_CASE("rho and log_rho reject nonpositive factors") {
  const ModelParams p = make_params(1.0, 0.15);
  // e_k <= 0 from k = 14 on (2/0.15 = 13.33)
  REQUIRE_NOTHROW(rho(p, 13));
  REQUIRE_THROWS_AS(rho(p, 14), std::domain_error);
  REQUIRE_THROWS_AS(log_rho(p, 14), std::domain_error);
}

TEST_CASE("E_n / beta equals e_n for random parameters") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> beta_d(0.2, 4.0), lp_d(-0.5, 0.2);
  for (int trial = 0; trial < 50; ++trial) {
    const ModelParams p = make_params_from_lambda_prime(beta_d(rng), lp_d(rng));
    const auto cut = allowed_n_max(p);
    for (std::int64_t n = 0; n <= 12; ++n) {
      if (cut.bounded && n > cut.positivity) break;
      REQUIRE(energy_level(p, n) / p.beta ==
              Approx(dimensionless_energy(p, n)).margin(1e-13));
    }
  }
}

TEST_CASE("rho stays positive and e_n increases below the monotonic bound") {
  const ModelParams p = make_params(2.0, 0.17);
  const auto cut = allowed_n_max(p);
  REQUIRE(cut.bounded);
  for (std::int64_t n = 1; n <= cut.monotonic; ++n) {
    REQUIRE(rho(p, n) > 0.0);
    REQUIRE(dimensionless_energy(p, n) > dimensionless_energy(p, n - 1));
  }
}

TEST_CASE("log_rho matches an extended-precision direct product") {
  const ModelParams p = make_params(1.0, -0.3);
  long double prod = 1.0L;
  for (std::int64_t n = 1; n <= 40; ++n) {
    prod *= static_cast<long double>(dimensionless_energy(p, n));
    const double expected = static_cast<double>(std::log(prod));
    REQUIRE(log_rho(p, n) == Approx(expected).epsilon(1e-12));
  }
  // the log-space route for n > 30 agrees with the extended-precision value
  REQUIRE(rho(p, 40) == Approx(static_cast<double>(prod)).epsilon(1e-12));
}

TEST_CASE("make_spectrum_table clips at the monotonic cutoff") {
  const SpectrumTable open = make_spectrum_table(make_params(1.0, -0.1), 15);
  REQUIRE_FALSE(open.n_max.has_value());
  REQUIRE(open.entries.size() == 15);
  REQUIRE(open.entries[0].e == 0.0);

  const SpectrumTable capped = make_spectrum_table(make_params(1.0, 0.1), 50);
  REQUIRE(capped.n_max.has_value());
  REQUIRE(*capped.n_max == 10);
  REQUIRE(capped.entries.size() == 11);
  for (const auto& entry : capped.entries) {
    REQUIRE(entry.energy == Approx(entry.e * 1.0).margin(1e-14));
  }
}
