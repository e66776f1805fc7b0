#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "gkcs/dynamics.hpp"

using namespace gkcs;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

double max_entry_diff(const GKState& a, const GKState& b) {
  double worst = 0.0;
  const std::size_t n = std::min(a.coefficients.dim(), b.coefficients.dim());
  for (std::size_t k = 0; k < n; ++k)
    worst = std::max(worst, std::abs(a.coefficients[k] - b.coefficients[k]));
  return worst;
}
}  // namespace

TEST_CASE("evolving by t = 0 is the identity") {
  const GKState s = build_state(make_params(1.0, 0.05), 1.0, 0.3);
  REQUIRE(max_entry_diff(s, evolve(s, 0.0)) == 0.0);
}

TEST_CASE("evolution relabels gamma by beta t") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> jd(0.05, 3.0), gd(0.0, 2.0 * kPi), td(0.0, 20.0);
  for (int k = 0; k < 20; ++k) {
    const double lp = (k % 2 == 0) ? 0.05 : -0.08;
    const ModelParams p = make_params_from_lambda_prime(1.3, lp);
    const double J = jd(rng), g = gd(rng), t = td(rng);
    const GKState evolved = evolve(build_state(p, J, g), t);
    const GKState rebuilt = build_state(p, J, g + p.beta * t);
    REQUIRE(max_entry_diff(evolved, rebuilt) < 1e-12);
    REQUIRE(std::abs(evolved.coefficients.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("a full classical period restores the state at lambda = 0") {
  const ModelParams p = make_params(1.7, 0.0);
  const GKState s = build_state(p, 1.0, 0.4);
  const GKState cycled = evolve(s, 2.0 * kPi / p.beta);
  REQUIRE(max_entry_diff(s, cycled) < 1e-12);
}

TEST_CASE("timescales and commensurability") {
  const Timescales ts = timescales(make_params(1.0, 0.1));
  REQUIRE(ts.classical_period == Approx(2.0 * kPi).epsilon(1e-15));
  REQUIRE(ts.revival_time.has_value());
  REQUIRE(*ts.revival_time == Approx(40.0 * kPi).epsilon(1e-15));
  REQUIRE(ts.commensurate);
  REQUIRE(ts.two_beta_over_lambda == Approx(20.0).margin(1e-9));

  REQUIRE_FALSE(timescales(make_params(1.0, 0.0)).revival_time.has_value());

  const Timescales odd = timescales(make_params(1.0, 0.07));
  REQUIRE_FALSE(odd.commensurate);

  // ratio of the two scales is 2 beta / lambda
  const Timescales t2 = timescales(make_params(2.0, 0.1));
  REQUIRE(*t2.revival_time / t2.classical_period == Approx(40.0).epsilon(1e-12));
}

TEST_CASE("autocorrelation starts at one and stays within [0, 1]") {
  const ModelParams p = make_params(1.0, 0.1);
  REQUIRE(autocorrelation(p, 0.5, 0.0) == Approx(1.0).margin(1e-12));
  for (int k = 1; k <= 200; ++k) {
    const double c = autocorrelation(p, 0.5, 0.63 * k);
    REQUIRE(c >= 0.0);
    REQUIRE(c <= 1.0 + 1e-12);
  }
}

TEST_CASE("autocorrelation is even in t and periodic at lambda = 0") {
  const ModelParams p = make_params(1.0, 0.0);
  for (double t : {0.3, 1.7, 4.4}) {
    REQUIRE(autocorrelation(p, 1.0, t) == Approx(autocorrelation(p, 1.0, -t)).margin(1e-12));
    REQUIRE(autocorrelation(p, 1.0, t + 2.0 * kPi) ==
            Approx(autocorrelation(p, 1.0, t)).margin(1e-12));
  }
  // and matches the closed-form overlap of two canonical coherent states
  for (double t : {0.5, 1.0, 3.0}) {
    REQUIRE(autocorrelation(p, 1.0, t) ==
            Approx(std::exp(-2.0 * (1.0 - std::cos(t)))).margin(1e-12));
  }
}

TEST_CASE("commensurate spectrum revives fully at the revival time") {
  const ModelParams p = make_params(1.0, 0.1);
  const double t_r = 40.0 * kPi;
  REQUIRE(autocorrelation(p, 0.5, t_r) >= 1.0 - 1e-6);
}

TEST_CASE("revival profile carries the collapse between revivals") {
  const ModelParams p = make_params(1.0, 0.1);
  const RevivalProfile prof = revival_profile(p, 0.5, 40.0 * kPi, 512);
  REQUIRE(prof.autocorr.front() == Approx(1.0).margin(1e-12));
  REQUIRE(prof.autocorr.back() == Approx(1.0).margin(1e-6));
  REQUIRE(prof.commensurate);
  double lowest = 1.0;
  for (double c : prof.autocorr) lowest = std::min(lowest, c);
  REQUIRE(lowest < 0.9);
}

TEST_CASE("heisenberg acceleration formula") {
  REQUIRE(heisenberg_xddot(make_params(1.0, 0.0), 1.0, 0.0) ==
          Approx(-std::sqrt(2.0)).epsilon(1e-14));
  REQUIRE(heisenberg_xddot(make_params_from_lambda_prime(1.0, 0.1), 1.0, 0.0) ==
          Approx(-0.8 * std::sqrt(2.0)).epsilon(1e-13));
  REQUIRE(std::abs(heisenberg_xddot(make_params(1.0, 0.05), 1.0, kPi / 2.0)) < 1e-14);
}

TEST_CASE("classical acceleration formula") {
  REQUIRE(classical_xddot(make_params(1.0, 0.0), 1.0, 0.0) ==
          Approx(-std::sqrt(2.0)).epsilon(1e-14));
  REQUIRE(classical_xddot(make_params_from_lambda_prime(1.0, 0.1), 1.0, 0.0) ==
          Approx(-0.2 * std::sqrt(2.0)).epsilon(1e-13));
  REQUIRE(std::abs(classical_xddot(make_params(1.0, 0.05), 1.0, kPi / 2.0)) < 1e-14);
}

TEST_CASE("all three accelerations agree in the linear limit") {
  for (double beta : {1.0, 2.0}) {
    const ModelParams p = make_params(beta, 0.0);
    for (double J : {0.5, 2.0}) {
      for (double g : {0.0, kPi / 3.0}) {
        const EomReport r = eom_comparison(p, J, g);
        REQUIRE(r.heisenberg == Approx(r.classical).margin(1e-14));
        REQUIRE(r.fd == Approx(r.heisenberg).margin(1e-8));
        REQUIRE(r.fd_error_estimate < 1e-8);
      }
    }
  }
}

TEST_CASE("the two printed accelerations split at first order") {
  const ModelParams p = make_params_from_lambda_prime(1.0, 0.01);
  const EomReport r = eom_comparison(p, 1.0, 0.0);
  // bracket difference is 2J - 4(1+J) = -6 at J = 1
  REQUIRE(r.printed_gap == Approx(std::sqrt(2.0) * 0.01 * 6.0).epsilon(1e-10));
  REQUIRE(r.printed_gap > 0.0);
  REQUIRE(r.first_order_coeff != 0.0);
  // the finite-difference oracle is consistent across step sizes
  REQUIRE(r.fd_error_estimate < 1e-8);
}
