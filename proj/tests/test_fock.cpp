#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gkcs/fock.hpp"
#include "gkcs/ladder.hpp"
#include "gkcs/operators.hpp"

using namespace gkcs;
using Catch::Approx;

namespace {

FockVector basis_state(std::size_t dim, std::size_t n) {
  FockVector v(dim);
  v[n] = Complex{1.0, 0.0};
  return v;
}

}  // namespace

TEST_CASE("expectation on number eigenstates") {
  const auto n_mat = to_matrix(number_op(), 8);
  REQUIRE(expectation(basis_state(8, 0), n_mat) == Complex{0.0, 0.0});
  REQUIRE(expectation(basis_state(8, 2), n_mat).real() == Approx(2.0).margin(1e-15));
}

TEST_CASE("expectation of the lowering operator on a two-level superposition") {
  FockVector v(4);
  v[0] = Complex{1.0 / std::sqrt(2.0), 0.0};
  v[1] = Complex{1.0 / std::sqrt(2.0), 0.0};
  const auto a_mat = to_matrix(LadderPolynomial::lowering(), 4);
  REQUIRE(expectation(v, a_mat).real() == Approx(0.5).margin(1e-15));
  REQUIRE(expectation(v, a_mat).imag() == Approx(0.0).margin(1e-15));
}

TEST_CASE("expectation rejects bad input") {
  const auto n_mat = to_matrix(number_op(), 8);
  REQUIRE_THROWS_AS(expectation(basis_state(6, 0), n_mat), std::invalid_argument);
  FockVector unnormalized(8);
  unnormalized[0] = Complex{0.5, 0.0};
  REQUIRE_THROWS_AS(expectation(unnormalized, n_mat), std::invalid_argument);
}

TEST_CASE("expectation_real rejects non-self-adjoint operators") {
  const auto a_mat = to_matrix(LadderPolynomial::lowering(), 8);
  REQUIRE_THROWS_AS(expectation_real(basis_state(8, 1), a_mat), std::invalid_argument);
}

TEST_CASE("variance vanishes on eigenstates") {
  const auto n_mat = to_matrix(number_op(), 16);
  REQUIRE(variance(basis_state(16, 3), n_mat) == 0.0);
}

TEST_CASE("ground-state position variance is 1/(2 beta)") {
  const auto x_mat = to_matrix(position_op(make_params(1.0, 0.0)), 16);
  REQUIRE(variance(basis_state(16, 0), x_mat) == Approx(0.5).margin(1e-14));
  const auto x2 = to_matrix(position_op(make_params(2.0, 0.0)), 16);
  REQUIRE(variance(basis_state(16, 0), x2) == Approx(0.25).margin(1e-14));
}

TEST_CASE("number variance of (|0> + |2>)/sqrt(2)") {
  FockVector v(16);
  v[0] = Complex{1.0 / std::sqrt(2.0), 0.0};
  v[2] = Complex{1.0 / std::sqrt(2.0), 0.0};
  const auto n_mat = to_matrix(number_op(), 16);
  REQUIRE(variance(v, n_mat) == Approx(1.0).margin(1e-14));
}

TEST_CASE("variance rejects states touching the truncation edge") {
  const auto n_mat = to_matrix(number_op(), 8);
  REQUIRE_THROWS_AS(variance(basis_state(8, 6), n_mat), std::domain_error);
}

TEST_CASE("expectation is linear in the operator") {
  FockVector v(8);
  v[0] = Complex{0.6, 0.0};
  v[1] = Complex{0.0, 0.8};
  const auto a_mat = to_matrix(LadderPolynomial::lowering(), 8);
  const Complex base = expectation(v, a_mat);
  const Complex c{1.7, -2.3};
  FockMatrix scaled(8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) scaled.at(i, j) = c * a_mat.at(i, j);
  REQUIRE(std::abs(expectation(v, scaled) - c * base) < 1e-14);
}

TEST_CASE("variance is nonnegative after clamping") {
  // a state whose raw variance lands at rounding level below zero
  FockVector v(16);
  v[5] = Complex{1.0, 0.0};
  const auto h = to_matrix(fock_hamiltonian(make_params(1.0, 0.05)), 16);
  REQUIRE(variance(v, h) >= 0.0);
}

TEST_CASE("global phases preserve the norm and every expectation") {
  FockVector v(8);
  v[0] = Complex{0.6, 0.0};
  v[2] = Complex{0.48, 0.64};
  REQUIRE(v.norm() == Approx(1.0).margin(1e-15));
  FockVector w = v;
  w.scale(Complex{std::cos(1.234), std::sin(1.234)});
  REQUIRE(w.norm() == Approx(1.0).margin(1e-12));
  const auto n_mat = to_matrix(number_op(), 8);
  REQUIRE(expectation(w, n_mat).real() == Approx(expectation(v, n_mat).real()).margin(1e-12));
}

TEST_CASE("multiply matches the operator product on the interior block") {
  const auto a = to_matrix(LadderPolynomial::lowering(), 10);
  const auto ad = to_matrix(LadderPolynomial::raising(), 10);
  const auto prod = multiply(ad, a);
  const auto n_mat = to_matrix(number_op(), 10);
  for (std::size_t i = 0; i + 2 < 10; ++i)
    for (std::size_t j = 0; j + 2 < 10; ++j)
      REQUIRE(std::abs(prod.at(i, j) - n_mat.at(i, j)) < 1e-13);
}
