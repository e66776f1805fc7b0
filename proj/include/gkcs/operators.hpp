#pragma once

// Model operators as ladder polynomials: the deformed ladder pair A, A+,
// the canonical quadratures x, p, and the first-order Fock-space Hamiltonian.
// Everything is generated mechanically from the Weyl-ordered expressions;
// nothing is transcribed from printed expansions.

#include <cmath>
#include <optional>

#include "gkcs/ladder.hpp"
#include "gkcs/model.hpp"

namespace gkcs {

namespace detail {

// Weyl-symmetrized (a + a+)^2 a+ : the cubic deformation of the lowering side.
inline LadderPolynomial weyl_cubic_raise() {
  const LadderPolynomial sum = LadderPolynomial::lowering() + LadderPolynomial::raising();
  return weyl_order(sum * sum * LadderPolynomial::raising());
}

}  // namespace detail

// A = sqrt(beta) * (a - (lambda'/4) W[(a + a+)^2 a+])
inline LadderPolynomial deformed_annihilator(const ModelParams& p) {
  LadderPolynomial cubic = detail::weyl_cubic_raise();
  cubic *= Complex{-p.lambda_prime / 4.0, 0.0};
  LadderPolynomial a = LadderPolynomial::lowering() + cubic;
  a *= Complex{std::sqrt(p.beta), 0.0};
  return a;
}

// A+ as the formal adjoint of A; identical to the direct Weyl-ordered
// construction of sqrt(beta) * (a+ - (lambda'/4) W[(a + a+)^2 a]).
inline LadderPolynomial deformed_creator(const ModelParams& p) {
  return adjoint(deformed_annihilator(p));
}

inline LadderPolynomial number_op() {
  return LadderPolynomial::raising() * LadderPolynomial::lowering();
}

// x = (a + a+)/sqrt(2 beta), p = -i sqrt(beta/2) (a - a+): the quadratures
// keep their canonical form at first order.
inline LadderPolynomial position_op(const ModelParams& p) {
  LadderPolynomial x = LadderPolynomial::lowering() + LadderPolynomial::raising();
  x *= Complex{1.0 / std::sqrt(2.0 * p.beta), 0.0};
  return x;
}

inline LadderPolynomial momentum_op(const ModelParams& p) {
  LadderPolynomial d = LadderPolynomial::lowering() - LadderPolynomial::raising();
  d *= Complex{0.0, -std::sqrt(p.beta / 2.0)};
  return d;
}

// The energy constant carried by the Hamiltonian operator. The factorized
// part A+A is zero-point-free (its diagonal is exactly E_n at first order);
// the reference convention places beta - lambda/4 on top of it, which is
// what the first-order perturbative diagonal carries.
inline double hamiltonian_zero_point(const ModelParams& p) {
  return p.beta - p.lambda / 4.0;
}

// First-order Fock-space Hamiltonian
//
//   H = beta * [ a+a - (lambda'/4) (a+ W1 + W2 a) ] + zero_point * 1,
//
// with W1 = W[(a+a+)^2 a+] and W2 = W1+. This is A+A expanded and truncated
// at first order: the (lambda'/4)^2 W2 W1 cross term is dropped, since the
// operator is a first-order object and the quartic cross term would shift
// the diagonal at O(lambda'^2).
inline LadderPolynomial fock_hamiltonian(const ModelParams& p,
                                         std::optional<double> zero_point = std::nullopt) {
  const LadderPolynomial w1 = detail::weyl_cubic_raise();
  const LadderPolynomial w2 = adjoint(w1);
  LadderPolynomial deformation =
      LadderPolynomial::raising() * w1 + w2 * LadderPolynomial::lowering();
  deformation *= Complex{-p.lambda_prime / 4.0, 0.0};
  LadderPolynomial h = number_op() + deformation;
  h *= Complex{p.beta, 0.0};
  const double zp = zero_point.value_or(hamiltonian_zero_point(p));
  h += LadderPolynomial::identity(Complex{zp, 0.0});
  return h;
}

}  // namespace gkcs
