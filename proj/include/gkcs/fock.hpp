#pragma once

// Minimal dense complex linear algebra on the truncated number basis.
// Dimensions stay small (<= 512), so everything is plain dense storage;
// values are immutable in spirit and all free functions are pure.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gkcs {

using Complex = std::complex<double>;

class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(std::size_t dim) : dim_(dim), amps_(dim, Complex{0.0, 0.0}) {
    if (dim == 0) throw std::invalid_argument("FockVector: dim must be positive");
  }

  std::size_t dim() const { return dim_; }
  Complex& operator[](std::size_t n) { return amps_[n]; }
  const Complex& operator[](std::size_t n) const { return amps_[n]; }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& c : amps_) s += std::norm(c);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  void scale(Complex f) {
    for (auto& c : amps_) c *= f;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> amps_;
};

class FockMatrix {
 public:
  FockMatrix() = default;
  explicit FockMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, Complex{0.0, 0.0}) {
    if (dim == 0) throw std::invalid_argument("FockMatrix: dim must be positive");
  }

  std::size_t dim() const { return dim_; }
  Complex& at(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const Complex& at(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

  FockMatrix adjoint() const {
    FockMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
  }

  // largest |A_ij - conj(A_ji)|
  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> a_;
};

inline FockMatrix multiply(const FockMatrix& lhs, const FockMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("multiply: dimension mismatch");
  const std::size_t d = lhs.dim();
  FockMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const Complex f = lhs.at(i, k);
      if (f == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < d; ++j) out.at(i, j) += f * rhs.at(k, j);
    }
  }
  return out;
}

inline FockVector apply(const FockMatrix& op, const FockVector& v) {
  if (op.dim() != v.dim()) throw std::invalid_argument("apply: dimension mismatch");
  const std::size_t d = v.dim();
  FockVector out(d);
  for (std::size_t i = 0; i < d; ++i) {
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < d; ++j) s += op.at(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

inline Complex inner(const FockVector& bra, const FockVector& ket) {
  if (bra.dim() != ket.dim()) throw std::invalid_argument("inner: dimension mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t n = 0; n < bra.dim(); ++n) s += std::conj(bra[n]) * ket[n];
  return s;
}

// <psi|Op|psi> for a normalized state (norm within 1e-8 of 1).
inline Complex expectation(const FockVector& state, const FockMatrix& op) {
  if (state.dim() != op.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  if (std::abs(state.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("expectation: state is not normalized");
  }
  return inner(state, apply(op, state));
}

// Real expectation of a self-adjoint operator; rejects operators whose
// hermiticity defect exceeds 1e-10.
inline double expectation_real(const FockVector& state, const FockMatrix& op) {
  if (op.hermiticity_defect() > 1e-10) {
    throw std::invalid_argument("expectation_real: operator is not self-adjoint within 1e-10");
  }
  return expectation(state, op).real();
}

// <Op^2> - <Op>^2, clamped at zero when within -1e-12 of it. Requires the
// state to stay away from the truncation edge: mass in the last 4 basis rows
// must be below 1e-10, otherwise the chosen dimension was too small.
inline double variance(const FockVector& state, const FockMatrix& op) {
  if (state.dim() != op.dim()) throw std::invalid_argument("variance: dimension mismatch");
  const std::size_t d = state.dim();
  double edge = 0.0;
  for (std::size_t n = (d >= 4 ? d - 4 : 0); n < d; ++n) edge += std::norm(state[n]);
  if (edge > 1e-10) {
    throw std::domain_error("variance: state tail mass at the truncation edge exceeds 1e-10");
  }
  const double mean = expectation_real(state, op);
  const FockVector opv = apply(op, state);
  const double mean_sq = inner(opv, opv).real();  // <psi|Op^2|psi> for self-adjoint Op
  double var = mean_sq - mean * mean;
  if (var < 0.0) {
    if (var < -1e-12) throw std::domain_error("variance: negative beyond clamp tolerance");
    var = 0.0;
  }
  return var;
}

}  // namespace gkcs
