#pragma once

// Gazeau-Klauder states |J, gamma> over the deformed spectrum:
//
//   c_n  proportional to  J^{n/2} e^{-i gamma e_n} / sqrt(rho_n),
//
// normalized numerically. The series starts at n = 0 by default (rho_0 = 1,
// e_0 = 0); a flag preserves the vacuum-excluded n >= 1 variant. For
// lambda > 0 the series is hard-truncated at the monotonic cutoff
// floor(beta/lambda); the weight that the formula would place beyond it (up
// to the positivity edge) is reported as a validity metric.
//
// States are immutable after construction; building many states across a
// parameter grid is embarrassingly parallel.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gkcs/fock.hpp"
#include "gkcs/model.hpp"
#include "gkcs/operators.hpp"

namespace gkcs {

namespace detail {

// Unnormalized log-weights log(J^n / rho_n) for n = 0..support, plus the
// log of the normalization sum, computed in a max-shifted frame.
struct WeightTable {
  std::vector<double> log_w;       // index n; -inf for excluded n
  std::vector<double> weights;     // normalized, sums to 1
  double log_norm_sq = 0.0;        // log of sum of J^n/rho_n over stored n
  std::size_t support = 0;         // last index with nonzero weight
  double stored_tail_bound = 0.0;  // bound on mass dropped past `support`
  double beyond_cutoff_mass = 0.0; // lambda>0: mass the formula would place
                                   // past the monotonic cutoff (normalized)
};

inline constexpr double kNegInf = -1.0e308;

inline WeightTable gk_weights(const ModelParams& p, double J, int n_start,
                              std::size_t max_levels = 512) {
  if (!(J >= 0.0) || !std::isfinite(J)) {
    throw std::invalid_argument("gk_weights: J must be nonnegative and finite");
  }
  if (n_start != 0 && n_start != 1) {
    throw std::invalid_argument("gk_weights: n_start must be 0 or 1");
  }
  if (J == 0.0 && n_start == 1) {
    throw std::domain_error("gk_weights: J = 0 with the vacuum excluded leaves no terms");
  }

  const auto cut = allowed_n_max(p);
  WeightTable t;
  t.log_w.assign(1, n_start == 0 ? 0.0 : kNegInf);
  if (J == 0.0) {
    t.weights = {1.0};
    t.log_norm_sq = 0.0;
    return t;
  }

  const double logJ = std::log(J);
  double lw = 0.0;
  double max_lw = t.log_w[0];
  std::size_t n = 0;
  while (true) {
    if (cut.bounded && static_cast<std::int64_t>(n) >= cut.monotonic) break;
    if (n + 1 >= max_levels) {
      // unbounded series that has not decayed: check convergence before refusing
      const double ratio = J / dimensionless_energy(p, static_cast<std::int64_t>(n + 1));
      if (ratio >= 0.9) {
        throw std::domain_error("gk_weights: series has not decayed within the level budget");
      }
      break;
    }
    const double e_next = dimensionless_energy(p, static_cast<std::int64_t>(n + 1));
    lw += logJ - std::log(e_next);
    ++n;
    t.log_w.push_back(lw);
    max_lw = std::max(max_lw, lw);
    // stop once the remaining terms are certainly negligible
    if (!cut.bounded || static_cast<std::int64_t>(n) < cut.monotonic) {
      const double e_after = dimensionless_energy(p, static_cast<std::int64_t>(n + 1));
      const double ratio = (e_after > 0.0) ? J / e_after : 2.0;
      if (ratio < 0.5 && lw - max_lw < std::log(1e-30)) break;
    }
  }
  t.support = t.log_w.size() - 1;

  // normalization in the max-shifted frame
  double sum = 0.0;
  for (double w : t.log_w) {
    if (w > kNegInf) sum += std::exp(w - max_lw);
  }
  t.log_norm_sq = max_lw + std::log(sum);

  t.weights.resize(t.log_w.size());
  for (std::size_t k = 0; k < t.log_w.size(); ++k) {
    t.weights[k] = (t.log_w[k] > kNegInf) ? std::exp(t.log_w[k] - t.log_norm_sq) : 0.0;
  }

  // mass dropped past the stored support (geometric majorant)
  if (!cut.bounded || static_cast<std::int64_t>(t.support) < cut.monotonic) {
    const double e_after = dimensionless_energy(p, static_cast<std::int64_t>(t.support + 1));
    if (e_after > 0.0) {
      const double r = J / e_after;
      if (r < 1.0) {
        t.stored_tail_bound =
            std::exp(t.log_w[t.support] - t.log_norm_sq) * r / (1.0 - r);
      } else {
        t.stored_tail_bound = 1.0;  // no usable bound
      }
    }
  }

  // lambda > 0: weight the formula would place between the monotonic cutoff
  // and the positivity edge
  if (cut.bounded && static_cast<std::int64_t>(t.support) == cut.monotonic) {
    double lw_band = t.log_w[t.support];
    double band = 0.0;
    for (std::int64_t m = cut.monotonic + 1; m <= cut.positivity; ++m) {
      const double em = dimensionless_energy(p, m);
      if (!(em > 0.0)) break;
      lw_band += logJ - std::log(em);
      band += std::exp(lw_band - t.log_norm_sq);
    }
    t.beyond_cutoff_mass = band;
  }
  return t;
}

}  // namespace detail

// N^2(J) = sum of J^n/rho_n over the series range, summed directly until the
// relative tail falls below 1e-14 or the cutoff ends the series.
inline double normalization_sq(const ModelParams& p, double J, int n_start = 0) {
  if (!(J >= 0.0) || !std::isfinite(J)) {
    throw std::invalid_argument("normalization_sq: J must be nonnegative and finite");
  }
  if (J == 0.0 && n_start == 1) {
    throw std::domain_error("normalization_sq: J = 0 with the vacuum excluded leaves no terms");
  }
  const auto cut = allowed_n_max(p);
  double sum = (n_start == 0) ? 1.0 : 0.0;
  double term = 1.0;  // J^n / rho_n
  std::int64_t n = 0;
  while (true) {
    if (cut.bounded && n >= cut.monotonic) break;
    const double e_next = dimensionless_energy(p, n + 1);
    term *= J / e_next;
    ++n;
    sum += term;
    if (!std::isfinite(sum)) {
      throw std::domain_error("normalization_sq: series overflowed (J too large)");
    }
    if (n > 2 && term < 1e-14 * sum && J / dimensionless_energy(p, n + 1) < 1.0) break;
    if (n >= 100000) {
      throw std::domain_error("normalization_sq: series did not converge");
    }
  }
  return sum;
}

struct BuildOptions {
  int n_start = 0;
  double tail_guard = 1e-10;      // representation-truncation guard
  double validity_limit = 1e-6;   // hard domain bound on the cutoff band mass
  std::size_t max_dim = 512;
};

struct GKState {
  ModelParams params;
  double J = 0.0;
  double gamma = 0.0;
  int n_start = 0;
  FockVector coefficients;
  double tail_mass = 0.0;          // mass dropped by the stored representation
  double beyond_cutoff_mass = 0.0; // lambda>0 validity metric (see header note)
};

inline GKState build_state(const ModelParams& p, double J, double gamma,
                           const BuildOptions& opt = {}) {
  if (!std::isfinite(gamma)) throw std::invalid_argument("build_state: gamma must be finite");
  const auto table = detail::gk_weights(p, J, opt.n_start, opt.max_dim - 8);
  if (table.stored_tail_bound > opt.tail_guard) {
    throw std::domain_error("build_state: truncation tail cannot be brought below the guard");
  }
  if (table.beyond_cutoff_mass > opt.validity_limit) {
    throw std::domain_error(
        "build_state: weight beyond the monotonic cutoff exceeds the validity limit "
        "(lambda > 0 with too-large J)");
  }

  // a few empty rows past the support keep variance edge checks honest
  const std::size_t dim = std::min(opt.max_dim, table.support + 1 + 8);
  GKState s;
  s.params = p;
  s.J = J;
  s.gamma = gamma;
  s.n_start = opt.n_start;
  s.tail_mass = table.stored_tail_bound;
  s.beyond_cutoff_mass = table.beyond_cutoff_mass;
  s.coefficients = FockVector(dim);
  for (std::size_t n = 0; n <= table.support; ++n) {
    if (table.weights[n] == 0.0) continue;
    const double amp = std::sqrt(table.weights[n]);
    const double phase = -gamma * dimensionless_energy(p, static_cast<std::int64_t>(n));
    s.coefficients[n] = Complex{amp * std::cos(phase), amp * std::sin(phase)};
  }
  const double norm = s.coefficients.norm();
  s.coefficients.scale(Complex{1.0 / norm, 0.0});
  return s;
}

// Every observable evaluated against the matrices of the operator module at
// the state's dimension.
struct NumericObservables {
  Complex a{0.0, 0.0};
  double x = 0.0;
  double p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double uncertainty_product = 0.0;
  double energy = 0.0;             // <H> with the operator's energy constant
  double energy_zero_point = 0.0;  // that constant, for zero-point-free views
  double n_mean = 0.0;
  double n_sq_mean = 0.0;
  double n_var = 0.0;
  double mandel_q = 0.0;
  std::size_t dim = 0;
};

inline NumericObservables numeric_observables(const GKState& s) {
  const std::size_t dim = s.coefficients.dim();
  const ModelParams& p = s.params;
  NumericObservables out;
  out.dim = dim;
  out.energy_zero_point = hamiltonian_zero_point(p);

  const FockMatrix a_mat = to_matrix(LadderPolynomial::lowering(), dim);
  const FockMatrix x_mat = to_matrix(position_op(p), dim);
  const FockMatrix p_mat = to_matrix(momentum_op(p), dim);
  const FockMatrix n_mat = to_matrix(number_op(), dim);
  const FockMatrix h_mat = to_matrix(fock_hamiltonian(p), dim);

  out.a = expectation(s.coefficients, a_mat);
  out.x = expectation_real(s.coefficients, x_mat);
  out.p = expectation_real(s.coefficients, p_mat);
  out.var_x = variance(s.coefficients, x_mat);
  out.var_p = variance(s.coefficients, p_mat);
  out.uncertainty_product = out.var_x * out.var_p;
  out.energy = expectation_real(s.coefficients, h_mat);
  out.n_mean = expectation_real(s.coefficients, n_mat);
  out.n_var = variance(s.coefficients, n_mat);
  out.n_sq_mean = out.n_var + out.n_mean * out.n_mean;
  out.mandel_q = (out.n_mean > 1e-300) ? out.n_var / out.n_mean - 1.0 : 0.0;
  return out;
}

}  // namespace gkcs
