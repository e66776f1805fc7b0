#pragma once

// Model parameters and the deformed oscillator spectrum
//
//   E_n = beta*n - (lambda/2)*n^2,   e_n = E_n/beta = n*(1 - (lambda'/2)*n)
//
// with lambda' = lambda/beta and alpha^2 = beta*(beta+lambda) fixed at
// construction. All values are immutable after construction; everything in
// this header is safe for concurrent reads.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkcs {

struct ModelParams {
  double beta = 1.0;          // frequency-like scale, > 0
  double lambda = 0.0;        // nonlinearity, either sign
  double lambda_prime = 0.0;  // lambda / beta, |lambda'| < 1 enforced
  double alpha_sq = 1.0;      // beta * (beta + lambda)
};

// The first-order treatment is only trustworthy for |lambda'| well below 1;
// construction rejects |lambda'| >= 1 outright.
inline ModelParams make_params(double beta, double lambda) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("make_params: beta must be positive and finite");
  }
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("make_params: lambda must be finite");
  }
  const double lambda_prime = lambda / beta;
  if (!(std::abs(lambda_prime) < 1.0)) {
    throw std::domain_error("make_params: |lambda/beta| >= 1 is outside the perturbative regime");
  }
  return ModelParams{beta, lambda, lambda_prime, beta * (beta + lambda)};
}

inline ModelParams make_params_from_lambda_prime(double beta, double lambda_prime) {
  return make_params(beta, lambda_prime * beta);
}

// Level cutoffs for lambda > 0. Two bounds are exposed:
//  - positivity: largest n with E_n >= 0 (the n <= 2*beta/lambda restriction),
//  - monotonic:  floor(beta/lambda), up to which e_n is strictly increasing;
//    this is the operative bound for the coherent-state series, since the
//    construction needs strictly increasing e_n and positive rho_n.
struct LevelCutoff {
  bool bounded = false;
  std::int64_t positivity = 0;
  std::int64_t monotonic = 0;
};

inline LevelCutoff allowed_n_max(const ModelParams& p) {
  if (p.lambda <= 0.0) return LevelCutoff{false, 0, 0};
  return LevelCutoff{true,
                     static_cast<std::int64_t>(std::floor(2.0 * p.beta / p.lambda)),
                     static_cast<std::int64_t>(std::floor(p.beta / p.lambda))};
}

inline double dimensionless_energy(const ModelParams& p, std::int64_t n) {
  const double nn = static_cast<double>(n);
  return nn * (1.0 - 0.5 * p.lambda_prime * nn);
}

inline double energy_level(const ModelParams& p, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("energy_level: n must be nonnegative");
  const auto cut = allowed_n_max(p);
  if (cut.bounded && n > cut.positivity) {
    throw std::domain_error("energy_level: n above the positivity cutoff for lambda > 0");
  }
  return p.beta * dimensionless_energy(p, n);
}

// log(rho_n) with rho_n = e_1 e_2 ... e_n (rho_0 = 1), accumulated
// incrementally. Throws if any factor e_k is not strictly positive, which
// signals a cutoff violation for lambda > 0.
inline double log_rho(const ModelParams& p, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("log_rho: n must be nonnegative");
  double acc = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double ek = dimensionless_energy(p, k);
    if (!(ek > 0.0)) {
      throw std::domain_error("log_rho: e_" + std::to_string(k) +
                              " <= 0 (lambda > 0 cutoff violated)");
    }
    acc += std::log(ek);
  }
  return acc;
}

// rho_n as a plain double. Direct product for small n; log-space beyond
// n = 30 so large-n tails of J^n/rho_n stay representable.
inline double rho(const ModelParams& p, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("rho: n must be nonnegative");
  if (n <= 30) {
    double acc = 1.0;
    for (std::int64_t k = 1; k <= n; ++k) {
      const double ek = dimensionless_energy(p, k);
      if (!(ek > 0.0)) {
        throw std::domain_error("rho: e_" + std::to_string(k) +
                                " <= 0 (lambda > 0 cutoff violated)");
      }
      acc *= ek;
    }
    return acc;
  }
  return std::exp(log_rho(p, n));
}

struct SpectrumEntry {
  std::int64_t n = 0;
  double energy = 0.0;  // E_n
  double e = 0.0;       // e_n = E_n / beta
};

struct SpectrumTable {
  ModelParams params;
  std::optional<std::int64_t> n_max;  // empty = unbounded (lambda <= 0)
  std::vector<SpectrumEntry> entries;
};

// Table of the first `count` levels (clipped to the monotonic cutoff when
// lambda > 0, so every stored level is usable by the coherent-state series).
inline SpectrumTable make_spectrum_table(const ModelParams& p, std::int64_t count) {
  if (count < 1) throw std::invalid_argument("make_spectrum_table: count must be >= 1");
  SpectrumTable table;
  table.params = p;
  const auto cut = allowed_n_max(p);
  std::int64_t last = count - 1;
  if (cut.bounded) {
    table.n_max = cut.monotonic;
    last = std::min(last, cut.monotonic);
  }
  table.entries.reserve(static_cast<std::size_t>(last + 1));
  for (std::int64_t n = 0; n <= last; ++n) {
    const double e = dimensionless_energy(p, n);
    table.entries.push_back(SpectrumEntry{n, p.beta * e, e});
  }
  return table;
}

}  // namespace gkcs
