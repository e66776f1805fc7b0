#pragma once

// Paired (analytic, numeric) evaluation of every observable at one
// (params, J, gamma) point. The analytic column carries the primary closed
// forms; the numeric column is the truncated-basis evaluation. Discrepancies
// are recomputed from the two stored values, never cached.
//
// The energy row compares the zero-point-free energy on both sides, so the
// operator's energy constant (a declared convention) cannot masquerade as a
// discrepancy.

#include <cmath>
#include <string>
#include <vector>

#include "gkcs/analytic.hpp"
#include "gkcs/dynamics.hpp"
#include "gkcs/gcs.hpp"

namespace gkcs {

struct ObservableRow {
  std::string name;
  double analytic = 0.0;
  double numeric = 0.0;
  double discrepancy() const { return std::abs(analytic - numeric); }
};

struct ObservableReport {
  ModelParams params;
  double J = 0.0;
  double gamma = 0.0;
  int n_start = 0;
  std::vector<ObservableRow> rows;
  std::vector<std::string> flags;
};

inline ObservableReport assemble_report(const ModelParams& p, double J, double gamma,
                                        const BuildOptions& opt = {}) {
  const GKState state = build_state(p, J, gamma, opt);
  const NumericObservables num = numeric_observables(state);

  ObservableReport rep;
  rep.params = p;
  rep.J = J;
  rep.gamma = gamma;
  rep.n_start = opt.n_start;

  const Complex a_cf = analytic::expect_a(p, J, gamma);
  const analytic::NumberMoments nm = analytic::number_moments(p, J);
  const double energy_cf = analytic::energy_expect(p, J, gamma) - 0.5 * p.beta;
  const double energy_num = num.energy - num.energy_zero_point;

  rep.rows = {
      {"a_re", a_cf.real(), num.a.real()},
      {"a_im", a_cf.imag(), num.a.imag()},
      {"x", analytic::expect_x(p, J, gamma), num.x},
      {"p", analytic::expect_p(p, J, gamma), num.p},
      {"var_x", analytic::variance_x(p, J, gamma), num.var_x},
      {"var_p", analytic::variance_p(p, J, gamma), num.var_p},
      {"uncertainty_product", analytic::uncertainty_product(p, J), num.uncertainty_product},
      {"energy", energy_cf, energy_num},
      {"N", nm.mean, num.n_mean},
      {"N_sq", nm.mean_sq, num.n_sq_mean},
      {"var_N", nm.variance, num.n_var},
      {"mandel_Q", analytic::mandel_q(p, J), num.mandel_q},
  };

  if (analytic::secular_window_exceeded(p, J, gamma)) rep.flags.push_back("secular_window");
  if (state.beyond_cutoff_mass > opt.tail_guard) rep.flags.push_back("cutoff_band");
  if (opt.n_start == 1) rep.flags.push_back("vacuum_excluded_variant");
  return rep;
}

}  // namespace gkcs
