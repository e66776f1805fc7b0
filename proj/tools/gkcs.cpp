// Command-line front end: parameter parsing, verification sweeps, and
// deterministic CSV/JSON emission for external plotting.
//
// Subcommands: spectrum, state, observables, verify, evolve, revival,
// mandel, eom. Identical config + seed always produce byte-identical output.
// Exit codes: 0 ok, 1 hard invariant or domain failure (flagged rows only
// fail under --strict), 2 usage error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gkcs/analytic.hpp"
#include "gkcs/dynamics.hpp"
#include "gkcs/emit.hpp"
#include "gkcs/gcs.hpp"
#include "gkcs/model.hpp"
#include "gkcs/operators.hpp"
#include "gkcs/report.hpp"

namespace {

using namespace gkcs;
constexpr double kPi = std::numbers::pi;

struct CommonOpts {
  double beta = 1.0;
  double lambda = std::numeric_limits<double>::quiet_NaN();        // unset marker
  double lambda_prime = std::numeric_limits<double>::quiet_NaN();  // unset marker
  int n_start = 0;
  double dim_guard = 1e-10;
  std::string out = "-";
  std::string format = "csv";
  bool strict = false;
  unsigned seed = 12345;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--beta", c.beta, "frequency-like scale (> 0)")->capture_default_str();
  auto* lam = sub->add_option("--lambda", c.lambda, "nonlinearity strength");
  auto* lp = sub->add_option("--lambda-prime", c.lambda_prime, "lambda/beta directly");
  lam->excludes(lp);
  lp->excludes(lam);
  sub->add_option("--n-start", c.n_start, "series start: 0 (default) or 1")
      ->check(CLI::IsMember({0, 1}));
  sub->add_option("--dim-guard", c.dim_guard, "truncation tail guard")->capture_default_str();
  sub->add_option("--out", c.out, "output path ('-' = stdout)")->capture_default_str();
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_flag("--strict", c.strict, "flagged rows fail the run");
  sub->add_option("--seed", c.seed, "seed for randomized property sweeps")
      ->capture_default_str();
  sub->add_option("--config", "flat key=value file mirroring the flags (flags win)");
}

// Flat key=value config: values become option defaults before parsing, so
// anything given on the command line still wins.
void apply_config_defaults(CLI::App& app, int argc, char** argv) {
  if (argc < 2) return;
  CLI::App* sub = app.get_subcommand_no_throw(argv[1]);
  if (sub == nullptr) return;
  std::string path;
  for (int i = 2; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--config") == 0) path = argv[i + 1];
  }
  if (path.empty()) return;
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot read config file: " + path);
  std::string line;
  while (std::getline(file, line)) {
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return (a == std::string::npos) ? std::string{} : s.substr(a, b - a + 1);
    };
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line is not key=value: " + line);
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) throw std::runtime_error("config key matches no flag: " + key);
    if (opt->get_expected_min() == 0) {
      // flag: any truthy value raises it by default
      if (value == "1" || value == "true" || value == "yes") {
        opt->default_str("true")->force_callback();
      }
    } else {
      opt->default_str(value)->force_callback();
    }
  }
}

ModelParams params_of(const CommonOpts& c) {
  const bool has_lambda = !std::isnan(c.lambda);
  const bool has_lambda_prime = !std::isnan(c.lambda_prime);
  if (has_lambda && has_lambda_prime) {
    throw std::runtime_error("--lambda and --lambda-prime are mutually exclusive");
  }
  if (has_lambda_prime) return make_params_from_lambda_prime(c.beta, c.lambda_prime);
  return make_params(c.beta, has_lambda ? c.lambda : 0.0);
}

BuildOptions build_opts(const CommonOpts& c) {
  BuildOptions o;
  o.n_start = c.n_start;
  o.tail_guard = c.dim_guard;
  return o;
}

// "start:stop:step" or a single value
struct Range {
  double start = 0.0, stop = 0.0, step = 1.0;
  std::vector<double> values() const {
    if (step <= 0.0) throw CLI::ValidationError("range step must be positive");
    std::vector<double> v;
    const double slack = 1e-9 * std::max({1.0, std::abs(start), std::abs(stop)});
    for (double x = start; x <= stop + slack; x += step) v.push_back(x);
    if (v.empty()) throw CLI::ValidationError("range is empty");
    return v;
  }
};

Range parse_range(const std::string& text) {
  Range r;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &r.start, &r.stop, &r.step) == 3) return r;
  if (std::sscanf(text.c_str(), "%lf", &r.start) == 1 &&
      text.find(':') == std::string::npos) {
    r.stop = r.start;
    r.step = 1.0;
    return r;
  }
  throw CLI::ValidationError("expected 'start:stop:step' or a single number: " + text);
}

Row base_row(const std::string& command, const ModelParams& p) {
  Row r;
  r.command = command;
  r.beta = p.beta;
  r.lambda = p.lambda;
  r.lambda_prime = p.lambda_prime;
  return r;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

// index-ordered parallel map; results are deterministic regardless of the
// completion order of the workers
std::vector<std::vector<Row>> compute_rows(std::size_t n,
                                           const std::function<std::vector<Row>(std::size_t)>& fn) {
  std::vector<std::vector<Row>> out(n);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (n < 8 || hw == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::future<void>> futs;
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::min<unsigned>(hw, 8);
  for (unsigned w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&]() {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) out[i] = fn(i);
    }));
  }
  for (auto& f : futs) f.get();
  return out;
}

int write_output(const CommonOpts& c, const std::vector<Row>& rows) {
  const std::string payload = (c.format == "json") ? to_json(rows) : to_csv(rows);
  if (c.out == "-") {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return 0;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output path: " << c.out << "\n";
    return 1;
  }
  f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  return f.good() ? 0 : 1;
}

int finish(const CommonOpts& c, const std::vector<Row>& rows) {
  bool hard = false, flagged = false;
  for (const Row& r : rows) {
    if (!std::isfinite(r.numeric)) hard = true;
    if (!r.flags.empty()) flagged = true;
  }
  const int wr = write_output(c, rows);
  if (wr != 0) return wr;
  if (hard) {
    std::cerr << "error: non-finite numeric value in output\n";
    return 1;
  }
  return (c.strict && flagged) ? 1 : 0;
}

std::vector<Row> report_rows(const std::string& command, const ModelParams& p, double J,
                             double gamma, double t, const BuildOptions& opt) {
  const ObservableReport rep = assemble_report(p, J, gamma + p.beta * t, opt);
  const std::string flags = join_flags(rep.flags);
  std::vector<Row> rows;
  rows.reserve(rep.rows.size());
  for (const auto& o : rep.rows) {
    Row r = base_row(command, p);
    r.J = J;
    r.gamma = gamma;
    r.t = t;
    r.observable = o.name;
    r.analytic = o.analytic;
    r.numeric = o.numeric;
    r.discrepancy = o.discrepancy();
    r.flags = flags;
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------

int run_spectrum(const CommonOpts& c, int n_max) {
  const ModelParams p = params_of(c);
  const auto cut = allowed_n_max(p);
  std::int64_t last = n_max;
  if (cut.bounded) last = std::min<std::int64_t>(last, cut.monotonic);
  std::vector<Row> rows;
  for (std::int64_t n = 0; n <= last; ++n) {
    Row r = base_row("spectrum", p);
    r.J = static_cast<double>(n);
    r.observable = "E[" + std::to_string(n) + "]";
    r.analytic = energy_level(p, n);
    // ratio route: beta * rho_n / rho_{n-1}
    r.numeric = (n == 0) ? 0.0 : p.beta * std::exp(log_rho(p, n) - log_rho(p, n - 1));
    r.discrepancy = std::abs(r.analytic - r.numeric);
    rows.push_back(r);

    Row q = base_row("spectrum", p);
    q.J = static_cast<double>(n);
    q.observable = "rho[" + std::to_string(n) + "]";
    double direct = 1.0;
    for (std::int64_t k = 1; k <= n; ++k) direct *= dimensionless_energy(p, k);
    q.analytic = direct;
    q.numeric = rho(p, n);
    q.discrepancy = std::abs(q.analytic - q.numeric);
    rows.push_back(q);
  }
  if (cut.bounded) {
    Row r = base_row("spectrum", p);
    r.observable = "n_max_monotonic";
    r.analytic = static_cast<double>(cut.monotonic);
    r.numeric = r.analytic;
    rows.push_back(r);
    r.observable = "n_max_positivity";
    r.analytic = static_cast<double>(cut.positivity);
    r.numeric = r.analytic;
    rows.push_back(r);
  }
  return finish(c, rows);
}

int run_state(const CommonOpts& c, double J, double gamma) {
  const ModelParams p = params_of(c);
  const GKState s = build_state(p, J, gamma, build_opts(c));
  const double norm_sq = normalization_sq(p, J, c.n_start);
  std::vector<Row> rows;
  for (std::size_t n = 0; n < s.coefficients.dim(); ++n) {
    const Complex cn = s.coefficients[n];
    if (std::norm(cn) < 1e-24 && n > 0) continue;
    Row r = base_row("state", p);
    r.J = J;
    r.gamma = gamma;
    r.observable = "coeff_abs[" + std::to_string(n) + "]";
    const std::int64_t nn = static_cast<std::int64_t>(n);
    if (n == 0 && c.n_start == 1) {
      r.analytic = 0.0;
    } else {
      r.analytic = std::exp(0.5 * (nn * std::log(std::max(J, 1e-300)) - log_rho(p, nn)) -
                            0.5 * std::log(norm_sq));
      if (J == 0.0) r.analytic = (n == 0) ? 1.0 : 0.0;
    }
    r.numeric = std::abs(cn);
    r.discrepancy = std::abs(r.analytic - r.numeric);
    rows.push_back(r);

    Row ph = base_row("state", p);
    ph.J = J;
    ph.gamma = gamma;
    ph.observable = "coeff_phase[" + std::to_string(n) + "]";
    ph.analytic = std::remainder(-gamma * dimensionless_energy(p, nn), 2.0 * kPi);
    ph.numeric = std::arg(cn);
    ph.discrepancy = std::abs(std::remainder(ph.analytic - ph.numeric, 2.0 * kPi));
    rows.push_back(ph);
  }
  Row tm = base_row("state", p);
  tm.J = J;
  tm.gamma = gamma;
  tm.observable = "tail_mass";
  tm.numeric = s.tail_mass;
  rows.push_back(tm);
  tm.observable = "beyond_cutoff_mass";
  tm.numeric = s.beyond_cutoff_mass;
  if (s.beyond_cutoff_mass > c.dim_guard) tm.flags = "cutoff_band";
  rows.push_back(tm);
  return finish(c, rows);
}

int run_observables(const CommonOpts& c, double J, double gamma, double t) {
  const ModelParams p = params_of(c);
  return finish(c, report_rows("observables", p, J, gamma, t, build_opts(c)));
}

int run_verify(const CommonOpts& c, const Range& j_range, const Range& gamma_range,
               const std::optional<Range>& lp_range, int property_samples) {
  std::vector<double> lps;
  if (lp_range) {
    lps = lp_range->values();
  } else {
    lps = {params_of(c).lambda_prime};
  }
  const std::vector<double> js = j_range.values();
  const std::vector<double> gs = gamma_range.values();

  struct Point {
    double lp, J, gamma;
  };
  std::vector<Point> grid;
  for (double lp : lps)
    for (double J : js)
      for (double g : gs) grid.push_back({lp, J, g});

  const BuildOptions opt = build_opts(c);
  const double beta = c.beta;
  auto rows_of = compute_rows(grid.size(), [&](std::size_t i) {
    const Point& pt = grid[i];
    const ModelParams p = make_params_from_lambda_prime(beta, pt.lp);
    return report_rows("verify", p, pt.J, pt.gamma, 0.0, opt);
  });

  std::vector<Row> rows;
  for (auto& chunk : rows_of) rows.insert(rows.end(), chunk.begin(), chunk.end());

  // randomized property spot checks, deterministic per seed
  std::mt19937 rng(c.seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<int> nterms(1, 6), length(0, 4), letter(0, 1);
  const ModelParams p = params_of(c);
  for (int k = 0; k < property_samples; ++k) {
    LadderPolynomial poly;
    const int terms = nterms(rng);
    for (int i = 0; i < terms; ++i) {
      Word w(static_cast<std::size_t>(length(rng)));
      for (auto& l : w) l = letter(rng) ? Ladder::raise : Ladder::lower;
      poly.add(w, Complex{coeff(rng), coeff(rng)});
    }
    const std::size_t dim = 16;
    const FockMatrix direct = to_matrix(poly, dim);
    const FockMatrix ordered = to_matrix(normal_order(poly), dim);
    double fidelity = 0.0;
    for (std::size_t i = 0; i + 4 < dim; ++i)
      for (std::size_t j = 0; j + 4 < dim; ++j)
        fidelity = std::max(fidelity, std::abs(direct.at(i, j) - ordered.at(i, j)));
    Row r = base_row("verify", p);
    r.observable = "prop:normal_order_fidelity[" + std::to_string(k) + "]";
    r.numeric = fidelity;
    r.discrepancy = fidelity;
    if (fidelity > 1e-12) r.flags = "property_violation";
    rows.push_back(r);

    const double idem = max_coefficient_diff(weyl_order(weyl_order(poly)), weyl_order(poly));
    r.observable = "prop:weyl_idempotent[" + std::to_string(k) + "]";
    r.numeric = idem;
    r.discrepancy = idem;
    r.flags = idem > 1e-12 ? "property_violation" : "";
    rows.push_back(r);

    const FockMatrix adj = to_matrix(adjoint(poly), dim);
    const FockMatrix adj_ref = direct.adjoint();
    double adj_defect = 0.0;
    bool exact = true;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        adj_defect = std::max(adj_defect, std::abs(adj.at(i, j) - adj_ref.at(i, j)));
        if (adj.at(i, j) != adj_ref.at(i, j)) exact = false;
      }
    r.observable = "prop:adjoint_exact[" + std::to_string(k) + "]";
    r.numeric = adj_defect;
    r.discrepancy = adj_defect;
    r.flags = exact ? "" : "property_violation";
    rows.push_back(r);
  }

  std::uniform_real_distribution<double> jd(0.0, 2.0), gd(0.0, 2.0 * kPi), td(0.0, 10.0);
  for (int k = 0; k < property_samples; ++k) {
    const double J = jd(rng), g = gd(rng), t = td(rng);
    const GKState a = evolve(build_state(p, J, g, build_opts(c)), t);
    const GKState b = build_state(p, J, g + p.beta * t, build_opts(c));
    double worst = 0.0;
    for (std::size_t n = 0; n < std::min(a.coefficients.dim(), b.coefficients.dim()); ++n)
      worst = std::max(worst, std::abs(a.coefficients[n] - b.coefficients[n]));
    Row r = base_row("verify", p);
    r.J = J;
    r.gamma = g;
    r.t = t;
    r.observable = "prop:temporal_stability[" + std::to_string(k) + "]";
    r.numeric = worst;
    r.discrepancy = worst;
    if (worst > 1e-12) r.flags = "property_violation";
    rows.push_back(r);
  }

  bool violated = false;
  for (const Row& r : rows)
    if (r.flags.find("property_violation") != std::string::npos) violated = true;
  const int rc = finish(c, rows);
  return violated ? 1 : rc;
}

int run_evolve(const CommonOpts& c, double J, double gamma, const Range& times) {
  const ModelParams p = params_of(c);
  const BuildOptions opt = build_opts(c);
  const GKState base = build_state(p, J, gamma, opt);
  const FockMatrix x_mat = to_matrix(position_op(p), base.coefficients.dim());
  const FockMatrix p_mat = to_matrix(momentum_op(p), base.coefficients.dim());
  std::vector<Row> rows;
  for (double t : times.values()) {
    const GKState s = evolve(base, t);
    Row r = base_row("evolve", p);
    r.J = J;
    r.gamma = gamma;
    r.t = t;
    r.observable = "x";
    r.analytic = analytic::expect_x(p, J, gamma + p.beta * t);
    r.numeric = expectation_real(s.coefficients, x_mat);
    r.discrepancy = std::abs(r.analytic - r.numeric);
    rows.push_back(r);
    r.observable = "p";
    r.analytic = analytic::expect_p(p, J, gamma + p.beta * t);
    r.numeric = expectation_real(s.coefficients, p_mat);
    r.discrepancy = std::abs(r.analytic - r.numeric);
    rows.push_back(r);
    r.observable = "norm";
    r.analytic = 1.0;
    r.numeric = s.coefficients.norm();
    r.discrepancy = std::abs(r.analytic - r.numeric);
    rows.push_back(r);
    r.observable = "autocorr";
    r.analytic = std::exp(-2.0 * J * (1.0 - std::cos(p.beta * t)));  // lambda = 0 reference
    r.numeric = autocorrelation(p, J, t, c.n_start);
    r.discrepancy = std::abs(r.analytic - r.numeric);
    rows.push_back(r);
  }
  return finish(c, rows);
}

int run_revival(const CommonOpts& c, double J, std::optional<double> t_max, int samples) {
  const ModelParams p = params_of(c);
  const Timescales ts = timescales(p);
  double horizon;
  if (t_max) {
    horizon = *t_max;
  } else if (ts.revival_time) {
    horizon = std::abs(*ts.revival_time);
  } else {
    horizon = 3.0 * ts.classical_period;
  }
  const RevivalProfile prof =
      revival_profile(p, J, horizon, static_cast<std::size_t>(samples), c.n_start);
  std::vector<Row> rows;
  double min_c = 2.0;
  for (std::size_t k = 0; k < prof.times.size(); ++k) {
    Row r = base_row("revival", p);
    r.J = J;
    r.t = prof.times[k];
    r.observable = "autocorr";
    r.analytic = std::exp(-2.0 * J * (1.0 - std::cos(p.beta * prof.times[k])));
    r.numeric = prof.autocorr[k];
    r.discrepancy = std::abs(r.analytic - r.numeric);
    rows.push_back(r);
    if (prof.times[k] > 0.0 && prof.times[k] < horizon) min_c = std::min(min_c, prof.autocorr[k]);
  }
  Row r = base_row("revival", p);
  r.J = J;
  r.observable = "T_c";
  r.analytic = ts.classical_period;
  r.numeric = ts.classical_period;
  rows.push_back(r);
  if (ts.revival_time) {
    r.observable = "T_r";
    r.analytic = *ts.revival_time;
    r.numeric = *ts.revival_time;
    rows.push_back(r);
    r.observable = "autocorr_at_Tr";
    r.t = std::abs(*ts.revival_time);
    r.analytic = 1.0;
    r.numeric = autocorrelation(p, J, r.t, c.n_start);
    r.discrepancy = std::abs(r.analytic - r.numeric);
    r.flags = ts.commensurate ? "commensurate" : "incommensurate";
    rows.push_back(r);
    r.t = 0.0;
    r.flags.clear();
  }
  r.observable = "two_beta_over_lambda";
  r.analytic = ts.two_beta_over_lambda;
  r.numeric = ts.two_beta_over_lambda;
  rows.push_back(r);
  r.observable = "min_autocorr";
  r.analytic = 0.0;
  r.numeric = (min_c <= 1.0) ? min_c : 1.0;
  r.discrepancy = 0.0;
  rows.push_back(r);
  return finish(c, rows);
}

int run_mandel(const CommonOpts& c, const Range& j_range) {
  const ModelParams p = params_of(c);
  const BuildOptions opt = build_opts(c);
  const std::vector<double> js = j_range.values();
  auto rows_of = compute_rows(js.size(), [&](std::size_t i) {
    const double J = js[i];
    const GKState s = build_state(p, J, 0.0, opt);
    const NumericObservables num = numeric_observables(s);
    std::vector<Row> rr;
    Row r = base_row("mandel", p);
    r.J = J;
    r.observable = "mandel_Q";
    r.analytic = analytic::mandel_q(p, J);
    r.numeric = num.mandel_q;
    r.discrepancy = std::abs(r.analytic - r.numeric);
    rr.push_back(r);
    r.observable = "mandel_Q_dispersion_route";
    r.analytic = analytic::mandel_q_dispersion_route(p, J);
    r.discrepancy = std::abs(r.analytic - r.numeric);
    rr.push_back(r);
    return rr;
  });

  std::vector<Row> rows;
  std::vector<double> qnum(js.size());
  for (std::size_t i = 0; i < rows_of.size(); ++i) {
    qnum[i] = rows_of[i][0].numeric;
    rows.insert(rows.end(), rows_of[i].begin(), rows_of[i].end());
  }

  // root bookkeeping: the closed-form root, the dispersion-route root, and
  // whatever the numeric curve actually does
  const auto bisect = [](const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if ((flo < 0.0) == (fm < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  Row r = base_row("mandel", p);
  r.observable = "Q_root_closed_form";
  r.analytic = (std::sqrt(57.0) - 3.0) / 8.0;
  r.numeric = bisect([&](double J) { return analytic::mandel_q(p, J); }, 0.05, 1.0);
  r.discrepancy = std::abs(r.analytic - r.numeric);
  rows.push_back(r);

  r.observable = "Q_root_dispersion_route";
  r.analytic = 0.5;
  r.numeric = bisect([&](double J) { return analytic::mandel_q_dispersion_route(p, J); },
                     0.05, 1.0);
  r.discrepancy = std::abs(r.analytic - r.numeric);
  rows.push_back(r);

  int sign_changes = 0;
  std::optional<double> root;
  for (std::size_t i = 1; i < js.size(); ++i) {
    if (qnum[i - 1] != 0.0 && qnum[i] != 0.0 && (qnum[i - 1] < 0.0) != (qnum[i] < 0.0)) {
      ++sign_changes;
      root = 0.5 * (js[i - 1] + js[i]);
    }
  }
  r.observable = "Q_numeric_sign_changes";
  r.analytic = 1.0;  // what the closed forms predict
  r.numeric = static_cast<double>(sign_changes);
  r.discrepancy = std::abs(r.analytic - r.numeric);
  r.flags = (sign_changes == 0) ? "no_root_found" : "";
  rows.push_back(r);

  r = base_row("mandel", p);
  r.observable = "Q_numeric_root";
  if (root) {
    const double d_printed = std::abs(*root - (std::sqrt(57.0) - 3.0) / 8.0);
    const double d_route = std::abs(*root - 0.5);
    r.numeric = *root;
    r.analytic = (d_route <= d_printed) ? 0.5 : (std::sqrt(57.0) - 3.0) / 8.0;
    r.discrepancy = std::min(d_printed, d_route);
    r.flags = (d_route <= d_printed) ? "nearer_dispersion_route" : "nearer_closed_form";
  } else {
    r.numeric = std::numeric_limits<double>::quiet_NaN();
    r.analytic = std::numeric_limits<double>::quiet_NaN();
    r.flags = "no_root_found";
  }
  rows.push_back(r);

  // NaN is intentional in the no-root row; bypass the hard-failure scan
  bool flagged = false;
  for (const Row& row : rows)
    if (!row.flags.empty()) flagged = true;
  const int wr = write_output(c, rows);
  if (wr != 0) return wr;
  return (c.strict && flagged) ? 1 : 0;
}

int run_eom(const CommonOpts& c, double J, double gamma) {
  const ModelParams p = params_of(c);
  const EomReport rep = eom_comparison(p, J, gamma);
  std::vector<Row> rows;
  Row r = base_row("eom", p);
  r.J = J;
  r.gamma = gamma;
  r.observable = "xddot_heisenberg";
  r.analytic = rep.heisenberg;
  r.numeric = rep.fd;
  r.discrepancy = std::abs(r.analytic - r.numeric);
  rows.push_back(r);
  r.observable = "xddot_classical";
  r.analytic = rep.classical;
  r.numeric = rep.fd;
  r.discrepancy = std::abs(r.analytic - r.numeric);
  rows.push_back(r);
  r.observable = "xddot_gap_printed";
  r.analytic = std::sqrt(2.0 * J * p.beta) * std::abs(p.lambda_prime) *
               std::abs(2.0 * J - 4.0 * (1.0 + J)) * std::abs(std::cos(gamma));
  r.numeric = rep.printed_gap;
  r.discrepancy = std::abs(r.analytic - r.numeric);
  rows.push_back(r);
  r.observable = "xddot_fd_error_estimate";
  r.analytic = 0.0;
  r.numeric = rep.fd_error_estimate;
  r.discrepancy = rep.fd_error_estimate;
  rows.push_back(r);
  if (p.lambda != 0.0) {
    r.observable = "xddot_first_order_coeff";
    r.analytic = std::sqrt(2.0 * J * p.beta) *
                 (-1.0 + 2.0 * J + (1.0 + J) * 0.5 * p.beta) * std::cos(gamma);
    r.numeric = rep.first_order_coeff;
    r.discrepancy = std::abs(r.analytic - r.numeric);
    rows.push_back(r);
  }
  return finish(c, rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-route evaluation of nonlinear-oscillator coherent states"};
  app.require_subcommand(1);

  CommonOpts c_spectrum, c_state, c_obs, c_verify, c_evolve, c_revival, c_mandel, c_eom;

  auto* sub_spectrum = app.add_subcommand("spectrum", "energy levels and rho products");
  add_common(sub_spectrum, c_spectrum);
  int n_max = 20;
  sub_spectrum->add_option("--n-max", n_max, "highest level")->capture_default_str();

  auto* sub_state = app.add_subcommand("state", "wave-packet coefficients");
  add_common(sub_state, c_state);
  double st_J = 1.0, st_gamma = 0.0;
  sub_state->add_option("--J", st_J, "action label")->capture_default_str();
  sub_state->add_option("--gamma", st_gamma, "phase label")->capture_default_str();

  auto* sub_obs = app.add_subcommand("observables", "paired analytic/numeric observables");
  add_common(sub_obs, c_obs);
  double ob_J = 1.0, ob_gamma = 0.0, ob_t = 0.0;
  sub_obs->add_option("--J", ob_J)->capture_default_str();
  sub_obs->add_option("--gamma", ob_gamma)->capture_default_str();
  sub_obs->add_option("--t", ob_t, "evolve before evaluating")->capture_default_str();

  auto* sub_verify = app.add_subcommand("verify", "sweep grids and property checks");
  add_common(sub_verify, c_verify);
  std::string vj = "0.25:1:0.75", vg = "0:0.7853981633974483:0.7853981633974483";
  std::string vlp;
  int prop_samples = 25;
  sub_verify->add_option("--J-range,--J", vj, "single value or start:stop:step")
      ->capture_default_str();
  sub_verify->add_option("--gamma-range,--gamma", vg, "single value or start:stop:step")
      ->capture_default_str();
  sub_verify->add_option("--lambda-prime-range", vlp, "start:stop:step (overrides --lambda)");
  sub_verify->add_option("--property-samples", prop_samples)->capture_default_str();

  auto* sub_evolve = app.add_subcommand("evolve", "time evolution of one packet");
  add_common(sub_evolve, c_evolve);
  double ev_J = 1.0, ev_gamma = 0.0;
  std::string ev_t = "0:6.283185307179586:0.39269908169872414";
  sub_evolve->add_option("--J", ev_J)->capture_default_str();
  sub_evolve->add_option("--gamma", ev_gamma)->capture_default_str();
  sub_evolve->add_option("--time-range", ev_t, "start:stop:step")->capture_default_str();

  auto* sub_revival = app.add_subcommand("revival", "autocorrelation over a revival window");
  add_common(sub_revival, c_revival);
  double rv_J = 0.5;
  double rv_tmax = -1.0;
  int rv_samples = 512;
  sub_revival->add_option("--J", rv_J)->capture_default_str();
  sub_revival->add_option("--t-max", rv_tmax, "window (default: revival time)");
  sub_revival->add_option("--samples", rv_samples)->capture_default_str();

  auto* sub_mandel = app.add_subcommand("mandel", "Mandel Q sweep and root adjudication");
  add_common(sub_mandel, c_mandel);
  std::string mj = "0.05:1:0.05";
  sub_mandel->add_option("--J-range,--J", mj, "single value or start:stop:step")
      ->capture_default_str();

  auto* sub_eom = app.add_subcommand("eom", "equation-of-motion comparison");
  add_common(sub_eom, c_eom);
  double eo_J = 1.0, eo_gamma = 0.0;
  sub_eom->add_option("--J", eo_J)->capture_default_str();
  sub_eom->add_option("--gamma", eo_gamma)->capture_default_str();

  try {
    apply_config_defaults(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sub_spectrum->parsed()) return run_spectrum(c_spectrum, n_max);
    if (sub_state->parsed()) return run_state(c_state, st_J, st_gamma);
    if (sub_obs->parsed()) return run_observables(c_obs, ob_J, ob_gamma, ob_t);
    if (sub_verify->parsed()) {
      std::optional<Range> lp_range;
      if (!vlp.empty()) lp_range = parse_range(vlp);
      return run_verify(c_verify, parse_range(vj), parse_range(vg), lp_range, prop_samples);
    }
    if (sub_evolve->parsed()) return run_evolve(c_evolve, ev_J, ev_gamma, parse_range(ev_t));
    if (sub_revival->parsed()) {
      std::optional<double> tmax;
      if (rv_tmax > 0.0) tmax = rv_tmax;
      return run_revival(c_revival, rv_J, tmax, rv_samples);
    }
    if (sub_mandel->parsed()) return run_mandel(c_mandel, parse_range(mj));
    if (sub_eom->parsed()) return run_eom(c_eom, eo_J, eo_gamma);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
