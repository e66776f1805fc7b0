#pragma once

// Deterministic CSV/JSON emission for sweep rows. Floats are serialized with
// 17 significant digits so identical inputs produce byte-identical files and
// downstream diffs only fire on real changes.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace gkcs {

struct Row {
  std::string command;
  double beta = 0.0;
  double lambda = 0.0;
  double lambda_prime = 0.0;
  double J = 0.0;
  double gamma = 0.0;
  double t = 0.0;
  std::string observable;
  double analytic = 0.0;
  double numeric = 0.0;
  double discrepancy = 0.0;
  std::string flags;  // semicolon-separated, no commas
};

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline constexpr const char* kCsvHeader =
    "command,beta,lambda,lambda_prime,J,gamma,t,observable,analytic,numeric,"
    "discrepancy,flags";

inline std::string to_csv(const std::vector<Row>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const Row& r : rows) {
    out += r.command;
    out += ',';
    out += format_g17(r.beta);
    out += ',';
    out += format_g17(r.lambda);
    out += ',';
    out += format_g17(r.lambda_prime);
    out += ',';
    out += format_g17(r.J);
    out += ',';
    out += format_g17(r.gamma);
    out += ',';
    out += format_g17(r.t);
    out += ',';
    out += r.observable;
    out += ',';
    out += format_g17(r.analytic);
    out += ',';
    out += format_g17(r.numeric);
    out += ',';
    out += format_g17(r.discrepancy);
    out += ',';
    out += r.flags;
    out += '\n';
  }
  return out;
}

inline std::string to_json(const std::vector<Row>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Row& r : rows) {
    nlohmann::ordered_json o;
    o["command"] = r.command;
    o["beta"] = r.beta;
    o["lambda"] = r.lambda;
    o["lambda_prime"] = r.lambda_prime;
    o["J"] = r.J;
    o["gamma"] = r.gamma;
    o["t"] = r.t;
    o["observable"] = r.observable;
    o["analytic"] = r.analytic;
    o["numeric"] = r.numeric;
    o["discrepancy"] = r.discrepancy;
    o["flags"] = r.flags;
    arr.push_back(std::move(o));
  }
  return arr.dump(1) + "\n";
}

}  // namespace gkcs
