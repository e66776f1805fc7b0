#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "gkcs/emit.hpp"

using namespace gkcs;

TEST_CASE("empty row set emits a header-only CSV") {
  const std::string csv = to_csv({});
  REQUIRE(csv == std::string(kCsvHeader) + "\n");
}

TEST_CASE("one row emits exactly two lines, newline-terminated") {
  Row r;
  r.command = "observables";
  r.beta = 1.0;
  r.observable = "x";
  r.analytic = 1.5;
  r.numeric = 1.5;
  const std::string csv = to_csv({r});
  REQUIRE(csv.back() == '\n');
  std::size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  REQUIRE(lines == 2);
}

TEST_CASE("identical rows produce byte-identical payloads") {
  Row r;
  r.command = "verify";
  r.beta = 0.1;
  r.lambda = 1.0 / 3.0;
  r.observable = "var_x";
  r.analytic = 0.1 + 0.2;  // deliberately non-representable sum
  r.numeric = 0.3;
  const std::vector<Row> rows{r, r};
  REQUIRE(to_csv(rows) == to_csv(rows));
  REQUIRE(to_json(rows) == to_json(rows));
}

TEST_CASE("17 significant digits round-trip through parsing") {
  for (double v : {0.1, 1.0 / 3.0, 1.4142135623730951, 1e-300, -2.5e17, 0.0}) {
    const std::string s = format_g17(v);
    REQUIRE(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("json carries the same fields in the same order") {
  Row r;
  r.command = "mandel";
  r.beta = 1.0;
  r.lambda = 0.05;
  r.lambda_prime = 0.05;
  r.J = 0.5;
  r.observable = "mandel_Q";
  r.analytic = -0.01875;
  r.numeric = 0.0141;
  r.discrepancy = 0.03285;
  r.flags = "secular_window";
  const std::string json = to_json({r});
  REQUIRE(json.find("\"command\"") < json.find("\"beta\""));
  REQUIRE(json.find("\"beta\"") < json.find("\"observable\""));
  REQUIRE(json.find("\"observable\"") < json.find("\"flags\""));
  REQUIRE(json.find("mandel_Q") != std::string::npos);
  REQUIRE(json.find("secular_window") != std::string::npos);
  REQUIRE(json.back() == '\n');
}

TEST_CASE("csv columns follow the fixed schema order") {
  Row r;
  r.command = "spectrum";
  r.beta = 2.0;
  r.lambda = -0.25;  // exactly representable, so %.17g prints it short
  r.lambda_prime = -0.125;
  r.J = 3.0;
  r.observable = "E[3]";
  r.analytic = 6.75;
  r.numeric = 6.75;
  const std::string csv = to_csv({r});
  const std::string line = csv.substr(csv.find('\n') + 1);
  REQUIRE(line == "spectrum,2,-0.25,-0.125,3,0,0,E[3],6.75,6.75,0,\n");
}
