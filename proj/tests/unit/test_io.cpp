#include <cmath>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "kernel_eig/error.hpp"
#include "kernel_eig/io.hpp"

using namespace kernel_eig;

TEST_CASE("matrix JSON parses and feeds the splitter") {
  const auto m = parse_matrix_json(R"({"matrix": [[0, 1], [1, 2]]})");
  CHECK(m.rows() == 2);
  CHECK(m(1, 0) == 1.0);
  CHECK(build_from_matrix(m).energy(1) == 2.0);
}

TEST_CASE("matrix JSON diagnostics name the location") {
  auto message = [](const std::string& text) {
    try {
      parse_matrix_json(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("{\"matrix\": [[0, 1],\n [1 2]]}").find("line 2") != std::string::npos);
  CHECK(message(R"({"matrix": [[0, 1], [1]]})").find("matrix[1]") != std::string::npos);
  CHECK(message(R"({"matrix": [[0, 1], [1, "x"]]})").find("matrix[1][1]") != std::string::npos);
  CHECK(message(R"({"matrix": [[0, 1], [3, 2]]})").find("symmetric") != std::string::npos);
  CHECK(message(R"({"rows": []})").find("\"matrix\"") != std::string::npos);
  CHECK_THROWS_AS(load_matrix_json("/nonexistent/file.json"), InputError);
}

TEST_CASE("EigenResult JSON carries the documented keys") {
  EigenResult r;
  r.gamma = 0;
  r.E0 = 1.75;
  r.deltaE = -0.25;
  r.E_total = 1.5;
  r.iterations = 3;
  r.residual = 1e-15;
  const auto j = nlohmann::json::parse(to_json(r, {1.0, 40, std::nullopt}));
  for (const char* key : {"gamma", "lambda", "basis", "method", "E0", "deltaE", "E_total",
                          "iterations", "residual"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["method"] == "root");
  CHECK(j["E_total"].get<double>() == 1.5);
  CHECK_FALSE(j.contains("oracle"));

  r.method = SolveMethod::series;
  r.series_order = 12;
  const auto s = nlohmann::json::parse(to_json(r, {std::nullopt, 2, 1.5}));
  CHECK(s["method"] == "series(12)");
  CHECK(s["lambda"].is_null());
  CHECK(s["oracle"].get<double>() == 1.5);
}

TEST_CASE("identity report JSON and number formatting") {
  IdentityReport rep;
  rep.identity = IdentityKind::power_relation;
  rep.n = 3;
  rep.residual = 1e-12;
  rep.tolerance = 1e-9;
  rep.passed = true;
  const auto j = nlohmann::json::parse(to_json(rep));
  CHECK(j["identity"] == "power_relation");
  CHECK(j["n"] == 3);
  CHECK(j["passed"] == true);
  CHECK(format_sci(-9.183673469387756e-3) == "-9.18367346938776e-03");
}
