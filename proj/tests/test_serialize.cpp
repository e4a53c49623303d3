#include <doctest.h>

#include "fixtures.hpp"
#include "toric/serialize.hpp"

using namespace toric;
using namespace toric::testing;

TEST_CASE("rational round trip") {
  for (const Rational& r :
       {Rational(0), Rational(7), Rational(-3, 4), Rational(22, 7)}) {
    CHECK(rational_from_json(rational_to_json(r)) == r);
  }
  CHECK(rational_to_json(Rational(5)).get<std::string>() == "5");
  CHECK(rational_from_json(json("3/6")) == Rational(1, 2));
  CHECK_THROWS_AS(rational_from_json(json("a/b")), StructuralError);
  CHECK_THROWS_AS(rational_from_json(json("1/0")), StructuralError);
}

TEST_CASE("polytope round trip") {
  for (auto P : {interval(0, 2), unit_square()}) {
    json j = polytope_to_json(*P);
    Polytope Q = polytope_from_json(j);
    CHECK(Q.dim() == P->dim());
    CHECK(Q.volume() == P->volume());
    CHECK(Q.vertices().size() == P->vertices().size());
  }
}

TEST_CASE("malformed polytope JSON") {
  CHECK_THROWS_AS(polytope_from_json(json::parse(R"({"dim": 1})")),
                  StructuralError);
  // Mismatched normal length.
  json j = json::parse(
      R"({"dim": 1, "facets": [{"normal": [1, 0], "offset": "0"},
                               {"normal": [-1], "offset": "2"}]})");
  CHECK_THROWS_AS(polytope_from_json(j), StructuralError);
}

TEST_CASE("piecewise linear round trip") {
  auto f = hinge(1);
  json j = pl_to_json(*f);
  PiecewiseLinearFn g = pl_from_json(j);
  for (double x : {0.25, 0.99, 1.5})
    CHECK(g.value(std::vector<double>{x}) == f->value(std::vector<double>{x}));
  CHECK_THROWS_AS(pl_from_json(json::parse(R"({"pieces": []})")),
                  StructuralError);
}

TEST_CASE("experiment config round trip and validation") {
  ExperimentConfig cfg;
  cfg.P = interval(0, 2);
  cfg.f = hinge(1);
  cfg.K = 1;
  cfg.k_max = 5;
  cfg.t_max = 7.5;
  cfg.grid = 300;
  cfg.window = 4.0;
  json j = config_to_json(cfg);
  ExperimentConfig back = config_from_json(j);
  CHECK(back.K == cfg.K);
  CHECK(back.k_max == 5);
  CHECK(back.t_max == 7.5);
  CHECK(back.grid == 300);
  CHECK(back.window == 4.0);
  CHECK(back.P->volume() == 2);
  CHECK(back.f->value(std::vector<double>{1.5}) == doctest::Approx(0.5));

  SUBCASE("dimension mismatch between polytope and direction") {
    json bad = j;
    bad["direction"] = json::parse(
        R"({"pieces": [{"a": ["1", "0"], "c": "0"}]})");
    CHECK_THROWS_AS(config_from_json(bad), StructuralError);
  }
  SUBCASE("non-positive grid") {
    json bad = j;
    bad["grid"] = 0;
    CHECK_THROWS_AS(config_from_json(bad), StructuralError);
  }
  SUBCASE("missing key") {
    json bad = j;
    bad.erase("K");
    CHECK_THROWS_AS(config_from_json(bad), StructuralError);
  }
}

TEST_CASE("boundary problem round trip") {
  RHProblem prob;
  prob.n = 2;
  Eigen::MatrixXcd A0 = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd S0(2, 2);
  S0 << std::complex<double>(0.1, 0.2), std::complex<double>(0.3, 0.0),
      std::complex<double>(0.3, 0.0), std::complex<double>(-0.4, 0.1);
  prob.A_modes = {{0, A0}};
  prob.S_modes = {{0, S0}};
  json j = rh_problem_to_json(prob);
  RHProblem back = rh_problem_from_json(j);
  CHECK(back.n == 2);
  REQUIRE(back.S_modes.size() == 1);
  CHECK((back.S_modes[0].second - S0).norm() < 1e-15);
  CHECK((back.A_modes[0].second - A0).norm() < 1e-15);

  CHECK_THROWS_AS(rh_problem_from_json(json::parse(R"({"n": 0, "S": [], "A": []})")),
                  StructuralError);
}

TEST_CASE("load_json_file reports bad paths and bad syntax") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"), StructuralError);
}
