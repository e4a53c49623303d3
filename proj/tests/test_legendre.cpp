#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "toric/legendre.hpp"
#include "toric/quadrature.hpp"

using namespace toric;
using namespace toric::testing;

TEST_CASE("quadratic on a large box is self-dual") {
  auto P = interval(-50, 50);
  auto quad = std::make_shared<CallbackComponent>(
      [](const VecD& x) { return 0.5 * x[0] * x[0]; },
      [](const VecD& x) { return VecD{x[0]}; },
      [](const VecD&) {
        Eigen::MatrixXd H(1, 1);
        H(0, 0) = 1.0;
        return H;
      });
  SymplecticPotential u(P, {{1.0, quad}});
  ComplexPotential h = legendre_dual(u);
  for (double y : {-3.0, -0.4, 0.0, 1.7, 5.0}) {
    CHECK(h.value({y}) == doctest::Approx(0.5 * y * y).epsilon(1e-8));
    CHECK(h.deriv1d(y) == doctest::Approx(y).epsilon(1e-8));
  }
}

TEST_CASE("dual of the Guillemin potential on [0,2] is log((1+e^{2y})/2)") {
  auto u = guillemin_potential(interval(0, 2));
  ComplexPotential h = legendre_dual(u);
  for (double y : {-4.0, -1.0, 0.0, 0.3, 2.0, 6.0}) {
    double expect = std::log1p(std::exp(2 * y)) - std::log(2.0);
    if (y > 3) expect = 2 * y + std::log1p(std::exp(-2 * y)) - std::log(2.0);
    CHECK(h.value({y}) == doctest::Approx(expect).epsilon(1e-8));
    double x = 2 * std::exp(2 * y) / (1 + std::exp(2 * y));
    CHECK(h.deriv1d(y) == doctest::Approx(x).epsilon(1e-8));
  }
}

TEST_CASE("conjugate shift: dual of u + a*x is h(y - a)") {
  auto P = interval(0, 2);
  auto u = guillemin_potential(P);
  auto lin = std::make_shared<CallbackComponent>(
      [](const VecD& x) { return 0.7 * x[0]; },
      [](const VecD&) { return VecD{0.7}; },
      [](const VecD&) { return Eigen::MatrixXd::Zero(1, 1).eval(); });
  auto us = u.plus_smooth(lin);
  ComplexPotential h = legendre_dual(u);
  ComplexPotential hs = legendre_dual(us);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-4.0, 4.0);
  for (int i = 0; i < 20; ++i) {
    double y = dist(rng);
    CHECK(hs.value({y}) == doctest::Approx(h.value({y - 0.7})).epsilon(1e-9));
  }
}

TEST_CASE("moment map range and monotone gradient") {
  auto P = interval(0, 2);
  auto u = guillemin_potential(P).plus_ray(hinge(1), 3.0);
  ComplexPotential h = legendre_dual(u);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-8.0, 8.0);
  double prev_x = -1, prev_y = -100;
  std::vector<double> ys;
  for (int i = 0; i < 100; ++i) ys.push_back(dist(rng));
  std::sort(ys.begin(), ys.end());
  for (double y : ys) {
    double x = h.deriv1d(y);
    CHECK(x >= -1e-9);
    CHECK(x <= 2 + 1e-9);
    if (prev_y > -100) CHECK(x >= prev_x - 1e-12);
    prev_x = x, prev_y = y;
  }
}

TEST_CASE("PL crease produces a linear segment with the exact slope") {
  auto P = interval(0, 2);
  double t = 4.0;
  auto u = guillemin_potential(P).plus_ray(hinge(1), t);
  ComplexPotential h = legendre_dual(u);
  auto segs = h.segments();
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].x == doctest::Approx(1.0));
  CHECK(segs[0].y_hi - segs[0].y_lo == doctest::Approx(t));
  double mid = 0.5 * (segs[0].y_lo + segs[0].y_hi);
  CHECK(h.deriv1d(mid) == doctest::Approx(1.0));
  CHECK(h.second1d(mid) == doctest::Approx(0.0));
  // Value is affine with slope 1 across the segment.
  double v1 = h.value({mid});
  double v2 = h.value({mid + 0.25});
  CHECK(v2 - v1 == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("roundtrip errors") {
  auto P = interval(0, 2);
  auto u = guillemin_potential(P);
  CHECK(legendre_roundtrip_error(u) < 1e-8);
  auto ur = u.plus_ray(hinge(1), 5.0);
  CHECK(legendre_roundtrip_error(ur) < 1e-6);
}

TEST_CASE("non-convex potential raises instead of returning numbers") {
  auto P = interval(0, 2);
  auto concave = std::make_shared<CallbackComponent>(
      [](const VecD& x) { return -2 * x[0] * x[0]; },
      [](const VecD& x) { return VecD{-4 * x[0]}; },
      [](const VecD&) {
        Eigen::MatrixXd H(1, 1);
        H(0, 0) = -4.0;
        return H;
      });
  auto u = guillemin_potential(P).plus_smooth(concave);
  CHECK_THROWS_AS(legendre_dual(u), ConvexityError);
}

TEST_CASE("convex ordering flips under duality") {
  auto P = interval(0, 2);
  auto u = guillemin_potential(P);
  auto bump = std::make_shared<CallbackComponent>(
      [](const VecD& x) { return x[0] * x[0]; },
      [](const VecD& x) { return VecD{2 * x[0]}; },
      [](const VecD&) {
        Eigen::MatrixXd H(1, 1);
        H(0, 0) = 2.0;
        return H;
      });
  auto ub = u.plus_smooth(bump);  // ub >= u pointwise on [0,2]
  ComplexPotential h = legendre_dual(u);
  ComplexPotential hb = legendre_dual(ub);
  for (double y : {-2.0, 0.0, 1.0, 3.0}) CHECK(hb.value({y}) <= h.value({y}) + 1e-10);
}

TEST_CASE("Hessian duality at matched points") {
  auto P = interval(0, 2);
  auto u = guillemin_potential(P);
  ComplexPotential h = legendre_dual(u);
  for (double y : {-1.0, 0.0, 0.8}) {
    double x = h.deriv1d(y);
    double Hxx = 1.0 / u.hessian({x})(0, 0);
    CHECK(h.second1d(y) == doctest::Approx(Hxx).epsilon(1e-5));
  }
}

TEST_CASE("dim-2 grid dual of a separable potential") {
  auto P = unit_square();
  auto u = guillemin_potential(P);
  ComplexPotential h = legendre_dual(u);
  // Separable: h(y1,y2) = d(y1) + d(y2) with d the dual of the 1-d factor.
  auto u1 = guillemin_potential(interval(0, 1));
  ComplexPotential h1 = legendre_dual(u1);
  for (double a : {-1.0, 0.5})
    for (double b : {0.0, 1.2}) {
      double expect = h1.value({a}) + h1.value({b});
      CHECK(h.value({a, b}) == doctest::Approx(expect).epsilon(5e-4));
    }
}
