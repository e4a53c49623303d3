#include <doctest.h>

#include "fixtures.hpp"
#include "toric/piecewise_linear.hpp"

using namespace toric;
using namespace toric::testing;

TEST_CASE("hinge values and gradient") {
  auto f = hinge(1);
  CHECK(f->value(RatVec{Rational(1, 2)}) == 0);
  CHECK(f->value(RatVec{Rational(3, 2)}) == Rational(1, 2));
  CHECK(f->value(std::vector<double>{1.5}) == doctest::Approx(0.5));
  CHECK(f->gradient({0.5})[0] == 0);
  CHECK(f->gradient({1.5})[0] == 1);
}

TEST_CASE("crease detection on an interval") {
  auto f = hinge(1);
  auto creases = f->creases_1d(0, 2);
  REQUIRE(creases.size() == 1);
  CHECK(creases[0].x == 1);
  CHECK(creases[0].slope_left == 0);
  CHECK(creases[0].slope_right == 1);

  // Affine functions have no creases.
  CHECK(affine1d(1, 0)->creases_1d(0, 2).empty());

  // A crease outside the interval is not reported.
  CHECK(hinge(5)->creases_1d(0, 2).empty());
}

TEST_CASE("redundant pieces do not create fake creases") {
  PiecewiseLinearFn f({{{Rational(1)}, Rational(0)},
                       {{Rational(1)}, Rational(-5)},
                       {{Rational(0)}, Rational(-10)}});
  CHECK(f.creases_1d(0, 2).empty());
}

TEST_CASE("max over polytope is attained at a vertex") {
  auto P = interval(0, 2);
  CHECK(hinge(1)->max_over(*P) == 1);
  CHECK(affine1d(-1, Rational(1, 3))->max_over(*P) == Rational(1, 3));
}

TEST_CASE("exact interior integrals, dim 1") {
  auto P = interval(0, 2);
  CHECK(integrate_pl_interior(*P, *hinge(1)) == Rational(1, 2));
  CHECK(integrate_pl_interior(*P, *affine1d(1, 0)) == 2);
  auto P3 = interval(0, 3);
  CHECK(integrate_pl_interior(*P3, *hinge(2)) == Rational(1, 2));
}

TEST_CASE("exact boundary integrals, dim 1") {
  auto P = interval(0, 2);
  CHECK(integrate_pl_boundary(*P, *hinge(1)) == 1);
  CHECK(integrate_pl_boundary(*P, *affine1d(1, 0)) == 2);
}

TEST_CASE("exact integrals over the unit square") {
  auto P = unit_square();
  PiecewiseLinearFn linear({{{Rational(1), Rational(0)}, Rational(0)}});
  CHECK(integrate_pl_interior(*P, linear) == Rational(1, 2));
  // Boundary: edges x=0 (integral 0), x=1 (integral 1), y=0 and y=1
  // (each integral 1/2).
  CHECK(integrate_pl_boundary(*P, linear) == 2);

  PiecewiseLinearFn vee({{{Rational(1), Rational(0)}, Rational(0)},
                         {{Rational(-1), Rational(0)}, Rational(1)}});
  // max(x, 1-x): interior integral = 2 * (1/2 + 1/8) ... direct: 3/4.
  CHECK(integrate_pl_interior(*P, vee) == Rational(3, 4));
}

TEST_CASE("plus_affine and scaled") {
  auto f = hinge(1);
  auto g = f->plus_affine({Rational(2)}, Rational(3));
  CHECK(g.value(RatVec{Rational(0)}) == 3);
  CHECK(g.value(RatVec{Rational(2)}) == 8);
  auto s = f->scaled(Rational(3));
  CHECK(s.value(RatVec{Rational(2)}) == 3);
  CHECK_THROWS_AS(f->scaled(Rational(-1)), PreconditionError);
}

TEST_CASE("min crease distance") {
  auto f = hinge(1);
  auto P = interval(0, 2);
  CHECK(f->min_crease_distance({0.25}, *P) == doctest::Approx(0.75));
  CHECK(f->min_crease_distance({1.0}, *P) == doctest::Approx(0.0));
}
