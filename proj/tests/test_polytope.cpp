#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "toric/polytope.hpp"

using namespace toric;
using namespace toric::testing;

TEST_CASE("construction validates facet data") {
  CHECK_THROWS_AS(Polytope(1, {{{2}, Rational(0)}, {{-1}, Rational(2)}}),
                  StructuralError);  // non-primitive normal
  CHECK_THROWS_AS(Polytope(1, {{{1}, Rational(0)}}), StructuralError);  // unbounded
  // Empty interior: x >= 1 and x <= 0.
  CHECK_THROWS_AS(Polytope(1, {{{1}, Rational(-1)}, {{-1}, Rational(0)}}),
                  StructuralError);
}

TEST_CASE("interval vertices and box") {
  auto P = interval(0, 2);
  REQUIRE(P->vertices().size() == 2);
  CHECK(P->vertices()[0].point[0] == 0);
  CHECK(P->vertices()[1].point[0] == 2);
  CHECK(P->box_lower()[0] == 0);
  CHECK(P->box_upper()[0] == 2);
  CHECK(P->volume() == 2);
  CHECK(P->boundary_measure() == 2);
}

TEST_CASE("unit square is Delzant with the expected measures") {
  auto P = unit_square();
  CHECK(P->vertices().size() == 4);
  CHECK(P->volume() == 1);
  CHECK(P->boundary_measure() == 4);
  CHECK(check_delzant(*P).is_delzant);
}

TEST_CASE("interval is Delzant") {
  CHECK(check_delzant(*interval(0, 2)).is_delzant);
}

TEST_CASE("triangle with a non-unimodular vertex fails the Delzant check") {
  // Normals (1,0), (0,1), (-1,-2) with offsets 0, 0, 2.  The bad vertex is
  // (0,1), where the active normals (1,0) and (-1,-2) have determinant -2.
  Polytope T(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -2}, 2}});
  auto rep = check_delzant(T);
  CHECK_FALSE(rep.is_delzant);
  REQUIRE(rep.failing_vertices.size() == 1);
  CHECK(rep.failing_vertices[0].vertex[0] == 0);
  CHECK(rep.failing_vertices[0].vertex[1] == 1);
  CHECK(abs(rep.failing_vertices[0].det) == 2);
}

TEST_CASE("lattice points of intervals") {
  auto P = interval(0, 2);
  auto pts = lattice_points(*P, 1);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0][0] == 0);
  CHECK(pts[2][0] == 2);
  CHECK(lattice_points(*P, 3).size() == 7);
}

TEST_CASE("lattice points are sorted and dilation-consistent") {
  Polytope T(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 2}});
  for (long long k = 1; k <= 4; ++k) {
    auto pts = lattice_points(T, k);
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    // Dilation consistency: scale the offsets instead of k.
    Polytope Tk(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 2 * Rational(k)}});
    auto pts2 = lattice_points(Tk, 1);
    CHECK(pts == pts2);
  }
}

TEST_CASE("Ehrhart counts of the square are polynomial (k+1)^2") {
  auto P = unit_square();
  for (long long k = 1; k <= 10; ++k)
    CHECK((long long)lattice_points(*P, k).size() == (k + 1) * (k + 1));
}

TEST_CASE("Delzant check is invariant under unimodular maps") {
  auto P = unit_square();
  // Shear U = [[1,1],[0,1]], translation (3,-2).
  Polytope Q = unimodular_image(*P, {{1, 1}, {0, 1}}, {3, -2});
  CHECK(check_delzant(Q).is_delzant);
  CHECK(Q.volume() == P->volume());
  for (long long k = 1; k <= 5; ++k)
    CHECK(lattice_points(Q, k).size() == lattice_points(*P, k).size());

  Polytope T(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -2}, 2}});
  Polytope T2 = unimodular_image(T, {{1, 0}, {1, 1}}, {0, 0});
  CHECK_FALSE(check_delzant(T2).is_delzant);
}

TEST_CASE("containment and facet distance") {
  auto P = interval(0, 2);
  CHECK(P->contains(RatVec{Rational(1)}));
  CHECK_FALSE(P->contains(RatVec{Rational(3)}));
  CHECK(P->facet_distance({0.5}) == doctest::Approx(0.5));
}

TEST_CASE("interior point is interior") {
  Polytope T(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 2}});
  CHECK(T.contains(T.interior_point()));
}
