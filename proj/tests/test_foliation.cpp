#include <doctest.h>

#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "toric/foliation.hpp"
#include "toric/geodesic.hpp"

using namespace toric;
using namespace toric::testing;

namespace {

// Phi(t,y) for the worked ray with one dual potential cached per time slice.
struct RayPhi {
  GeodesicRay ray = algebraic_initial_ray(interval(0, 2), hinge(1), 1);
  std::shared_ptr<std::map<double, ComplexPotential>> cache =
      std::make_shared<std::map<double, ComplexPotential>>();

  std::function<double(double, double)> fn() {
    auto r = ray;
    auto c = cache;
    return [r, c](double t, double y) {
      auto it = c->find(t);
      if (it == c->end()) it = c->emplace(t, complex_ray_potential(r, t)).first;
      return it->second.value({y});
    };
  }
  static std::function<double(double, double)> creases() {
    const double ystar = std::log(2.0) / 4.0;
    return [ystar](double t, double y) {
      return std::min(std::abs(y - ystar), std::abs(y - (ystar + t)));
    };
  }
};

}  // namespace

TEST_CASE("t-independent potentials have a vanishing kernel field") {
  FoliationField field([](double, double y) { return std::cosh(y); });
  for (double t : {0.5, 1.5})
    for (double y : {-1.0, 0.3, 2.0}) {
      CHECK(std::abs(field.g(t, y)) < 1e-7);
      CHECK(std::abs(field.eta(t, 0.7, y)) < 1e-4);
    }
}

TEST_CASE("worked ray: degeneracy and holomorphy residuals off the creases") {
  RayPhi phi;
  // A coarser step than the default keeps the outer g-derivatives clear of
  // the dual-solve evaluation noise.
  FoliationField field(phi.fn(), 1e-3, RayPhi::creases());

  SUBCASE("left branch, kernel direction g = 0") {
    FieldReport rep = field_residuals(field, 1.0, 2.0, 12, -1.2, -0.3, 12);
    CHECK(rep.evaluated > 0);
    CHECK(rep.max_degeneracy < 1e-4);
    CHECK(rep.max_holomorphy < 1e-3);
  }
  SUBCASE("right branch, kernel direction g = -1") {
    FieldReport rep = field_residuals(field, 1.0, 2.0, 12, 2.8, 3.8, 12);
    CHECK(rep.evaluated > 0);
    CHECK(rep.max_degeneracy < 1e-4);
    CHECK(rep.max_holomorphy < 1e-3);
    CHECK(field.g(1.5, 3.2) == doctest::Approx(-1.0).epsilon(1e-6));
  }
  SUBCASE("flat segment is flagged, not evaluated") {
    FieldReport rep = field_residuals(field, 1.5, 1.6, 3, 0.5, 1.0, 8);
    CHECK(rep.evaluated == 0);
    CHECK(rep.flagged > 0);
  }
}

TEST_CASE("a strictly plurisubharmonic bowl is nowhere degenerate") {
  FoliationField field([](double t, double y) { return t * t + y * y; });
  // Phi_tt - Phi_ty^2/Phi_yy = 2, normalized by 4|z|^2 = 4 e^{-2t}.
  CHECK(field.degeneracy_residual(1.0, 0.5) ==
        doctest::Approx(std::exp(2.0) / 2).epsilon(1e-3));
  CHECK(field.degeneracy_residual(1.0, 0.5) > 0.5);
}

TEST_CASE("leaves close up over one and several turns") {
  RayPhi phi;
  FoliationField field(phi.fn(), 1e-4, RayPhi::creases());
  SUBCASE("left branch") {
    LeafTrace tr = trace_leaf(field, 1.5, -1.0, 1);
    CHECK(tr.completed);
    CHECK(tr.closure_error < 1e-6);
  }
  SUBCASE("right branch, three turns") {
    LeafTrace tr = trace_leaf(field, 1.5, 3.0, 3);
    CHECK(tr.completed);
    CHECK(tr.closure_error < 1e-5);
  }
}

TEST_CASE("negative controls") {
  SUBCASE("eta = eps/z has nonzero circulation") {
    auto eta = [](std::complex<double> z, std::complex<double>) {
      return 0.05 / z;
    };
    LeafTrace tr = trace_leaf_custom(eta, 1.0, 0.0, 1);
    CHECK(tr.completed);
    CHECK(tr.closure_error > 0.1);
    CHECK(tr.closure_error == doctest::Approx(2 * M_PI * 0.05).epsilon(1e-6));
  }
  SUBCASE("eta = eps z closes exactly") {
    auto eta = [](std::complex<double> z, std::complex<double>) {
      return 0.05 * z;
    };
    LeafTrace tr = trace_leaf_custom(eta, 1.0, 0.0, 1);
    CHECK(tr.closure_error < 1e-8);
  }
  SUBCASE("anti-holomorphic contamination destroys closure") {
    auto eta = [](std::complex<double>, std::complex<double> w) {
      return std::conj(w);
    };
    LeafTrace tr = trace_leaf_custom(eta, 0.0, 1.0, 1);
    CHECK(tr.closure_error > 0.1);
  }
}
