#pragma once

#include "toric/degeneration.hpp"
#include "toric/legendre.hpp"

namespace toric {

// Ray of convex potentials u_t = u0 + t f with PL direction f; h_t denotes
// the Legendre dual of u_t.
struct GeodesicRay {
  SymplecticPotential u0;
  std::shared_ptr<const PiecewiseLinearFn> f;
};

// (1-t) a + t b on a shared polytope; the toric geodesic segment.
SymplecticPotential segment_potential(const SymplecticPotential& a,
                                      const SymplecticPotential& b, double t);

SymplecticPotential ray_potential(const GeodesicRay& ray, double t);

// Legendre dual of u_t; exact crease/segment bookkeeping in dim 1.
ComplexPotential complex_ray_potential(const GeodesicRay& ray, double t);

// Ray whose initial potential is the Legendre dual of the algebraic potential
// h_{0,0} of the configuration (P, f, K); dim 1.
GeodesicRay algebraic_initial_ray(std::shared_ptr<const Polytope> P,
                                  std::shared_ptr<const PiecewiseLinearFn> f,
                                  const Rational& K);

struct GapSeries {
  std::vector<double> t;
  std::vector<double> gap;        // sup_y |h_t - h_{0,t}| over [-w, w+t]
  std::vector<double> increment;  // |gap_i - gap_{i-1}| (first entry 0)
};

GapSeries parallelism_gap(const GeodesicRay& ray, const Rational& K,
                          const std::vector<double>& t_list,
                          double window = 5.0, int samples = 400);

struct ResidualReport {
  double max_residual = 0;
  int evaluated = 0;
  int skipped = 0;
};

// Max over off-crease grid nodes of |Phi_tt Phi_yy - Phi_ty^2| by central
// differences.  Nodes within 3 cells of a crease (as measured by
// crease_distance in the (t,y) plane) or of the grid edge are skipped.
ResidualReport geodesic_residual(
    const std::function<double(double, double)>& Phi, double t0, double t1,
    int nt, double y0, double y1, int ny,
    const std::function<double(double, double)>& crease_distance = nullptr);

struct RayDiagnostics {
  struct Entry {
    double t;
    std::vector<double> seg_lo, seg_hi;      // segment endpoints in y
    std::vector<double> jump_lo, jump_hi;    // one-sided h'' jumps there
    double sup_second = 0;                   // sup |h_t''| off-segment
    double third_sup = 0;                    // sup |h_t'''| off-segment
  };
  std::vector<Entry> entries;
};

RayDiagnostics regularity_diagnostics(const GeodesicRay& ray,
                                      const std::vector<double>& t_list,
                                      double window = 5.0, int samples = 2000);

}  // namespace toric
