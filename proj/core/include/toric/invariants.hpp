#pragma once

#include "toric/geodesic.hpp"
#include "toric/quadrature.hpp"

namespace toric {

// Scalar curvature R = -sum_{i,j} d^2 H^{ij}/dx_i dx_j of the toric metric of
// u, by second differences of the inverse Hessian.
double abreu_scalar_curvature(const SymplecticPotential& u, const VecD& x,
                              double step_scale = 1e-3);

// R-bar = 2 Vol_sigma(dP)/Vol(P), exact.
Rational mean_scalar_curvature(const Polytope& P);

// L(g) = int_dP g dsigma - (Vol_sigma(dP)/Vol(P)) int_P g dmu.
Rational boundary_functional(const Polytope& P, const PiecewiseLinearFn& g);
double boundary_functional(const Polytope& P, const ScalarField& g,
                           int cells = 256);

enum class KEnergyMode { symplectic, complex };

// dE/dt of the K-energy along the ray at time t.
//  symplectic: L(f) - int_P tr(H_t D^2 f) dmu, with crease atoms of D^2 f
//              assigned zero weight (PL f gives exactly L(f));
//  complex:    pushforward of the same integral to y-coordinates via x=h'(y):
//              boundary term of f(h'(y)) minus (Rbar/2) int f(h') h'' dy
//              minus int f''(h') h''^2 dy, with f''-atoms collapsing on the
//              flat segments of h.
double kenergy_derivative(const GeodesicRay& ray, double t, KEnergyMode mode,
                          int grid = 4000, double window = 14.0);

// Same derivative for a smooth direction f (with derivatives) added to a base
// potential: u_t = base + t * f.
double kenergy_derivative_smooth(const SymplecticPotential& u_t,
                                 const SmoothFn1D& f, KEnergyMode mode,
                                 int grid = 4000, double window = 14.0);

struct YenEstimate {
  std::vector<std::pair<double, double>> series;  // (t, dE/dt)
  double limit = 0;
  Rational closed_form;  // L(f) for PL rays
  bool converged = false;
};

YenEstimate yen_invariant(const GeodesicRay& ray, int t_max);

struct ComparisonReport {
  Rational F1;
  Rational yen_closed;
  double yen_numeric;
  Rational volume;
  double identity_residual;  // |F1 + yen/(2 Vol)| in doubles
  bool pass = false;         // exact rational identity F1 = -yen/(2 Vol)
};

// Theorem check: the subleading Futaki coefficient against the geometric
// invariant, F1 = -yen/(2 Vol(P)), both sides exact.
ComparisonReport compare_futaki_yen(const Polytope& P,
                                    const PiecewiseLinearFn& f,
                                    const Rational& K,
                                    bool flip_weight_sign = false);

}  // namespace toric
