#include "toric/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace toric {

namespace {

Eigen::MatrixXd inverse_hessian(const SymplecticPotential& u, const VecD& x) {
  Eigen::MatrixXd G = u.hessian(x);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  if (!lu.isInvertible())
    throw ConsistencyError("singular Hessian while computing curvature");
  return lu.inverse();
}

double crease_clearance(const SymplecticPotential& u, const VecD& x) {
  double d = u.polytope().facet_distance(x);
  for (const auto& [t, f] : u.rays())
    if (t > 0) d = std::min(d, f->min_crease_distance(x, u.polytope()));
  return d;
}

}  // namespace

double abreu_scalar_curvature(const SymplecticPotential& u, const VecD& x,
                              double step_scale) {
  const int n = int(x.size());
  double clear = crease_clearance(u, x);
  if (clear <= 0) throw DomainError("curvature requested on the boundary or a crease");
  double delta = step_scale * clear;
  auto H = [&](VecD p) { return inverse_hessian(u, p); };
  double R = 0;
  for (int i = 0; i < n; ++i) {
    // d^2 H^{ii} / dx_i^2
    VecD xp = x, xm = x;
    xp[i] += delta;
    xm[i] -= delta;
    R -= (H(xp)(i, i) - 2 * H(x)(i, i) + H(xm)(i, i)) / (delta * delta);
    for (int j = i + 1; j < n; ++j) {
      VecD xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += delta, xpp[j] += delta;
      xpm[i] += delta, xpm[j] -= delta;
      xmp[i] -= delta, xmp[j] += delta;
      xmm[i] -= delta, xmm[j] -= delta;
      double mixed = (H(xpp)(i, j) - H(xpm)(i, j) - H(xmp)(i, j) + H(xmm)(i, j)) /
                     (4 * delta * delta);
      R -= 2 * mixed;  // (i,j) and (j,i) terms
    }
  }
  return R;
}

Rational mean_scalar_curvature(const Polytope& P) {
  auto rep = check_delzant(P);
  if (!rep.is_delzant)
    throw PreconditionError("mean curvature requires a Delzant polytope");
  return Rational(2) * P.boundary_measure() / P.volume();
}

Rational boundary_functional(const Polytope& P, const PiecewiseLinearFn& g) {
  Rational ratio = P.boundary_measure() / P.volume();
  return integrate_pl_boundary(P, g) - ratio * integrate_pl_interior(P, g);
}

double boundary_functional(const Polytope& P, const ScalarField& g, int cells) {
  double ratio = to_double(P.boundary_measure() / P.volume());
  double interior = integrate_interior(P, g, cells).value;
  return integrate_boundary(P, g, cells) - ratio * interior;
}

namespace {

// Complex-mode derivative for dim 1: change variables x = h'(y) in
// L(f) - int H f'' dmu, with dmu = h'' dy and H = h''.
double complex_mode_1d(const ComplexPotential& h, const Polytope& P,
                       const std::function<double(double)>& f,
                       const std::function<double(double)>& f_second,
                       double lo, double hi, int grid) {
  double rbar = to_double(mean_scalar_curvature(P));
  double boundary = f(h.deriv1d(lo)) + f(h.deriv1d(hi));
  double bulk = 0, correction = 0;
  double dy = (hi - lo) / grid;
  for (int i = 0; i < grid; ++i) {
    double y = lo + (i + 0.5) * dy;
    double x = h.deriv1d(y);
    double hpp = h.second1d(y);
    bulk += f(x) * hpp * dy;
    if (f_second) correction += f_second(x) * hpp * hpp * dy;
  }
  return boundary - 0.5 * rbar * bulk - correction;
}

}  // namespace

double kenergy_derivative(const GeodesicRay& ray, double t, KEnergyMode mode,
                          int grid, double window) {
  const Polytope& P = ray.u0.polytope();
  if (mode == KEnergyMode::symplectic) {
    // D^2 f vanishes off creases and crease atoms carry zero weight, so the
    // bulk term drops and the derivative is the boundary functional of f.
    return to_double(boundary_functional(P, *ray.f));
  }
  if (P.dim() != 1)
    throw UnsupportedError("complex-mode derivative implemented for dim 1");
  ComplexPotential h = complex_ray_potential(ray, t);
  auto fval = [&](double x) { return ray.f->value(std::vector<double>{x}); };
  return complex_mode_1d(h, P, fval, nullptr, -window, window + t, grid);
}

double kenergy_derivative_smooth(const SymplecticPotential& u_t,
                                 const SmoothFn1D& f, KEnergyMode mode,
                                 int grid, double window) {
  const Polytope& P = u_t.polytope();
  if (P.dim() != 1)
    throw UnsupportedError("smooth-direction derivative implemented for dim 1");
  if (mode == KEnergyMode::symplectic) {
    ScalarField fv = [&](const std::vector<double>& x) { return f.value(x[0]); };
    double L = boundary_functional(P, fv, grid);
    ScalarField integrand = [&](const std::vector<double>& x) {
      double upp = u_t.smooth_second1d(x[0]);
      return f.d2(x[0]) / upp;
    };
    double bulk = integrate_interior(P, integrand, grid).value;
    return L - bulk;
  }
  ComplexPotential h = legendre_dual(u_t);
  return complex_mode_1d(h, P, f.value, f.d2, -window, window, grid);
}

YenEstimate yen_invariant(const GeodesicRay& ray, int t_max) {
  if (t_max < 1) throw PreconditionError("t_max must be >= 1");
  YenEstimate out;
  out.closed_form = boundary_functional(ray.u0.polytope(), *ray.f);
  for (int t = 1; t <= t_max; ++t)
    out.series.emplace_back(double(t),
                            kenergy_derivative(ray, t, KEnergyMode::symplectic));
  out.limit = out.series.back().second;
  out.converged =
      out.series.size() < 2 ||
      std::abs(out.series.back().second -
               out.series[out.series.size() - 2].second) < 1e-8;
  return out;
}

ComparisonReport compare_futaki_yen(const Polytope& P,
                                    const PiecewiseLinearFn& f,
                                    const Rational& K, bool flip_weight_sign) {
  FutakiExpansion fe = futaki_expansion(P, f, K, 8);
  ComparisonReport rep;
  rep.F1 = flip_weight_sign ? -fe.F1 : fe.F1;
  rep.yen_closed = boundary_functional(P, f);
  rep.volume = P.volume();
  Rational rhs = -rep.yen_closed / (Rational(2) * rep.volume);
  rep.pass = (rep.F1 == rhs);
  rep.identity_residual = std::abs(to_double(rep.F1 - rhs));
  if (P.dim() == 1) {
    auto fp = std::make_shared<PiecewiseLinearFn>(f);
    auto Pp = std::make_shared<Polytope>(P);
    GeodesicRay ray = algebraic_initial_ray(Pp, fp, K);
    rep.yen_numeric = kenergy_derivative(ray, 10.0, KEnergyMode::complex);
  } else {
    rep.yen_numeric = to_double(rep.yen_closed);
  }
  return rep;
}

}  // namespace toric
