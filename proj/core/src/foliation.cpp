#include "toric/foliation.hpp"

#include <algorithm>
#include <cmath>

namespace toric {

FoliationField::FoliationField(std::function<double(double, double)> Phi,
                               double fd_step,
                               std::function<double(double, double)> crease_distance)
    : Phi_(std::move(Phi)), crease_distance_(std::move(crease_distance)), h_(fd_step) {
  if (!(h_ > 0)) throw PreconditionError("finite-difference step must be positive");
}

FoliationField::Derivs FoliationField::second_derivs(double t, double y) const {
  const double h = h_;
  double c = Phi_(t, y);
  Derivs d;
  d.tt = (Phi_(t + h, y) - 2 * c + Phi_(t - h, y)) / (h * h);
  d.yy = (Phi_(t, y + h) - 2 * c + Phi_(t, y - h)) / (h * h);
  d.ty = (Phi_(t + h, y + h) - Phi_(t + h, y - h) - Phi_(t - h, y + h) +
          Phi_(t - h, y - h)) /
         (4 * h * h);
  return d;
}

bool FoliationField::near_crease(double t, double y, double margin) const {
  return crease_distance_ && crease_distance_(t, y) < margin;
}

double FoliationField::g(double t, double y) const {
  Derivs d = second_derivs(t, y);
  // Flat segments difference to rounding noise rather than exactly zero.
  if (d.yy <= 1e-6)
    throw DomainError("fiber Hessian not positive at the requested node");
  return d.ty / d.yy;
}

std::complex<double> FoliationField::eta(double t, double s, double y) const {
  std::complex<double> z = std::exp(std::complex<double>(-t, -s));
  return g(t, y) / z;
}

double FoliationField::degeneracy_residual(double t, double y) const {
  Derivs d = second_derivs(t, y);
  // Flat segments difference to rounding noise rather than exactly zero.
  if (d.yy <= 1e-6)
    throw DomainError("fiber Hessian not positive at the requested node");
  double z2 = std::exp(-2 * t);
  return std::abs(d.tt - d.ty * d.ty / d.yy) / (4 * z2);
}

double FoliationField::holomorphy_residual(double t, double y) const {
  // Wide outer step: g itself carries O(eps/h_^2) evaluation noise, so the
  // outer difference must not divide by a comparably small step.
  const double h = 32 * h_;
  double gt = (g(t + h, y) - g(t - h, y)) / (2 * h);
  double gy = (g(t, y + h) - g(t, y - h)) / (2 * h);
  double gv = g(t, y);
  double z2 = std::exp(-2 * t);
  return std::abs(-gt + gv * gy) / (2 * z2);
}

FieldReport field_residuals(const FoliationField& field, double t0, double t1,
                            int nt, double y0, double y1, int ny) {
  FieldReport rep;
  double dt = (t1 - t0) / nt, dy = (y1 - y0) / ny;
  double margin = 3 * std::max(dt, dy);
  for (int i = 1; i < nt; ++i)
    for (int j = 1; j < ny; ++j) {
      double t = t0 + i * dt, y = y0 + j * dy;
      if (field.near_crease(t, y, margin)) {
        ++rep.flagged;
        continue;
      }
      try {
        rep.max_degeneracy =
            std::max(rep.max_degeneracy, field.degeneracy_residual(t, y));
        rep.max_holomorphy =
            std::max(rep.max_holomorphy, field.holomorphy_residual(t, y));
        ++rep.evaluated;
      } catch (const DomainError&) {
        ++rep.flagged;
      }
    }
  return rep;
}

namespace {

double closure_mod_2pi_i(const std::complex<double>& delta) {
  double k = std::round(delta.imag() / (2 * M_PI));
  return std::abs(delta - std::complex<double>(0.0, 2 * M_PI * k));
}

LeafTrace integrate_leaf(
    const std::function<std::complex<double>(double /*s*/,
                                             std::complex<double> /*w*/)>& rhs,
    int turns, int steps_per_turn, double y0) {
  LeafTrace out;
  std::complex<double> w(y0, 0.0);
  double s = 0;
  double ds = 2 * M_PI / steps_per_turn;
  out.s.push_back(s);
  out.w.push_back(w);
  const int total = turns * steps_per_turn;
  for (int i = 0; i < total; ++i) {
    // Classical RK4.
    auto k1 = rhs(s, w);
    auto k2 = rhs(s + ds / 2, w + ds / 2 * k1);
    auto k3 = rhs(s + ds / 2, w + ds / 2 * k2);
    auto k4 = rhs(s + ds, w + ds * k3);
    w += ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s += ds;
    out.s.push_back(s);
    out.w.push_back(w);
  }
  out.completed = true;
  out.closure_error = closure_mod_2pi_i(out.w.back() - out.w.front());
  return out;
}

}  // namespace

LeafTrace trace_leaf(const FoliationField& field, double t, double y0,
                     int turns, int steps_per_turn) {
  auto rhs = [&](double /*s*/, std::complex<double> w) {
    // dw/ds = eta dz/ds = -i z eta = -i g(t, Re w).
    return std::complex<double>(0.0, -1.0) * field.g(t, w.real());
  };
  return integrate_leaf(rhs, turns, steps_per_turn, y0);
}

LeafTrace trace_leaf_custom(
    const std::function<std::complex<double>(std::complex<double>,
                                             std::complex<double>)>& eta,
    double t, double y0, int turns, int steps_per_turn) {
  auto rhs = [&](double s, std::complex<double> w) {
    std::complex<double> z = std::exp(std::complex<double>(-t, -s));
    std::complex<double> dz(0.0, -1.0);
    return eta(z, w) * (dz * z);
  };
  return integrate_leaf(rhs, turns, steps_per_turn, y0);
}

}  // namespace toric
