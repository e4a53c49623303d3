#pragma once

#include <complex>
#include <functional>

#include "toric/rational.hpp"

namespace toric {

// Kernel field of a torus/S^1-invariant potential Phi(t,y), read through the
// chart z = e^{-(t+is)}, w = y + i theta:
//   eta(z, w) = Phi_ty / (z Phi_yy).
// The invariant part g(t,y) = Phi_ty/Phi_yy determines the leaf dynamics.
class FoliationField {
 public:
  FoliationField(std::function<double(double, double)> Phi, double fd_step = 1e-4,
                 std::function<double(double, double)> crease_distance = nullptr);

  double g(double t, double y) const;  // Phi_ty / Phi_yy
  std::complex<double> eta(double t, double s, double y) const;

  // |Phi_tt - Phi_ty^2/Phi_yy| / (4 |z|^2): the HCMA degeneracy direction test.
  double degeneracy_residual(double t, double y) const;

  // |dg/dt - g dg/dy| / (2 |z|^2): obstruction to holomorphic dependence of
  // the kernel direction on z.
  double holomorphy_residual(double t, double y) const;

  bool near_crease(double t, double y, double margin) const;

 private:
  struct Derivs {
    double tt, yy, ty;
  };
  Derivs second_derivs(double t, double y) const;

  std::function<double(double, double)> Phi_;
  std::function<double(double, double)> crease_distance_;
  double h_;
};

struct FieldReport {
  double max_degeneracy = 0;
  double max_holomorphy = 0;
  int evaluated = 0;
  int flagged = 0;  // nodes excluded (crease or non-positive fiber Hessian)
};

FieldReport field_residuals(const FoliationField& field, double t0, double t1,
                            int nt, double y0, double y1, int ny);

struct LeafTrace {
  std::vector<double> s;          // parameter along the circle
  std::vector<std::complex<double>> w;
  double closure_error = 0;       // distance of w(end)-w(0) to 2 pi i Z
  bool completed = false;
};

// Integrates dw/ds = eta dz/ds around the unit circle direction at fixed |z|
// (z = e^{-(t + i s)}), starting from w0 = y0.  A custom eta can override the
// field's own (negative controls).
LeafTrace trace_leaf(const FoliationField& field, double t, double y0,
                     int turns, int steps_per_turn = 4096);

LeafTrace trace_leaf_custom(
    const std::function<std::complex<double>(std::complex<double>,
                                             std::complex<double>)>& eta,
    double t, double y0, int turns, int steps_per_turn = 4096);

}  // namespace toric
