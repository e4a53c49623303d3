#pragma once

#include <memory>

#include "toric/potential.hpp"

namespace toric {

// Convex function h on R^n (a complex/Kahler potential in log coordinates),
// either in closed form or as the Legendre transform of a SymplecticPotential.
class ComplexPotential {
 public:
  struct Segment {  // maximal linear piece (dim 1): h'(y) = x on [y_lo, y_hi]
    double y_lo;
    double y_hi;
    double x;
  };

  int dim() const;
  double value(const VecD& y) const;
  VecD gradient(const VecD& y) const;  // the moment-map point x(y)
  Eigen::MatrixXd hessian(const VecD& y) const;

  double value1d(double y) const { return value(VecD{y}); }
  double deriv1d(double y) const { return gradient(VecD{y})[0]; }
  double second1d(double y) const;

  std::vector<Segment> segments() const;  // empty when smooth or dim > 1

  static ComplexPotential from_closed_form(SmoothFn1D h);
  static ComplexPotential from_callbacks(
      int dim, std::function<double(const VecD&)> value,
      std::function<VecD(const VecD&)> gradient,
      std::function<Eigen::MatrixXd(const VecD&)> hessian);

  struct Impl;
  explicit ComplexPotential(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

// Legendre transform h(y) = sup_{x in P} (<x,y> - u(x)).  Exact crease/segment
// bookkeeping in dim 1; grid maximization with local refinement in dim 2.
ComplexPotential legendre_dual(const SymplecticPotential& u);

// Biconjugate value u**(x) = sup_y (<x,y> - h(y)) for dim 1.
double biconjugate(const ComplexPotential& h, double x);

// max_x |u**(x) - u(x)| over interior midpoint samples (dim 1).
double legendre_roundtrip_error(const SymplecticPotential& u, int samples = 64);

}  // namespace toric
