#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "toric/piecewise_linear.hpp"
#include "toric/polytope.hpp"

namespace toric {

using VecD = std::vector<double>;

// Smooth building block of a symplectic potential.
class SmoothComponent {
 public:
  virtual ~SmoothComponent() = default;
  virtual double value(const VecD& x) const = 0;
  virtual VecD gradient(const VecD& x) const = 0;
  virtual Eigen::MatrixXd hessian(const VecD& x) const = 0;
  // True when the gradient escapes to +-infinity at the boundary of P
  // (Guillemin-type boundary behavior).
  virtual bool boundary_blowup() const { return false; }
};

class GuilleminComponent : public SmoothComponent {
 public:
  explicit GuilleminComponent(std::shared_ptr<const Polytope> P);
  double value(const VecD& x) const override;
  VecD gradient(const VecD& x) const override;
  Eigen::MatrixXd hessian(const VecD& x) const override;
  bool boundary_blowup() const override { return true; }

 private:
  std::shared_ptr<const Polytope> P_;
};

class CallbackComponent : public SmoothComponent {
 public:
  CallbackComponent(std::function<double(const VecD&)> value,
                    std::function<VecD(const VecD&)> gradient,
                    std::function<Eigen::MatrixXd(const VecD&)> hessian,
                    bool blowup = false)
      : value_(std::move(value)),
        gradient_(std::move(gradient)),
        hessian_(std::move(hessian)),
        blowup_(blowup) {}
  double value(const VecD& x) const override { return value_(x); }
  VecD gradient(const VecD& x) const override { return gradient_(x); }
  Eigen::MatrixXd hessian(const VecD& x) const override { return hessian_(x); }
  bool boundary_blowup() const override { return blowup_; }

 private:
  std::function<double(const VecD&)> value_;
  std::function<VecD(const VecD&)> gradient_;
  std::function<Eigen::MatrixXd(const VecD&)> hessian_;
  bool blowup_;
};

// Smooth convex function of one real variable with two derivatives, used
// both for closed-form complex potentials and for their symplectic duals.
struct SmoothFn1D {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

// u(x) = sup_y (x y - h(y)) for a strictly convex smooth h on R.
// The gradient blows up at the endpoints of the gradient range of h.
class DualComponent1D : public SmoothComponent {
 public:
  explicit DualComponent1D(SmoothFn1D h) : h_(std::move(h)) {}
  double value(const VecD& x) const override;
  VecD gradient(const VecD& x) const override;
  Eigen::MatrixXd hessian(const VecD& x) const override;
  bool boundary_blowup() const override { return true; }

  double solve_y(double x) const;  // h'(y) = x

 private:
  SmoothFn1D h_;
};

// Natural cubic spline through uniformly spaced samples on [a,b]; C^2.
class Spline1DComponent : public SmoothComponent {
 public:
  Spline1DComponent(double a, double b, std::vector<double> samples);
  double value(const VecD& x) const override;
  VecD gradient(const VecD& x) const override;
  Eigen::MatrixXd hessian(const VecD& x) const override;

 private:
  double a_, h_;
  std::vector<double> y_, m_;  // values and second derivatives at knots
  void locate(double x, int& i, double& t) const;
};

// Convex potential u = sum w_i * smooth_i + sum c_j * f_j on P, with the PL
// ray terms kept separate so crease bookkeeping stays exact.
class SymplecticPotential {
 public:
  SymplecticPotential(std::shared_ptr<const Polytope> P,
                      std::vector<std::pair<double, std::shared_ptr<const SmoothComponent>>>
                          smooth,
                      std::vector<std::pair<double, std::shared_ptr<const PiecewiseLinearFn>>>
                          rays = {});

  const Polytope& polytope() const { return *P_; }
  std::shared_ptr<const Polytope> polytope_ptr() const { return P_; }

  double value(const VecD& x) const;
  VecD gradient(const VecD& x) const;           // one-sided on creases
  Eigen::MatrixXd hessian(const VecD& x) const;  // smooth part only on creases

  double smooth_value(const VecD& x) const;
  double smooth_deriv1d(double x) const;  // dim 1 helper
  double smooth_second1d(double x) const;
  bool boundary_blowup() const;

  const std::vector<std::pair<double, std::shared_ptr<const PiecewiseLinearFn>>>&
  rays() const {
    return rays_;
  }

  // Crease locations of the combined ray part inside (a,b) with the jump of
  // the ray slope (dim 1).
  struct Crease {
    double x;
    double ray_slope_left;
    double ray_slope_right;
  };
  std::vector<Crease> creases_1d() const;

  SymplecticPotential plus_smooth(std::shared_ptr<const SmoothComponent> c,
                                  double w = 1.0) const;
  SymplecticPotential plus_ray(std::shared_ptr<const PiecewiseLinearFn> f,
                               double t) const;

  // Throws ConvexityError when the smooth Hessian fails positive
  // definiteness at any sample node.
  void check_convex(int cells_per_axis = 33) const;

 private:
  friend SymplecticPotential interpolate(const SymplecticPotential&,
                                         const SymplecticPotential&, double);
  std::shared_ptr<const Polytope> P_;
  std::vector<std::pair<double, std::shared_ptr<const SmoothComponent>>> smooth_;
  std::vector<std::pair<double, std::shared_ptr<const PiecewiseLinearFn>>> rays_;
};

SymplecticPotential guillemin_potential(std::shared_ptr<const Polytope> P);

// Linear interpolation (1-s) a + s b; the geodesic segment between toric
// potentials in polytope representation.
SymplecticPotential interpolate(const SymplecticPotential& a,
                                const SymplecticPotential& b, double s);

// (G, H) = (Hess u, (Hess u)^{-1}) at an interior, off-crease point.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> metric_data(
    const SymplecticPotential& u, const VecD& x, double delta = 1e-9);

}  // namespace toric
