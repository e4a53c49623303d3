#pragma once

#include "toric/legendre.hpp"
#include "toric/piecewise_linear.hpp"
#include "toric/polytope.hpp"

namespace toric {

// P_hat = {(x,s) : x in P, 0 <= s <= K - f(x)} in R^{n+1}; redundant
// inequalities are pruned so every stored facet supports a true facet.
// Requires K >= max_P f and integral piece slopes after clearing denominators.
Polytope build_hat_polytope(const Polytope& P, const PiecewiseLinearFn& f,
                            const Rational& K);

struct HilbertData {
  std::vector<long long> d;  // |kP cap Z^n|, k = 1..k_max
  std::vector<long long> N;  // |k P_hat cap Z^{n+1}|
  std::vector<long long> w;  // N - d, cross-checked against column sums
};

HilbertData hilbert_data(const Polytope& P, const PiecewiseLinearFn& f,
                         const Rational& K, int k_max);

struct FutakiExpansion {
  Rational F0, F1, F2;   // F(k) = F0 + F1/k + F2/k^2 + O(1/k^3)
  RatVec d_coeffs;       // Ehrhart polynomial of P, ascending powers
  RatVec N_coeffs;       // Ehrhart polynomial of P_hat, ascending powers
  double fit_F0, fit_F1, fit_F2;  // least-squares fit of w_k/(k d_k)
  HilbertData data;
};

FutakiExpansion futaki_expansion(const Polytope& P, const PiecewiseLinearFn& f,
                                 const Rational& K, int k_max);

// Exact interpolation of values p(1..m) by a polynomial of degree m-1;
// ascending coefficients.
RatVec interpolate_polynomial(const std::vector<Rational>& values);

// Weighted log-sum-exp potential h(y) = 1/2 log sum_x w_x e^{2<x,y>}.
class LogSumExpPotential {
 public:
  LogSumExpPotential(std::vector<IntVec> points, std::vector<double> log_weights);
  int dim() const { return dim_; }
  double value(const VecD& y) const;
  VecD gradient(const VecD& y) const;       // = weighted mean of the points
  Eigen::MatrixXd hessian(const VecD& y) const;  // = 2 x covariance
  ComplexPotential as_complex_potential() const;

 private:
  VecD softmax_weights(const VecD& y) const;
  int dim_;
  std::vector<IntVec> points_;
  std::vector<double> log_weights_;
};

// Bergman-type potential of the degeneration at time t:
//   h_{0,t}(y) = 1/2 log sum_{x in P cap Z^n} (c_x(t)/c_*(t)) e^{2<x,y>},
// where c_x(t) sums e^{2tj} over the lattice heights 0..K-f(x) of the column
// over x, and c_* is the largest column sum.
LogSumExpPotential algebraic_ray_potential(const Polytope& P,
                                           const PiecewiseLinearFn& f,
                                           const Rational& K, double t);

struct FsPositivityReport {
  double min_eigenvalue = 0;  // smallest Hessian eigenvalue over the samples
  VecD argmin;                // sample where it is attained
};

// Verifies strict convexity of h_{0,t} at the sample points (the toric shadow
// of positivity of the induced curvature form); throws ConvexityError when a
// non-positive Hessian is found, reporting the location.
FsPositivityReport check_fs_positivity(const Polytope& P,
                                       const PiecewiseLinearFn& f,
                                       const Rational& K, double t,
                                       const std::vector<VecD>& samples);

}  // namespace toric
