#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "toric/rational.hpp"

namespace toric {

// Linearized boundary problem on the disc: holomorphic C^n-valued u, v with
// v = S u + A ubar on the unit circle; S symmetric, A hermitian positive.
struct RHProblem {
  int n = 1;
  // Fourier data: matrix coefficient per integer mode, M(theta) = sum_k
  // M_k e^{i k theta}.  Reality of S/A is not assumed; symmetry/positivity is
  // checked at quadrature angles.
  std::vector<std::pair<int, Eigen::MatrixXcd>> S_modes;
  std::vector<std::pair<int, Eigen::MatrixXcd>> A_modes;

  Eigen::MatrixXcd S_at(double theta) const;
  Eigen::MatrixXcd A_at(double theta) const;
  int max_mode() const;
};

struct RHKernelElement {
  // Taylor coefficients a_m, b_m (columns m = 0..N) of u and v.
  Eigen::MatrixXcd u_coeffs;
  Eigen::MatrixXcd v_coeffs;

  Eigen::VectorXcd u_at(double theta) const;
  Eigen::VectorXcd v_at(double theta) const;
};

struct RHSolution {
  int truncation = 0;
  int kernel_dim = 0;
  int cokernel_dim = 0;
  int index = 0;  // kernel_dim - cokernel_dim
  std::vector<RHKernelElement> kernel;
};

// Collocates the boundary relation at 2N+1 equispaced angles for Fourier
// polynomials of degree N and returns the real SVD null space (threshold
// 1e-9 x largest singular value).
RHSolution rh_solve(const RHProblem& prob, int truncation,
                    double svd_threshold = 1e-9);

struct PairingReport {
  double max_imaginary = 0;   // |Im iOmega| over pairs and angles
  double max_variation = 0;   // spread of Re iOmega across angles per pair
};

// iOmega(s1,s2) = i (u1^T v2 - u2^T v1) evaluated on kernel pairs.
PairingReport pairing_invariance(const std::vector<RHKernelElement>& kernel,
                                 int angles = 64);

std::complex<double> i_omega(const RHKernelElement& s1, const RHKernelElement& s2,
                             double theta);

}  // namespace toric
