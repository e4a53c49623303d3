#include "toric/rh.hpp"

#include <algorithm>
#include <cmath>

namespace toric {

namespace {

Eigen::MatrixXcd eval_modes(
    const std::vector<std::pair<int, Eigen::MatrixXcd>>& modes, int n,
    double theta) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [k, coeff] : modes) {
    if (coeff.rows() != n || coeff.cols() != n)
      throw StructuralError("Fourier coefficient has wrong shape");
    M += coeff * std::exp(std::complex<double>(0.0, k * theta));
  }
  return M;
}

}  // namespace

Eigen::MatrixXcd RHProblem::S_at(double theta) const {
  return eval_modes(S_modes, n, theta);
}

Eigen::MatrixXcd RHProblem::A_at(double theta) const {
  return eval_modes(A_modes, n, theta);
}

int RHProblem::max_mode() const {
  int m = 0;
  for (const auto& [k, c] : S_modes) m = std::max(m, std::abs(k));
  for (const auto& [k, c] : A_modes) m = std::max(m, std::abs(k));
  return m;
}

Eigen::VectorXcd RHKernelElement::u_at(double theta) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(u_coeffs.rows());
  for (int m = 0; m < u_coeffs.cols(); ++m)
    out += u_coeffs.col(m) * std::exp(std::complex<double>(0.0, m * theta));
  return out;
}

Eigen::VectorXcd RHKernelElement::v_at(double theta) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v_coeffs.rows());
  for (int m = 0; m < v_coeffs.cols(); ++m)
    out += v_coeffs.col(m) * std::exp(std::complex<double>(0.0, m * theta));
  return out;
}

RHSolution rh_solve(const RHProblem& prob, int truncation, double svd_threshold) {
  const int n = prob.n;
  const int N = truncation;
  if (n < 1) throw PreconditionError("dimension must be >= 1");
  if (N < 4 * prob.max_mode() || N < 1)
    throw PreconditionError("truncation must be >= 4x the max Fourier mode");
  const int angles = 2 * N + 1;
  // Real unknowns: Re/Im of a_m and b_m, m = 0..N, each in C^n.
  const int block = n * (N + 1);       // complex coefficients per function
  const int cols = 4 * block;          // real unknowns
  const int rows = 2 * n * angles;     // real equations
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows, cols);
  // Layout: [Re a | Im a | Re b | Im b], coefficient m of component c at
  // column offset m*n + c within each quarter.
  for (int j = 0; j < angles; ++j) {
    double theta = 2 * M_PI * j / angles;
    Eigen::MatrixXcd S = prob.S_at(theta);
    Eigen::MatrixXcd A = prob.A_at(theta);
    if ((S - S.transpose()).norm() > 1e-9 * (1 + S.norm()))
      throw PreconditionError("S not symmetric at a quadrature angle");
    if ((A - A.adjoint()).norm() > 1e-9 * (1 + A.norm()))
      throw PreconditionError("A not hermitian at a quadrature angle");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    if (es.eigenvalues().minCoeff() <= 0)
      throw PreconditionError("A not positive definite at a quadrature angle");
    for (int m = 0; m <= N; ++m) {
      std::complex<double> zm = std::exp(std::complex<double>(0.0, m * theta));
      std::complex<double> zmc = std::conj(zm);
      for (int c = 0; c < n; ++c) {
        int col_re_a = 0 * block + m * n + c;
        int col_im_a = 1 * block + m * n + c;
        int col_re_b = 2 * block + m * n + c;
        int col_im_b = 3 * block + m * n + c;
        for (int r = 0; r < n; ++r) {
          int row_re = 2 * n * j + 2 * r;
          int row_im = row_re + 1;
          // Equation row r: b(theta)_r - (S u)_r - (A ubar)_r = 0.
          if (r == c) {
            std::complex<double> coef_re_b = zm;        // d/d Re b_m
            std::complex<double> coef_im_b = zm * std::complex<double>(0, 1);
            M(row_re, col_re_b) += coef_re_b.real();
            M(row_im, col_re_b) += coef_re_b.imag();
            M(row_re, col_im_b) += coef_im_b.real();
            M(row_im, col_im_b) += coef_im_b.imag();
          }
          std::complex<double> coef_re_a =
              -S(r, c) * zm - A(r, c) * zmc;  // d/d Re a_m,c
          std::complex<double> coef_im_a =
              -S(r, c) * zm * std::complex<double>(0, 1) +
              A(r, c) * zmc * std::complex<double>(0, 1);
          M(row_re, col_re_a) += coef_re_a.real();
          M(row_im, col_re_a) += coef_re_a.imag();
          M(row_re, col_im_a) += coef_im_a.real();
          M(row_im, col_im_a) += coef_im_a.imag();
        }
      }
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = svd_threshold * (sv.size() ? sv(0) : 1.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  RHSolution sol;
  sol.truncation = N;
  sol.kernel_dim = cols - rank;
  sol.cokernel_dim = rows - rank;
  sol.index = sol.kernel_dim - sol.cokernel_dim;
  const Eigen::MatrixXd& V = svd.matrixV();
  for (int k = rank; k < cols; ++k) {
    Eigen::VectorXd x = V.col(k);
    RHKernelElement el;
    el.u_coeffs = Eigen::MatrixXcd::Zero(n, N + 1);
    el.v_coeffs = Eigen::MatrixXcd::Zero(n, N + 1);
    for (int m = 0; m <= N; ++m)
      for (int c = 0; c < n; ++c) {
        el.u_coeffs(c, m) = std::complex<double>(x(0 * block + m * n + c),
                                                 x(1 * block + m * n + c));
        el.v_coeffs(c, m) = std::complex<double>(x(2 * block + m * n + c),
                                                 x(3 * block + m * n + c));
      }
    sol.kernel.push_back(std::move(el));
  }
  return sol;
}

std::complex<double> i_omega(const RHKernelElement& s1, const RHKernelElement& s2,
                             double theta) {
  Eigen::VectorXcd u1 = s1.u_at(theta), v1 = s1.v_at(theta);
  Eigen::VectorXcd u2 = s2.u_at(theta), v2 = s2.v_at(theta);
  std::complex<double> omega =
      (u1.transpose() * v2)(0, 0) - (u2.transpose() * v1)(0, 0);
  return std::complex<double>(0.0, 1.0) * omega;
}

PairingReport pairing_invariance(const std::vector<RHKernelElement>& kernel,
                                 int angles) {
  PairingReport rep;
  for (size_t i = 0; i < kernel.size(); ++i)
    for (size_t j = i; j < kernel.size(); ++j) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (int k = 0; k < angles; ++k) {
        double theta = 2 * M_PI * k / angles;
        std::complex<double> p = i_omega(kernel[i], kernel[j], theta);
        rep.max_imaginary = std::max(rep.max_imaginary, std::abs(p.imag()));
        lo = std::min(lo, p.real());
        hi = std::max(hi, p.real());
      }
      rep.max_variation = std::max(rep.max_variation, hi - lo);
    }
  return rep;
}

}  // namespace toric
