#include <doctest.h>

#include <cmath>
#include <random>

#include "toric/rh.hpp"

using namespace toric;

namespace {

Eigen::MatrixXcd random_complex(int n, std::mt19937& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = std::complex<double>(d(rng), d(rng));
  return M;
}

// A(theta) = 2I + B e^{i theta} + B* e^{-i theta}, positive for small B;
// S(theta) = S0 + C e^{i theta} + C^T e^{-i theta}... collapsed to symmetric
// per-mode coefficients so that S(theta) is symmetric for every theta.
RHProblem random_admissible(int n, std::mt19937& rng) {
  RHProblem prob;
  prob.n = n;
  Eigen::MatrixXcd B = random_complex(n, rng, 0.15);
  prob.A_modes = {{0, 2.0 * Eigen::MatrixXcd::Identity(n, n)},
                  {1, B},
                  {-1, B.adjoint()}};
  Eigen::MatrixXcd S0 = random_complex(n, rng, 0.3);
  Eigen::MatrixXcd S1 = random_complex(n, rng, 0.3);
  S0 = ((S0 + S0.transpose()) / 2).eval();
  S1 = ((S1 + S1.transpose()) / 2).eval();
  prob.S_modes = {{0, S0}, {1, S1}};
  return prob;
}

RHKernelElement constant_element(std::complex<double> a,
                                 std::complex<double> b) {
  RHKernelElement e;
  e.u_coeffs = Eigen::MatrixXcd::Constant(1, 1, a);
  e.v_coeffs = Eigen::MatrixXcd::Constant(1, 1, b);
  return e;
}

}  // namespace

TEST_CASE("trivial problem: S = 0, A = I") {
  RHProblem prob;
  prob.n = 1;
  prob.A_modes = {{0, Eigen::MatrixXcd::Identity(1, 1)}};
  RHSolution sol = rh_solve(prob, 6);
  CHECK(sol.kernel_dim == 2);
  CHECK(sol.cokernel_dim == 0);
  CHECK(sol.index == 2);
  REQUIRE(sol.kernel.size() == 2);
  // Solutions are constant: u = a0, v = conj(a0), and higher Taylor
  // coefficients vanish.
  for (const auto& e : sol.kernel) {
    for (int m = 1; m < e.u_coeffs.cols(); ++m) {
      CHECK(std::abs(e.u_coeffs(0, m)) < 1e-8);
      CHECK(std::abs(e.v_coeffs(0, m)) < 1e-8);
    }
    CHECK(std::abs(e.v_coeffs(0, 0) - std::conj(e.u_coeffs(0, 0))) < 1e-8);
  }
}

TEST_CASE("index equals 2n for random admissible data") {
  std::mt19937 rng(23);
  for (int n : {1, 2})
    for (int trial = 0; trial < 5; ++trial) {
      RHProblem prob = random_admissible(n, rng);
      RHSolution sol = rh_solve(prob, 8);
      CHECK(sol.index == 2 * n);
    }
}

TEST_CASE("scalar A = (2 + cos theta) I keeps a two-dimensional kernel") {
  RHProblem prob;
  prob.n = 1;
  prob.A_modes = {{0, 2.0 * Eigen::MatrixXcd::Identity(1, 1)},
                  {1, 0.5 * Eigen::MatrixXcd::Identity(1, 1)},
                  {-1, 0.5 * Eigen::MatrixXcd::Identity(1, 1)}};
  RHSolution sol = rh_solve(prob, 8);
  CHECK(sol.kernel_dim == 2);
  CHECK(sol.index == 2);
}

TEST_CASE("kernel dimension is stable under refining the truncation") {
  std::mt19937 rng(29);
  RHProblem prob = random_admissible(2, rng);
  RHSolution s1 = rh_solve(prob, 8);
  RHSolution s2 = rh_solve(prob, 16);
  CHECK(s1.kernel_dim == s2.kernel_dim);
  CHECK(s1.index == s2.index);
}

TEST_CASE("unitary covariance of the kernel") {
  std::mt19937 rng(31);
  RHProblem prob = random_admissible(2, rng);
  // Q unitary; the transported data S' = Q S Q^T, A' = Q A Q^dagger describe
  // the same problem in the rotated frame u' = conj(Q) u... i.e. u = Q^T u'.
  Eigen::MatrixXcd M = random_complex(2, rng, 1.0);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(M);
  Eigen::MatrixXcd Q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(2, 2);
  RHProblem conj_prob;
  conj_prob.n = 2;
  for (const auto& [k, Sk] : prob.S_modes)
    conj_prob.S_modes.push_back({k, Q * Sk * Q.transpose()});
  for (const auto& [k, Ak] : prob.A_modes)
    conj_prob.A_modes.push_back({k, Q * Ak * Q.adjoint()});
  RHSolution a = rh_solve(prob, 8);
  RHSolution b = rh_solve(conj_prob, 8);
  CHECK(a.kernel_dim == b.kernel_dim);
  CHECK(a.index == b.index);
}

TEST_CASE("indefinite A is rejected") {
  RHProblem prob;
  prob.n = 1;
  prob.A_modes = {{1, 0.5 * Eigen::MatrixXcd::Identity(1, 1)},
                  {-1, 0.5 * Eigen::MatrixXcd::Identity(1, 1)}};  // cos(theta)
  CHECK_THROWS_AS(rh_solve(prob, 6), PreconditionError);

  RHProblem prob2;
  prob2.n = 2;
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = -1.0;
  prob2.A_modes = {{0, D}};
  CHECK_THROWS_AS(rh_solve(prob2, 6), PreconditionError);
}

TEST_CASE("non-symmetric S is rejected") {
  RHProblem prob;
  prob.n = 2;
  prob.A_modes = {{0, Eigen::MatrixXcd::Identity(2, 2)}};
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(2, 2);
  S(0, 1) = 1.0;
  prob.S_modes = {{0, S}};
  CHECK_THROWS_AS(rh_solve(prob, 6), PreconditionError);
}

TEST_CASE("truncation must resolve the data") {
  std::mt19937 rng(37);
  RHProblem prob = random_admissible(1, rng);
  CHECK_THROWS_AS(rh_solve(prob, 2), PreconditionError);
}

TEST_CASE("pairing on the trivial kernel") {
  RHProblem prob;
  prob.n = 1;
  prob.A_modes = {{0, Eigen::MatrixXcd::Identity(1, 1)}};
  RHSolution sol = rh_solve(prob, 6);
  PairingReport rep = pairing_invariance(sol.kernel);
  CHECK(rep.max_imaginary < 1e-10);
  CHECK(rep.max_variation < 1e-10);
}

TEST_CASE("pairing on a random admissible kernel") {
  std::mt19937 rng(41);
  RHProblem prob = random_admissible(2, rng);
  RHSolution sol = rh_solve(prob, 10);
  REQUIRE(sol.kernel_dim >= 2);
  PairingReport rep = pairing_invariance(sol.kernel);
  CHECK(rep.max_imaginary < 1e-7);
  CHECK(rep.max_variation < 1e-7);
}

TEST_CASE("pairing algebra on hand-built elements") {
  RHKernelElement s1 = constant_element(1.0, 1.0);
  RHKernelElement s2 = constant_element({0.0, 1.0}, {0.0, -1.0});
  // iOmega(s1, s2) = i[(1)(-i) - (i)(1)] = 2.
  CHECK(i_omega(s1, s2, 0.3).real() == doctest::Approx(2.0));
  CHECK(std::abs(i_omega(s1, s2, 0.3).imag()) < 1e-14);
  // Antisymmetry and vanishing on the diagonal.
  CHECK(std::abs(i_omega(s1, s2, 1.0) + i_omega(s2, s1, 1.0)) < 1e-14);
  CHECK(std::abs(i_omega(s1, s1, 1.0)) < 1e-14);
}
