#include "toric/potential.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "toric/quadrature.hpp"

namespace toric {

GuilleminComponent::GuilleminComponent(std::shared_ptr<const Polytope> P)
    : P_(std::move(P)) {}

double GuilleminComponent::value(const VecD& x) const {
  double total = 0;
  for (const auto& f : P_->facets()) {
    double l = dotd(to_doubles(f.normal), x) + to_double(f.offset);
    if (l <= 0) throw DomainError("Guillemin potential evaluated outside the interior");
    total += 0.5 * l * std::log(l);
  }
  return total;
}

VecD GuilleminComponent::gradient(const VecD& x) const {
  VecD g(x.size(), 0.0);
  for (const auto& f : P_->facets()) {
    double l = dotd(to_doubles(f.normal), x) + to_double(f.offset);
    if (l <= 0) throw DomainError("Guillemin potential evaluated outside the interior");
    for (size_t j = 0; j < x.size(); ++j)
      g[j] += 0.5 * double(f.normal[j]) * (std::log(l) + 1);
  }
  return g;
}

Eigen::MatrixXd GuilleminComponent::hessian(const VecD& x) const {
  const int n = int(x.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (const auto& f : P_->facets()) {
    double l = dotd(to_doubles(f.normal), x) + to_double(f.offset);
    if (l <= 0) throw DomainError("Guillemin potential evaluated outside the interior");
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        H(j, k) += 0.5 * double(f.normal[j]) * double(f.normal[k]) / l;
  }
  return H;
}

double DualComponent1D::solve_y(double x) const {
  double L = 1.0;
  while (h_.d1(-L) > x || h_.d1(L) < x) {
    L *= 2;
    if (L > 1e12) throw DomainError("dual solve: x outside the gradient range");
  }
  double lo = -L, hi = L;
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double d = h_.d1(y) - x;
    if (d > 0)
      hi = y;
    else
      lo = y;
    double dd = h_.d2(y);
    double step = (dd > 0) ? d / dd : 0.0;
    double cand = y - step;
    if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
    if (std::abs(cand - y) < 1e-16 * (1 + std::abs(y)) && it > 8) {
      y = cand;
      break;
    }
    y = cand;
  }
  return y;
}

double DualComponent1D::value(const VecD& x) const {
  double y = solve_y(x[0]);
  return x[0] * y - h_.value(y);
}

VecD DualComponent1D::gradient(const VecD& x) const { return {solve_y(x[0])}; }

Eigen::MatrixXd DualComponent1D::hessian(const VecD& x) const {
  Eigen::MatrixXd H(1, 1);
  H(0, 0) = 1.0 / h_.d2(solve_y(x[0]));
  return H;
}

Spline1DComponent::Spline1DComponent(double a, double b,
                                     std::vector<double> samples)
    : a_(a), y_(std::move(samples)) {
  const int N = int(y_.size());
  if (N < 3) throw PreconditionError("spline needs >= 3 samples");
  h_ = (b - a) / (N - 1);
  // Natural cubic spline: tridiagonal solve for knot second derivatives.
  std::vector<double> rhs(N, 0.0), diag(N, 2.0), sub(N, 0.5);
  m_.assign(N, 0.0);
  for (int i = 1; i + 1 < N; ++i)
    rhs[i] = 3.0 * (y_[i + 1] - 2 * y_[i] + y_[i - 1]) / (h_ * h_);
  // Thomas algorithm on interior rows (m_0 = m_{N-1} = 0).
  std::vector<double> c(N, 0.0), d(N, 0.0);
  for (int i = 1; i + 1 < N; ++i) {
    double denom = diag[i] - (i > 1 ? sub[i] * c[i - 1] : 0.0);
    c[i] = sub[i] / denom;
    d[i] = (rhs[i] - (i > 1 ? sub[i] * d[i - 1] : 0.0)) / denom;
  }
  for (int i = N - 2; i >= 1; --i) m_[i] = d[i] - c[i] * m_[i + 1];
}

void Spline1DComponent::locate(double x, int& i, double& t) const {
  const int N = int(y_.size());
  double s = (x - a_) / h_;
  i = std::clamp(int(std::floor(s)), 0, N - 2);
  t = x - (a_ + i * h_);
}

double Spline1DComponent::value(const VecD& x) const {
  int i;
  double t;
  locate(x[0], i, t);
  double A = (h_ - t) / h_, B = t / h_;
  return A * y_[i] + B * y_[i + 1] +
         ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h_ * h_ / 6.0;
}

VecD Spline1DComponent::gradient(const VecD& x) const {
  int i;
  double t;
  locate(x[0], i, t);
  double A = (h_ - t) / h_, B = t / h_;
  double d = (y_[i + 1] - y_[i]) / h_ +
             (-(3 * A * A - 1) * m_[i] + (3 * B * B - 1) * m_[i + 1]) * h_ / 6.0;
  return {d};
}

Eigen::MatrixXd Spline1DComponent::hessian(const VecD& x) const {
  int i;
  double t;
  locate(x[0], i, t);
  double A = (h_ - t) / h_, B = t / h_;
  Eigen::MatrixXd H(1, 1);
  H(0, 0) = A * m_[i] + B * m_[i + 1];
  return H;
}

SymplecticPotential::SymplecticPotential(
    std::shared_ptr<const Polytope> P,
    std::vector<std::pair<double, std::shared_ptr<const SmoothComponent>>> smooth,
    std::vector<std::pair<double, std::shared_ptr<const PiecewiseLinearFn>>> rays)
    : P_(std::move(P)), smooth_(std::move(smooth)), rays_(std::move(rays)) {
  if (!P_) throw PreconditionError("potential needs a polytope");
  for (const auto& [t, f] : rays_) {
    if (t < 0) throw PreconditionError("ray coefficient must be >= 0");
    if (f->dim() != P_->dim())
      throw StructuralError("ray dimension does not match the polytope");
  }
}

double SymplecticPotential::smooth_value(const VecD& x) const {
  double total = 0;
  for (const auto& [w, c] : smooth_) total += w * c->value(x);
  return total;
}

double SymplecticPotential::value(const VecD& x) const {
  double total = smooth_value(x);
  for (const auto& [t, f] : rays_) total += t * f->value(x);
  return total;
}

VecD SymplecticPotential::gradient(const VecD& x) const {
  VecD g(x.size(), 0.0);
  for (const auto& [w, c] : smooth_) {
    VecD gc = c->gradient(x);
    for (size_t j = 0; j < g.size(); ++j) g[j] += w * gc[j];
  }
  for (const auto& [t, f] : rays_) {
    VecD gf = f->gradient(x);
    for (size_t j = 0; j < g.size(); ++j) g[j] += t * gf[j];
  }
  return g;
}

Eigen::MatrixXd SymplecticPotential::hessian(const VecD& x) const {
  const int n = int(x.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [w, c] : smooth_) H += w * c->hessian(x);
  return H;
}

double SymplecticPotential::smooth_deriv1d(double x) const {
  if (P_->dim() != 1) throw UnsupportedError("smooth_deriv1d requires dim 1");
  double total = 0;
  VecD xv{x};
  for (const auto& [w, c] : smooth_) total += w * c->gradient(xv)[0];
  return total;
}

double SymplecticPotential::smooth_second1d(double x) const {
  if (P_->dim() != 1) throw UnsupportedError("smooth_second1d requires dim 1");
  double total = 0;
  VecD xv{x};
  for (const auto& [w, c] : smooth_) total += w * c->hessian(xv)(0, 0);
  return total;
}

bool SymplecticPotential::boundary_blowup() const {
  for (const auto& [w, c] : smooth_)
    if (w > 0 && c->boundary_blowup()) return true;
  return false;
}

std::vector<SymplecticPotential::Crease> SymplecticPotential::creases_1d() const {
  if (P_->dim() != 1) throw UnsupportedError("creases_1d requires dim 1");
  Rational a = P_->box_lower()[0], b = P_->box_upper()[0];
  std::map<Rational, std::pair<double, double>> acc;  // x -> slope jump
  for (const auto& [t, f] : rays_) {
    if (t == 0) continue;
    for (const auto& c : f->creases_1d(a, b)) {
      auto it = acc.find(c.x);
      double jl = t * to_double(c.slope_left);
      double jr = t * to_double(c.slope_right);
      if (it == acc.end())
        acc[c.x] = {jl, jr};
      else
        it->second.first += jl, it->second.second += jr;
    }
  }
  // Smooth ray slope away from a crease: add the (constant) active-slope of
  // every other ray at that x so left/right totals are absolute ray slopes.
  std::vector<Crease> out;
  for (const auto& [xc, jump] : acc) {
    double left = 0, right = 0;
    double xd = to_double(xc);
    for (const auto& [t, f] : rays_) {
      bool owns = false;
      for (const auto& c : f->creases_1d(a, b))
        if (c.x == xc) {
          left += t * to_double(c.slope_left);
          right += t * to_double(c.slope_right);
          owns = true;
        }
      if (!owns && t != 0) {
        double s = t * f->gradient({xd})[0];
        left += s;
        right += s;
      }
    }
    if (left != right) out.push_back({xd, left, right});
  }
  return out;
}

SymplecticPotential SymplecticPotential::plus_smooth(
    std::shared_ptr<const SmoothComponent> c, double w) const {
  auto smooth = smooth_;
  smooth.emplace_back(w, std::move(c));
  return SymplecticPotential(P_, std::move(smooth), rays_);
}

SymplecticPotential SymplecticPotential::plus_ray(
    std::shared_ptr<const PiecewiseLinearFn> f, double t) const {
  auto rays = rays_;
  rays.emplace_back(t, std::move(f));
  return SymplecticPotential(P_, smooth_, std::move(rays));
}

void SymplecticPotential::check_convex(int cells_per_axis) const {
  auto rule = midpoint_rule(*P_, cells_per_axis);
  for (const auto& node : rule.nodes) {
    Eigen::MatrixXd H = hessian(node);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.eigenvalues().minCoeff() <= 0)
      throw ConvexityError("smooth Hessian not positive definite at a sample node");
  }
}

SymplecticPotential guillemin_potential(std::shared_ptr<const Polytope> P) {
  auto g = std::make_shared<GuilleminComponent>(P);
  return SymplecticPotential(std::move(P), {{1.0, g}});
}

SymplecticPotential interpolate(const SymplecticPotential& a,
                                const SymplecticPotential& b, double s) {
  if (s < 0 || s > 1) throw PreconditionError("interpolation parameter must lie in [0,1]");
  std::vector<std::pair<double, std::shared_ptr<const SmoothComponent>>> smooth;
  std::vector<std::pair<double, std::shared_ptr<const PiecewiseLinearFn>>> rays;
  // Shared smooth components combine by weight so a segment between two rays
  // from the same base keeps a single copy of the base.
  std::map<const SmoothComponent*, double> sw;
  std::map<const SmoothComponent*, std::shared_ptr<const SmoothComponent>> sp;
  for (const auto& [w, c] : a.smooth_) sw[c.get()] += (1 - s) * w, sp[c.get()] = c;
  for (const auto& [w, c] : b.smooth_) sw[c.get()] += s * w, sp[c.get()] = c;
  for (const auto& [ptr, w] : sw)
    if (w != 0) smooth.emplace_back(w, sp[ptr]);
  std::map<const PiecewiseLinearFn*, double> rw;
  std::map<const PiecewiseLinearFn*, std::shared_ptr<const PiecewiseLinearFn>> rp;
  for (const auto& [t, f] : a.rays_) rw[f.get()] += (1 - s) * t, rp[f.get()] = f;
  for (const auto& [t, f] : b.rays_) rw[f.get()] += s * t, rp[f.get()] = f;
  for (const auto& [ptr, t] : rw)
    if (t != 0) rays.emplace_back(t, rp[ptr]);
  return SymplecticPotential(a.P_, std::move(smooth), std::move(rays));
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> metric_data(
    const SymplecticPotential& u, const VecD& x, double) {
  if (!u.polytope().contains(x))
    throw DomainError("metric data requested outside the polytope interior");
  for (const auto& [t, f] : u.rays())
    if (t > 0 && f->min_crease_distance(x, u.polytope()) < 1e-12)
      throw DomainError("metric data requested on a crease");
  Eigen::MatrixXd G = u.hessian(x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  if (es.eigenvalues().minCoeff() <= 0)
    throw ConvexityError("Hessian not positive definite at requested point");
  Eigen::MatrixXd H = G.inverse();
  return {G, H};
}

}  // namespace toric
