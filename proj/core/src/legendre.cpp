#include "toric/legendre.hpp"

#include <algorithm>
#include <cmath>

#include "toric/quadrature.hpp"

namespace toric {

struct ComplexPotential::Impl {
  virtual ~Impl() = default;
  virtual int dim() const = 0;
  virtual double value(const VecD& y) const = 0;
  virtual VecD gradient(const VecD& y) const = 0;
  virtual Eigen::MatrixXd hessian(const VecD& y) const = 0;
  virtual std::vector<Segment> segments() const { return {}; }
};

namespace {

class ClosedForm1DImpl : public ComplexPotential::Impl {
 public:
  explicit ClosedForm1DImpl(SmoothFn1D h) : h_(std::move(h)) {}
  int dim() const override { return 1; }
  double value(const VecD& y) const override { return h_.value(y[0]); }
  VecD gradient(const VecD& y) const override { return {h_.d1(y[0])}; }
  Eigen::MatrixXd hessian(const VecD& y) const override {
    Eigen::MatrixXd H(1, 1);
    H(0, 0) = h_.d2(y[0]);
    return H;
  }

 private:
  SmoothFn1D h_;
};

class CallbackImpl : public ComplexPotential::Impl {
 public:
  CallbackImpl(int dim, std::function<double(const VecD&)> v,
               std::function<VecD(const VecD&)> g,
               std::function<Eigen::MatrixXd(const VecD&)> h)
      : dim_(dim), v_(std::move(v)), g_(std::move(g)), h_(std::move(h)) {}
  int dim() const override { return dim_; }
  double value(const VecD& y) const override { return v_(y); }
  VecD gradient(const VecD& y) const override { return g_(y); }
  Eigen::MatrixXd hessian(const VecD& y) const override { return h_(y); }

 private:
  int dim_;
  std::function<double(const VecD&)> v_;
  std::function<VecD(const VecD&)> g_;
  std::function<Eigen::MatrixXd(const VecD&)> h_;
};

// Exact dual in one variable.  The slope of u jumps at ray creases, so the
// dual has a linear segment per crease; between segments u'(x) = S(x) + r_i
// with S the smooth slope and r_i the constant ray slope of the interval.
class Dual1DImpl : public ComplexPotential::Impl {
 public:
  explicit Dual1DImpl(SymplecticPotential u) : u_(std::move(u)) {
    const Polytope& P = u_.polytope();
    a_ = to_double(P.box_lower()[0]);
    b_ = to_double(P.box_upper()[0]);
    blowup_ = u_.boundary_blowup();
    creases_ = u_.creases_1d();
    const int m = int(creases_.size());
    ray_slope_.resize(m + 1);
    if (m == 0) {
      double mid = 0.5 * (a_ + b_);
      double s = 0;
      for (const auto& [t, f] : u_.rays()) s += t * f->gradient({mid})[0];
      ray_slope_[0] = s;
    } else {
      ray_slope_[0] = creases_[0].ray_slope_left;
      for (int i = 1; i <= m; ++i) ray_slope_[i] = creases_[i - 1].ray_slope_right;
    }
    for (int i = 0; i < m; ++i) {
      double Sx = u_.smooth_deriv1d(creases_[i].x);
      t_lo_.push_back(Sx + ray_slope_[i]);
      t_hi_.push_back(Sx + ray_slope_[i + 1]);
    }
    if (!blowup_) {
      slope_a_ = u_.smooth_deriv1d(a_) + ray_slope_.front();
      slope_b_ = u_.smooth_deriv1d(b_) + ray_slope_.back();
      value_a_ = u_.value({a_});
      value_b_ = u_.value({b_});
    }
  }

  int dim() const override { return 1; }

  // Maximizer of x*y - u(x); constant on dual segments.
  double argmax(double y) const {
    const int m = int(creases_.size());
    for (int i = 0; i < m; ++i) {
      if (y < t_lo_[i]) {
        double l = (i == 0) ? a_ : creases_[i - 1].x;
        return solve_interval(l, creases_[i].x, y - ray_slope_[i], i == 0);
      }
      if (y <= t_hi_[i]) return creases_[i].x;
    }
    if (!blowup_) {
      if (y <= slope_a_) return a_;
      if (y >= slope_b_) return b_;
    }
    double l = (m == 0) ? a_ : creases_[m - 1].x;
    return solve_interval(l, b_, y - ray_slope_[m], m == 0);
  }

  double value(const VecD& y) const override {
    double x = argmax(y[0]);
    if (!blowup_) {
      if (x == a_) return a_ * y[0] - value_a_;
      if (x == b_) return b_ * y[0] - value_b_;
    }
    return x * y[0] - u_.value({x});
  }

  VecD gradient(const VecD& y) const override { return {argmax(y[0])}; }

  Eigen::MatrixXd hessian(const VecD& y) const override {
    Eigen::MatrixXd H(1, 1);
    double x = argmax(y[0]);
    for (const auto& c : creases_)
      if (x == c.x) {
        H(0, 0) = 0.0;
        return H;
      }
    if (!blowup_ && (x == a_ || x == b_)) {
      H(0, 0) = 0.0;
      return H;
    }
    H(0, 0) = 1.0 / u_.smooth_second1d(x);
    return H;
  }

  std::vector<ComplexPotential::Segment> segments() const override {
    std::vector<ComplexPotential::Segment> out;
    for (size_t i = 0; i < creases_.size(); ++i)
      out.push_back({t_lo_[i], t_hi_[i], creases_[i].x});
    return out;
  }

 private:
  // Solves S(x) = target on (l, r); `at_boundary` marks intervals whose outer
  // end sits on the polytope boundary where the slope may blow up.
  double solve_interval(double l, double r, double target, bool) const {
    auto S = [&](double x) { return u_.smooth_deriv1d(x); };
    double lo = l, hi = r;
    if (blowup_) {
      double d = (r - l) * 0.25;
      if (l == a_) {
        while (l + d > l && S(l + d) > target) d *= 0.5;
        lo = l + d;
      }
      d = (r - l) * 0.25;
      if (r == b_) {
        while (r - d < r && S(r - d) < target) d *= 0.5;
        hi = r - d;
      }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      double diff = S(x) - target;
      if (diff > 0)
        hi = x;
      else
        lo = x;
      double dd = u_.smooth_second1d(x);
      double cand = (dd > 0) ? x - diff / dd : 0.5 * (lo + hi);
      if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
      if (std::abs(cand - x) <= 1e-16 * (1 + std::abs(x)) && it > 6) return cand;
      x = cand;
    }
    return x;
  }

  SymplecticPotential u_;
  double a_, b_;
  bool blowup_;
  std::vector<SymplecticPotential::Crease> creases_;
  std::vector<double> ray_slope_, t_lo_, t_hi_;
  double slope_a_ = 0, slope_b_ = 0, value_a_ = 0, value_b_ = 0;
};

// Dim >= 2 fallback: grid maximization with local refinement.
class GridDualImpl : public ComplexPotential::Impl {
 public:
  explicit GridDualImpl(SymplecticPotential u) : u_(std::move(u)) {
    rule_ = midpoint_rule(u_.polytope(), 48);
    cell_ = 0;
    const auto& P = u_.polytope();
    for (int j = 0; j < P.dim(); ++j)
      cell_ = std::max(cell_, to_double(P.box_upper()[j] - P.box_lower()[j]) / 48);
    uvals_.reserve(rule_.nodes.size());
    for (const auto& x : rule_.nodes) uvals_.push_back(u_.value(x));
  }

  int dim() const override { return u_.polytope().dim(); }

  VecD argmax(const VecD& y) const {
    double best = -std::numeric_limits<double>::infinity();
    VecD bx = rule_.nodes.front();
    for (size_t i = 0; i < rule_.nodes.size(); ++i) {
      double v = dotd(rule_.nodes[i], y) - uvals_[i];
      if (v > best) best = v, bx = rule_.nodes[i];
    }
    double w = 1.5 * cell_;
    const int n = dim();
    for (int round = 0; round < 4; ++round) {
      VecD nb = bx;
      VecD x(n);
      std::vector<int> idx(n, 0);
      const int K = 9;
      while (true) {
        bool inside = true;
        for (int j = 0; j < n; ++j) {
          x[j] = bx[j] + w * (2.0 * idx[j] / (K - 1) - 1.0);
        }
        if (u_.polytope().contains(x)) {
          double v;
          try {
            v = dotd(x, y) - u_.value(x);
          } catch (const Error&) {
            v = -std::numeric_limits<double>::infinity();
            inside = false;
          }
          if (inside && v > best) best = v, nb = x;
        }
        int j = 0;
        while (j < n && ++idx[j] == K) idx[j++] = 0;
        if (j == n) break;
      }
      bx = nb;
      w /= 4;
    }
    return bx;
  }

  double value(const VecD& y) const override {
    VecD x = argmax(y);
    return dotd(x, y) - u_.value(x);
  }

  VecD gradient(const VecD& y) const override { return argmax(y); }

  Eigen::MatrixXd hessian(const VecD& y) const override {
    const int n = dim();
    const double h = 1e-4;
    Eigen::MatrixXd H(n, n);
    for (int j = 0; j < n; ++j) {
      VecD yp = y, ym = y;
      yp[j] += h;
      ym[j] -= h;
      VecD gp = gradient(yp), gm = gradient(ym);
      for (int k = 0; k < n; ++k) H(j, k) = (gp[k] - gm[k]) / (2 * h);
    }
    return 0.5 * (H + H.transpose());
  }

 private:
  SymplecticPotential u_;
  QuadratureRule rule_;
  std::vector<double> uvals_;
  double cell_;
};

}  // namespace

int ComplexPotential::dim() const { return impl_->dim(); }
double ComplexPotential::value(const VecD& y) const { return impl_->value(y); }
VecD ComplexPotential::gradient(const VecD& y) const { return impl_->gradient(y); }
Eigen::MatrixXd ComplexPotential::hessian(const VecD& y) const {
  return impl_->hessian(y);
}
double ComplexPotential::second1d(double y) const {
  if (dim() != 1) throw UnsupportedError("second1d requires dim 1");
  return impl_->hessian(VecD{y})(0, 0);
}
std::vector<ComplexPotential::Segment> ComplexPotential::segments() const {
  return impl_->segments();
}

ComplexPotential ComplexPotential::from_closed_form(SmoothFn1D h) {
  return ComplexPotential(std::make_shared<ClosedForm1DImpl>(std::move(h)));
}

ComplexPotential ComplexPotential::from_callbacks(
    int dim, std::function<double(const VecD&)> value,
    std::function<VecD(const VecD&)> gradient,
    std::function<Eigen::MatrixXd(const VecD&)> hessian) {
  return ComplexPotential(std::make_shared<CallbackImpl>(
      dim, std::move(value), std::move(gradient), std::move(hessian)));
}

ComplexPotential legendre_dual(const SymplecticPotential& u) {
  u.check_convex();
  if (u.polytope().dim() == 1)
    return ComplexPotential(std::make_shared<Dual1DImpl>(u));
  return ComplexPotential(std::make_shared<GridDualImpl>(u));
}

double biconjugate(const ComplexPotential& h, double x) {
  if (h.dim() != 1) throw UnsupportedError("biconjugate requires dim 1");
  double L = 1.0;
  while (h.deriv1d(-L) > x || h.deriv1d(L) < x) {
    L *= 2;
    if (L > 1e12) throw DomainError("biconjugate: x outside the gradient range");
  }
  double lo = -L, hi = L;
  for (int it = 0; it < 300; ++it) {
    double y = 0.5 * (lo + hi);
    if (h.deriv1d(y) > x)
      hi = y;
    else
      lo = y;
  }
  double y = 0.5 * (lo + hi);
  return x * y - h.value1d(y);
}

double legendre_roundtrip_error(const SymplecticPotential& u, int samples) {
  if (u.polytope().dim() != 1)
    throw UnsupportedError("roundtrip error implemented for dim 1");
  ComplexPotential h = legendre_dual(u);
  auto rule = midpoint_rule(u.polytope(), samples);
  double worst = 0;
  for (const auto& x : rule.nodes)
    worst = std::max(worst, std::abs(biconjugate(h, x[0]) - u.value(x)));
  return worst;
}

}  // namespace toric
