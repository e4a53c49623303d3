#include "toric/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace toric {

namespace {

Int lcm_int(const Int& a, const Int& b) { return lcm(a, b); }

// floor of a rational.
Int rational_floor(const Rational& r) {
  Int q = numerator(r) / denominator(r);
  if (q * denominator(r) > numerator(r)) --q;
  return q;
}

}  // namespace

Polytope build_hat_polytope(const Polytope& P, const PiecewiseLinearFn& f,
                            const Rational& K) {
  if (f.dim() != P.dim())
    throw StructuralError("ray function dimension does not match the polytope");
  if (f.max_over(P) > K)
    throw PreconditionError("hat polytope requires K >= max_P f");
  const int n = P.dim();
  std::vector<Facet> facets;
  for (const auto& fc : P.facets()) {
    Facet g;
    g.normal = fc.normal;
    g.normal.push_back(0);
    g.offset = fc.offset;
    facets.push_back(g);
  }
  {
    Facet bottom;
    bottom.normal.assign(n + 1, 0);
    bottom.normal[n] = 1;
    bottom.offset = 0;
    facets.push_back(bottom);
  }
  for (const auto& piece : f.pieces()) {
    // s <= K - <a,x> - c  =>  <-La, x> - L s + L(K - c) >= 0, L clearing
    // the denominators of a; then divide by the content.
    Int L = 1;
    for (const auto& aj : piece.a) L = lcm_int(L, denominator(aj));
    Facet top;
    top.normal.resize(n + 1);
    for (int j = 0; j < n; ++j) {
      Rational scaled = -piece.a[j] * Rational(L);
      if (denominator(scaled) != 1)
        throw ConsistencyError("denominator clearing failed for a ray piece");
      top.normal[j] = (long long)numerator(scaled);
    }
    Int Lll = L;
    top.normal[n] = -(long long)Lll;
    top.offset = Rational(L) * (K - piece.c);
    IntVec cvec = top.normal;
    long long g = content(cvec);
    if (g > 1) {
      for (auto& v : top.normal) v /= g;
      top.offset /= Rational(g);
    }
    bool dup = false;
    for (const auto& existing : facets)
      if (existing.normal == top.normal && existing.offset == top.offset)
        dup = true;
    if (!dup) facets.push_back(top);
  }
  Polytope raw(n + 1, facets);
  // Prune inequalities that do not support a facet: a facet of a full
  // dimensional polytope carries at least n+1 vertices... at least dim many
  // affinely independent ones; for our simple constructions counting
  // incident vertices >= dim suffices.
  std::vector<int> incident(facets.size(), 0);
  for (const auto& v : raw.vertices())
    for (int fi : v.active) ++incident[fi];
  std::vector<Facet> kept;
  for (size_t i = 0; i < facets.size(); ++i)
    if (incident[i] >= n + 1) kept.push_back(facets[i]);
  if (kept.size() == facets.size()) return raw;
  return Polytope(n + 1, kept);
}

HilbertData hilbert_data(const Polytope& P, const PiecewiseLinearFn& f,
                         const Rational& K, int k_max) {
  if (k_max < 1) throw PreconditionError("k_max must be >= 1");
  Polytope hat = build_hat_polytope(P, f, K);
  HilbertData out;
  for (long long k = 1; k <= k_max; ++k) {
    auto base = lattice_points(P, k);
    auto lifted = lattice_points(hat, k);
    long long d = (long long)base.size();
    long long N = (long long)lifted.size();
    // Independent route: sum the column heights over the base points.
    long long w_cols = 0;
    for (const auto& x : base) {
      // f_k(x) = max_j (<a_j, x> + k c_j)
      Rational fk;
      bool first = true;
      for (const auto& piece : f.pieces()) {
        Rational v = piece.c * Rational(k);
        for (int j = 0; j < P.dim(); ++j) v += piece.a[j] * Rational(x[j]);
        if (first || v > fk) fk = v, first = false;
      }
      Rational height = Rational(k) * K - fk;
      if (height < 0) throw ConsistencyError("negative column height");
      w_cols += (long long)rational_floor(height);
    }
    if (w_cols != N - d)
      throw ConsistencyError("column count disagrees with the lifted count");
    out.d.push_back(d);
    out.N.push_back(N);
    out.w.push_back(N - d);
  }
  return out;
}

RatVec interpolate_polynomial(const std::vector<Rational>& values) {
  const int m = (int)values.size();
  // Solve the Vandermonde system at nodes k = 1..m exactly.
  std::vector<RatVec> A(m, RatVec(m));
  RatVec b(m);
  for (int i = 0; i < m; ++i) {
    Rational p = 1;
    for (int j = 0; j < m; ++j) {
      A[i][j] = p;
      p *= Rational(i + 1);
    }
    b[i] = values[i];
  }
  RatVec coeffs;
  if (!solve_rational(A, b, coeffs))
    throw ConsistencyError("singular Vandermonde system");
  return coeffs;
}

FutakiExpansion futaki_expansion(const Polytope& P, const PiecewiseLinearFn& f,
                                 const Rational& K, int k_max) {
  const int n = P.dim();
  const int need = n + 2;  // N(k) has degree n+1
  FutakiExpansion out;
  out.data = hilbert_data(P, f, K, std::max(k_max, need));
  std::vector<Rational> dv, Nv;
  for (int i = 0; i < n + 1; ++i) dv.push_back(Rational(out.data.d[i]));
  for (int i = 0; i < n + 2; ++i) Nv.push_back(Rational(out.data.N[i]));
  out.d_coeffs = interpolate_polynomial(dv);
  out.N_coeffs = interpolate_polynomial(Nv);
  // Consistency: the interpolants must reproduce every computed count.
  for (size_t i = 0; i < out.data.d.size(); ++i) {
    Rational k((long long)(i + 1));
    Rational dval = 0, Nval = 0, p = 1;
    for (const auto& c : out.d_coeffs) dval += c * p, p *= k;
    p = 1;
    for (const auto& c : out.N_coeffs) Nval += c * p, p *= k;
    if (dval != Rational(out.data.d[i]) || Nval != Rational(out.data.N[i]))
      throw ConsistencyError("Ehrhart interpolation does not reproduce counts");
  }
  // w(k) = N(k) - d(k); F(k) = w(k)/(k d(k)) = A(s)/B(s) with s = 1/k,
  // A(s) = sum_i w_i s^{n+1-i}, B(s) = sum_j d_j s^{n-j}.
  RatVec w_coeffs(n + 2, Rational(0));
  for (int i = 0; i < n + 2; ++i) {
    w_coeffs[i] = out.N_coeffs[i];
    if (i < (int)out.d_coeffs.size()) w_coeffs[i] -= out.d_coeffs[i];
  }
  auto wc = [&](int i) { return (i >= 0 && i < n + 2) ? w_coeffs[i] : Rational(0); };
  auto dc = [&](int j) {
    return (j >= 0 && j < (int)out.d_coeffs.size()) ? out.d_coeffs[j] : Rational(0);
  };
  Rational A0 = wc(n + 1), A1 = wc(n), A2 = wc(n - 1);
  Rational B0 = dc(n), B1 = dc(n - 1), B2 = dc(n - 2);
  if (B0 == 0) throw ConsistencyError("degenerate Ehrhart leading coefficient");
  out.F0 = A0 / B0;
  out.F1 = (A1 - out.F0 * B1) / B0;
  out.F2 = (A2 - out.F0 * B2 - out.F1 * B1) / B0;
  // Numeric cross-check: least squares fit of F(k) over k = 1..k_max in the
  // basis {1, 1/k, 1/k^2}.
  const int M = (int)out.data.d.size();
  Eigen::MatrixXd X(M, 3);
  Eigen::VectorXd y(M);
  for (int i = 0; i < M; ++i) {
    double k = i + 1.0;
    X(i, 0) = 1.0;
    X(i, 1) = 1.0 / k;
    X(i, 2) = 1.0 / (k * k);
    y(i) = double(out.data.w[i]) / (k * double(out.data.d[i]));
  }
  Eigen::Vector3d beta = X.colPivHouseholderQr().solve(y);
  out.fit_F0 = beta(0);
  out.fit_F1 = beta(1);
  out.fit_F2 = beta(2);
  return out;
}

LogSumExpPotential::LogSumExpPotential(std::vector<IntVec> points,
                                       std::vector<double> log_weights)
    : points_(std::move(points)), log_weights_(std::move(log_weights)) {
  if (points_.empty() || points_.size() != log_weights_.size())
    throw StructuralError("log-sum-exp needs matching points and weights");
  dim_ = (int)points_.front().size();
  for (const auto& p : points_)
    if ((int)p.size() != dim_)
      throw StructuralError("log-sum-exp points have mismatched dimensions");
}

VecD LogSumExpPotential::softmax_weights(const VecD& y) const {
  const size_t m = points_.size();
  VecD e(m);
  double top = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < m; ++i) {
    double t = log_weights_[i];
    for (int j = 0; j < dim_; ++j) t += 2.0 * double(points_[i][j]) * y[j];
    e[i] = t;
    top = std::max(top, t);
  }
  double Z = 0;
  for (size_t i = 0; i < m; ++i) {
    e[i] = std::exp(e[i] - top);
    Z += e[i];
  }
  for (auto& v : e) v /= Z;
  return e;
}

double LogSumExpPotential::value(const VecD& y) const {
  const size_t m = points_.size();
  double top = -std::numeric_limits<double>::infinity();
  VecD e(m);
  for (size_t i = 0; i < m; ++i) {
    double t = log_weights_[i];
    for (int j = 0; j < dim_; ++j) t += 2.0 * double(points_[i][j]) * y[j];
    e[i] = t;
    top = std::max(top, t);
  }
  double Z = 0;
  for (size_t i = 0; i < m; ++i) Z += std::exp(e[i] - top);
  return 0.5 * (top + std::log(Z));
}

VecD LogSumExpPotential::gradient(const VecD& y) const {
  VecD p = softmax_weights(y);
  VecD g(dim_, 0.0);
  for (size_t i = 0; i < points_.size(); ++i)
    for (int j = 0; j < dim_; ++j) g[j] += p[i] * double(points_[i][j]);
  return g;
}

Eigen::MatrixXd LogSumExpPotential::hessian(const VecD& y) const {
  VecD p = softmax_weights(y);
  VecD mean(dim_, 0.0);
  for (size_t i = 0; i < points_.size(); ++i)
    for (int j = 0; j < dim_; ++j) mean[j] += p[i] * double(points_[i][j]);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim_, dim_);
  for (size_t i = 0; i < points_.size(); ++i)
    for (int j = 0; j < dim_; ++j)
      for (int l = 0; l < dim_; ++l)
        H(j, l) += 2.0 * p[i] * (double(points_[i][j]) - mean[j]) *
                   (double(points_[i][l]) - mean[l]);
  return H;
}

ComplexPotential LogSumExpPotential::as_complex_potential() const {
  LogSumExpPotential copy = *this;
  return ComplexPotential::from_callbacks(
      dim_, [copy](const VecD& y) { return copy.value(y); },
      [copy](const VecD& y) { return copy.gradient(y); },
      [copy](const VecD& y) { return copy.hessian(y); });
}

namespace {

// log of c_x(t) = sum_{j=0}^{m} e^{2tj}, computed stably.
double log_column_sum(long long m, double t) {
  if (m < 0) throw ConsistencyError("negative column height");
  double top = std::max(0.0, 2.0 * t * double(m));
  double Z = 0;
  for (long long j = 0; j <= m; ++j) Z += std::exp(2.0 * t * double(j) - top);
  return top + std::log(Z);
}

std::vector<long long> column_heights(const Polytope& P,
                                      const PiecewiseLinearFn& f,
                                      const Rational& K,
                                      std::vector<IntVec>& pts) {
  pts = lattice_points(P, 1);
  std::vector<long long> heights;
  for (const auto& x : pts) {
    RatVec xr(x.begin(), x.end());
    Rational h = K - f.value(xr);
    if (h < 0) throw PreconditionError("column height requires K >= max_P f");
    Int fl = numerator(h) / denominator(h);
    if (fl * denominator(h) > numerator(h)) --fl;
    heights.push_back((long long)fl);
  }
  return heights;
}

}  // namespace

LogSumExpPotential algebraic_ray_potential(const Polytope& P,
                                           const PiecewiseLinearFn& f,
                                           const Rational& K, double t) {
  std::vector<IntVec> pts;
  auto heights = column_heights(P, f, K, pts);
  std::vector<double> lw(pts.size());
  double top = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pts.size(); ++i) {
    lw[i] = log_column_sum(heights[i], t);
    top = std::max(top, lw[i]);
  }
  for (auto& v : lw) v -= top;  // normalize by the largest column sum
  return LogSumExpPotential(pts, lw);
}

FsPositivityReport check_fs_positivity(const Polytope& P,
                                       const PiecewiseLinearFn& f,
                                       const Rational& K, double t,
                                       const std::vector<VecD>& samples) {
  if (samples.empty()) throw PreconditionError("positivity check needs samples");
  LogSumExpPotential h = algebraic_ray_potential(P, f, K, t);
  FsPositivityReport rep;
  bool first = true;
  for (const auto& y : samples) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.hessian(y));
    double lambda = es.eigenvalues().minCoeff();
    if (first || lambda < rep.min_eigenvalue) {
      rep.min_eigenvalue = lambda;
      rep.argmin = y;
      first = false;
    }
  }
  if (rep.min_eigenvalue <= 0) {
    std::string loc;
    for (double v : rep.argmin) loc += (loc.empty() ? "" : ",") + std::to_string(v);
    throw ConvexityError("non-positive Hessian of h_{0,t} at y=(" + loc + ")");
  }
  return rep;
}

}  // namespace toric
