#include "toric/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace toric {

namespace {

int rational_rank(std::vector<RatVec> rows, int cols) {
  int rank = 0;
  size_t nr = rows.size();
  for (int col = 0; col < cols && rank < int(nr); ++col) {
    size_t piv = rank;
    while (piv < nr && rows[piv][col] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t r = 0; r < nr; ++r) {
      if (int(r) == rank || rows[r][col] == 0) continue;
      Rational factor = rows[r][col] / rows[rank][col];
      for (int c = col; c < cols; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

// Enumerates subsets of size k from {0..m-1}, calling fn on each.
void for_subsets(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (int i = start; i <= m - (k - depth); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

// Null direction of (dim-1) rational rows in R^dim, when their rank is dim-1.
std::optional<RatVec> null_direction(const std::vector<RatVec>& rows, int dim) {
  // Append each candidate unit row and look for the one making the matrix
  // singular-free; solve for the direction via cofactor-style elimination.
  // For the small dims in use, do elimination and back-substitute.
  std::vector<RatVec> A = rows;
  if (rational_rank(A, dim) != dim - 1) return std::nullopt;
  // Find a free column assignment: solve A d = 0 with one coordinate pinned.
  for (int pin = 0; pin < dim; ++pin) {
    std::vector<RatVec> M;
    RatVec b;
    for (const auto& r : rows) {
      RatVec row;
      for (int c = 0; c < dim; ++c)
        if (c != pin) row.push_back(r[c]);
      M.push_back(row);
      b.push_back(-r[pin]);
    }
    RatVec sol;
    if (solve_rational(M, b, sol)) {
      RatVec d(dim);
      int j = 0;
      for (int c = 0; c < dim; ++c) d[c] = (c == pin) ? Rational(1) : sol[j++];
      return d;
    }
  }
  return std::nullopt;
}

}  // namespace

Polytope::Polytope(int dim, std::vector<Facet> facets)
    : dim_(dim), facets_(std::move(facets)) {
  if (dim_ < 1) throw StructuralError("polytope dimension must be positive");
  if (facets_.size() < size_t(dim_ + 1))
    throw StructuralError("too few facets for a bounded polytope");
  for (const auto& f : facets_) {
    if (int(f.normal.size()) != dim_)
      throw StructuralError("facet normal has wrong dimension");
    if (content(f.normal) != 1)
      throw StructuralError("facet normal is not primitive");
  }
  check_bounded();
  enumerate_vertices();
  if (vertices_.empty())
    throw StructuralError("polytope is empty (no vertices)");
  RatVec c = interior_point();
  for (size_t i = 0; i < facets_.size(); ++i)
    if (ell(int(i), c) <= 0)
      throw StructuralError("polytope has empty interior (facet " +
                            std::to_string(i) + " not slack at centroid)");
}

void Polytope::check_bounded() const {
  std::vector<RatVec> rows;
  for (const auto& f : facets_) {
    RatVec r(dim_);
    for (int j = 0; j < dim_; ++j) r[j] = f.normal[j];
    rows.push_back(r);
  }
  if (rational_rank(rows, dim_) < dim_)
    throw StructuralError("polytope is unbounded (normals do not span)");
  // A nonzero recession direction lies on dim-1 of the normal hyperplanes.
  bool unbounded = false;
  auto admits = [&](const RatVec& d) {
    bool pos_ok = true, neg_ok = true;
    for (const auto& f : facets_) {
      Rational s = 0;
      for (int j = 0; j < dim_; ++j) s += Rational(f.normal[j]) * d[j];
      if (s < 0) pos_ok = false;
      if (s > 0) neg_ok = false;
    }
    return pos_ok || neg_ok;
  };
  if (dim_ == 1) {
    RatVec d{Rational(1)};
    if (admits(d)) unbounded = true;
  } else {
    for_subsets(int(facets_.size()), dim_ - 1, [&](const std::vector<int>& idx) {
      if (unbounded) return;
      std::vector<RatVec> sub;
      for (int i : idx) sub.push_back(rows[i]);
      auto d = null_direction(sub, dim_);
      if (d && admits(*d)) unbounded = true;
    });
  }
  if (unbounded) throw StructuralError("polytope is unbounded");
}

void Polytope::enumerate_vertices() {
  std::set<RatVec> seen;
  for_subsets(int(facets_.size()), dim_, [&](const std::vector<int>& idx) {
    std::vector<RatVec> A;
    RatVec b;
    for (int i : idx) {
      RatVec row(dim_);
      for (int j = 0; j < dim_; ++j) row[j] = facets_[i].normal[j];
      A.push_back(row);
      b.push_back(-facets_[i].offset);
    }
    RatVec x;
    if (!solve_rational(A, b, x)) return;
    for (size_t i = 0; i < facets_.size(); ++i)
      if (ell(int(i), x) < 0) return;
    if (!seen.insert(x).second) return;
    Vertex v;
    v.point = x;
    for (size_t i = 0; i < facets_.size(); ++i)
      if (ell(int(i), x) == 0) v.active.push_back(int(i));
    vertices_.push_back(std::move(v));
  });
  std::sort(vertices_.begin(), vertices_.end(),
            [](const Vertex& a, const Vertex& b) { return a.point < b.point; });
}

Rational Polytope::ell(int i, const RatVec& x) const {
  return dot(facets_[i].normal, x) + facets_[i].offset;
}

double Polytope::ell(int i, const std::vector<double>& x) const {
  return dotd(facets_[i].normal, x) + to_double(facets_[i].offset);
}

bool Polytope::contains(const RatVec& x) const {
  for (size_t i = 0; i < facets_.size(); ++i)
    if (ell(int(i), x) < 0) return false;
  return true;
}

bool Polytope::contains(const std::vector<double>& x) const {
  for (const auto& f : facets_) {
    double l = dotd(to_doubles(f.normal), x) + to_double(f.offset);
    if (l <= 0) return false;
  }
  return true;
}

bool Polytope::contains_dilated(const IntVec& x, long long k) const {
  for (const auto& f : facets_) {
    Rational s = f.offset * k;
    for (int j = 0; j < dim_; ++j) s += Rational(f.normal[j]) * x[j];
    if (s < 0) return false;
  }
  return true;
}

RatVec Polytope::box_lower() const {
  RatVec lo = vertices_.front().point;
  for (const auto& v : vertices_)
    for (int j = 0; j < dim_; ++j) lo[j] = std::min(lo[j], v.point[j]);
  return lo;
}

RatVec Polytope::box_upper() const {
  RatVec hi = vertices_.front().point;
  for (const auto& v : vertices_)
    for (int j = 0; j < dim_; ++j) hi[j] = std::max(hi[j], v.point[j]);
  return hi;
}

RatVec Polytope::interior_point() const {
  RatVec c(dim_, Rational(0));
  for (const auto& v : vertices_)
    for (int j = 0; j < dim_; ++j) c[j] += v.point[j];
  for (int j = 0; j < dim_; ++j) c[j] /= Rational((long long)vertices_.size());
  return c;
}

double Polytope::facet_distance(const std::vector<double>& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < facets_.size(); ++i) {
    double norm2 = 0;
    for (long long c : facets_[i].normal) norm2 += double(c) * double(c);
    best = std::min(best, std::abs(ell(int(i), x)) / std::sqrt(norm2));
  }
  return best;
}

std::vector<RatVec> Polytope::polygon_ccw() const {
  if (dim_ != 2) throw UnsupportedError("polygon_ccw requires dim 2");
  RatVec c = interior_point();
  std::vector<RatVec> pts;
  for (const auto& v : vertices_) pts.push_back(v.point);
  std::sort(pts.begin(), pts.end(), [&](const RatVec& a, const RatVec& b) {
    double aa = std::atan2(to_double(a[1] - c[1]), to_double(a[0] - c[0]));
    double ab = std::atan2(to_double(b[1] - c[1]), to_double(b[0] - c[0]));
    return aa < ab;
  });
  return pts;
}

Rational Polytope::volume() const {
  if (dim_ == 1) return box_upper()[0] - box_lower()[0];
  if (dim_ == 2) {
    auto pts = polygon_ccw();
    Rational two_area = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      const auto& q = pts[(i + 1) % pts.size()];
      two_area += p[0] * q[1] - q[0] * p[1];
    }
    return two_area / 2;
  }
  throw UnsupportedError("exact volume supported for dim <= 2");
}

Rational Polytope::boundary_measure() const {
  if (dim_ == 1) return 2;
  if (dim_ == 2) {
    auto pts = polygon_ccw();
    Rational total = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      const auto& q = pts[(i + 1) % pts.size()];
      RatVec d{q[0] - p[0], q[1] - p[1]};
      // sigma-length = the rational multiple of the primitive integer
      // direction spanning the edge
      Int num_gcd = gcd(numerator(d[0]), numerator(d[1]));
      Int den_lcm = lcm(denominator(d[0]), denominator(d[1]));
      if (num_gcd == 0) continue;
      total += abs(Rational(num_gcd, den_lcm));
    }
    return total;
  }
  throw UnsupportedError("boundary measure supported for dim <= 2");
}

DelzantReport check_delzant(const Polytope& P) {
  DelzantReport rep;
  rep.is_delzant = true;
  for (const auto& v : P.vertices()) {
    if (int(v.active.size()) != P.dim()) {
      rep.is_delzant = false;
      rep.failing_vertices.push_back({v.point, int(v.active.size()), Int(0)});
      continue;
    }
    std::vector<IntVec> M;
    for (int i : v.active) M.push_back(P.facets()[i].normal);
    Int d = int_det(M);
    if (d != 1 && d != -1) {
      rep.is_delzant = false;
      rep.failing_vertices.push_back({v.point, int(v.active.size()), d});
    }
  }
  return rep;
}

std::vector<IntVec> lattice_points(const Polytope& P, long long k) {
  if (k < 1) throw PreconditionError("dilation factor must be >= 1");
  const int n = P.dim();
  RatVec lo = P.box_lower(), hi = P.box_upper();
  IntVec lo_i(n), hi_i(n);
  for (int j = 0; j < n; ++j) {
    Rational l = lo[j] * k, h = hi[j] * k;
    Int fl = numerator(l) / denominator(l);
    while (Rational(fl) > l) --fl;
    while (Rational(fl + 1) <= l) ++fl;  // fl = floor(l); ceil below
    Int cl = fl;
    if (Rational(cl) < l) ++cl;
    Int fh = numerator(h) / denominator(h);
    while (Rational(fh) > h) --fh;
    while (Rational(fh + 1) <= h) ++fh;
    lo_i[j] = cl.convert_to<long long>();
    hi_i[j] = fh.convert_to<long long>();
  }
  std::vector<IntVec> out;
  IntVec x = lo_i;
  while (true) {
    if (P.contains_dilated(x, k)) out.push_back(x);
    int j = n - 1;
    while (j >= 0) {
      if (++x[j] <= hi_i[j]) break;
      x[j] = lo_i[j];
      --j;
    }
    if (j < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Polytope unimodular_image(const Polytope& P, const std::vector<IntVec>& U,
                          const IntVec& t) {
  const int n = P.dim();
  Int d = int_det(U);
  if (d != 1 && d != -1)
    throw PreconditionError("transform matrix is not unimodular");
  // Integer inverse of U via rational solve on unit vectors.
  std::vector<RatVec> A(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[i][j] = U[i][j];
  std::vector<IntVec> Uinv(n, IntVec(n));
  for (int col = 0; col < n; ++col) {
    RatVec e(n, Rational(0)), x;
    e[col] = 1;
    solve_rational(A, e, x);
    for (int i = 0; i < n; ++i) {
      if (denominator(x[i]) != 1)
        throw ConsistencyError("unimodular inverse is not integral");
      Uinv[i][col] = numerator(x[i]).convert_to<long long>();
    }
  }
  std::vector<Facet> facets;
  for (const auto& f : P.facets()) {
    Facet g;
    g.normal.assign(n, 0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) g.normal[j] += Uinv[i][j] * f.normal[i];
    g.offset = f.offset - dot(g.normal, RatVec(t.begin(), t.end()));
    facets.push_back(g);
  }
  return Polytope(n, facets);
}

}  // namespace toric
