#include "toric/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace toric {

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<AffinePiece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw StructuralError("PL function needs >= 1 piece");
  for (const auto& p : pieces_)
    if (p.a.size() != pieces_.front().a.size())
      throw StructuralError("PL pieces have mismatched dimensions");
}

Rational PiecewiseLinearFn::value(const RatVec& x) const {
  Rational best;
  bool first = true;
  for (const auto& p : pieces_) {
    Rational v = dot(p.a, x) + p.c;
    if (first || v > best) best = v, first = false;
  }
  return best;
}

double PiecewiseLinearFn::value(const std::vector<double>& x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_)
    best = std::max(best, dotd(to_doubles(p.a), x) + to_double(p.c));
  return best;
}

int PiecewiseLinearFn::active_piece(const std::vector<double>& x) const {
  int arg = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < pieces_.size(); ++j) {
    double v = dotd(to_doubles(pieces_[j].a), x) + to_double(pieces_[j].c);
    if (v > best) best = v, arg = int(j);
  }
  return arg;
}

std::vector<double> PiecewiseLinearFn::gradient(const std::vector<double>& x) const {
  return to_doubles(pieces_[active_piece(x)].a);
}

Rational PiecewiseLinearFn::max_over(const Polytope& P) const {
  Rational best;
  bool first = true;
  for (const auto& v : P.vertices()) {
    Rational val = value(v.point);
    if (first || val > best) best = val, first = false;
  }
  return best;
}

std::vector<PiecewiseLinearFn::Crease1D> PiecewiseLinearFn::creases_1d(
    const Rational& a, const Rational& b) const {
  if (dim() != 1) throw UnsupportedError("creases_1d requires dim 1");
  // Walk the upper envelope of the lines from x=a to x=b.
  // Active piece at x=a: max value, ties broken by smaller slope.
  std::map<Rational, std::pair<Rational, Rational>> creases;  // x -> slopes
  Rational x = a;
  int cur = -1;
  {
    Rational bestv;
    for (size_t j = 0; j < pieces_.size(); ++j) {
      Rational v = pieces_[j].a[0] * x + pieces_[j].c;
      if (cur < 0 || v > bestv ||
          (v == bestv && pieces_[j].a[0] < pieces_[cur].a[0]))
        bestv = v, cur = int(j);
    }
  }
  while (true) {
    // Earliest crossing with a steeper line beyond x.
    Rational best_x;
    int next = -1;
    for (size_t j = 0; j < pieces_.size(); ++j) {
      if (pieces_[j].a[0] <= pieces_[cur].a[0]) continue;
      Rational xc = (pieces_[cur].c - pieces_[j].c) /
                    (pieces_[j].a[0] - pieces_[cur].a[0]);
      if (xc <= x || xc >= b) continue;
      if (next < 0 || xc < best_x ||
          (xc == best_x && pieces_[j].a[0] > pieces_[next].a[0]))
        best_x = xc, next = int(j);
    }
    if (next < 0) break;
    creases[best_x] = {pieces_[cur].a[0], pieces_[next].a[0]};
    x = best_x;
    cur = next;
  }
  std::vector<Crease1D> out;
  for (const auto& [xc, sl] : creases)
    if (sl.first != sl.second) out.push_back({xc, sl.first, sl.second});
  return out;
}

double PiecewiseLinearFn::min_crease_distance(const std::vector<double>& x,
                                              const Polytope& P) const {
  double best = std::numeric_limits<double>::infinity();
  if (dim() == 1) {
    for (const auto& c : creases_1d(P.box_lower()[0], P.box_upper()[0]))
      best = std::min(best, std::abs(x[0] - to_double(c.x)));
    return best;
  }
  // Distance to the pairwise tie hyperplanes of pieces active somewhere on P.
  double fx = value(x);
  for (size_t j = 0; j < pieces_.size(); ++j) {
    double vj = dotd(to_doubles(pieces_[j].a), x) + to_double(pieces_[j].c);
    if (vj >= fx - 1e-300) continue;
    double norm = 0;
    auto aj = to_doubles(pieces_[j].a);
    auto ai = gradient(x);
    for (size_t k = 0; k < aj.size(); ++k)
      norm += (ai[k] - aj[k]) * (ai[k] - aj[k]);
    if (norm > 0) best = std::min(best, (fx - vj) / std::sqrt(norm));
  }
  return best;
}

PiecewiseLinearFn PiecewiseLinearFn::plus_affine(const RatVec& a,
                                                const Rational& c) const {
  std::vector<AffinePiece> out = pieces_;
  for (auto& p : out) {
    for (size_t j = 0; j < a.size(); ++j) p.a[j] += a[j];
    p.c += c;
  }
  return PiecewiseLinearFn(out);
}

PiecewiseLinearFn PiecewiseLinearFn::scaled(const Rational& s) const {
  if (s <= 0) throw PreconditionError("PL scale factor must be positive");
  std::vector<AffinePiece> out = pieces_;
  for (auto& p : out) {
    for (auto& aj : p.a) aj *= s;
    p.c *= s;
  }
  return PiecewiseLinearFn(out);
}

namespace {

// Exact integral of one affine form over a polygon given in ccw order.
Rational affine_over_polygon(const std::vector<RatVec>& poly, const RatVec& a,
                             const Rational& c) {
  Rational total = 0;
  if (poly.size() < 3) return total;
  const RatVec& p0 = poly[0];
  for (size_t i = 1; i + 1 < poly.size(); ++i) {
    const RatVec& p1 = poly[i];
    const RatVec& p2 = poly[i + 1];
    Rational two_area = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                        (p2[0] - p0[0]) * (p1[1] - p0[1]);
    Rational mean = (dot(a, p0) + dot(a, p1) + dot(a, p2)) / 3 + c;
    total += two_area / 2 * mean;
  }
  return total;
}

// Clips a ccw polygon against the halfplane <g,x> + h >= 0 (rational).
std::vector<RatVec> clip_polygon(const std::vector<RatVec>& poly,
                                 const RatVec& g, const Rational& h) {
  std::vector<RatVec> out;
  size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    const RatVec& p = poly[i];
    const RatVec& q = poly[(i + 1) % m];
    Rational vp = dot(g, p) + h;
    Rational vq = dot(g, q) + h;
    if (vp >= 0) out.push_back(p);
    if ((vp > 0 && vq < 0) || (vp < 0 && vq > 0)) {
      Rational s = vp / (vp - vq);
      RatVec mid(2);
      mid[0] = p[0] + s * (q[0] - p[0]);
      mid[1] = p[1] + s * (q[1] - p[1]);
      out.push_back(mid);
    }
  }
  return out;
}

}  // namespace

Rational integrate_pl_interior(const Polytope& P, const PiecewiseLinearFn& f) {
  if (P.dim() == 1) {
    Rational a = P.box_lower()[0], b = P.box_upper()[0];
    auto creases = f.creases_1d(a, b);
    std::vector<Rational> cuts{a};
    for (const auto& c : creases) cuts.push_back(c.x);
    cuts.push_back(b);
    Rational total = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      RatVec l{cuts[i]}, r{cuts[i + 1]};
      total += (f.value(l) + f.value(r)) / 2 * (cuts[i + 1] - cuts[i]);
    }
    return total;
  }
  if (P.dim() == 2) {
    auto poly = P.polygon_ccw();
    Rational total = 0;
    const auto& pieces = f.pieces();
    for (size_t j = 0; j < pieces.size(); ++j) {
      // Region where piece j attains the max.
      std::vector<RatVec> region = poly;
      for (size_t l = 0; l < pieces.size() && !region.empty(); ++l) {
        if (l == j) continue;
        RatVec g{pieces[j].a[0] - pieces[l].a[0], pieces[j].a[1] - pieces[l].a[1]};
        Rational h = pieces[j].c - pieces[l].c;
        if (g[0] == 0 && g[1] == 0) {
          if (h < 0 || (h == 0 && l < j)) region.clear();
          continue;
        }
        region = clip_polygon(region, g, h);
      }
      total += affine_over_polygon(region, pieces[j].a, pieces[j].c);
    }
    return total;
  }
  throw UnsupportedError("exact PL integration supported for dim <= 2");
}

Rational integrate_pl_boundary(const Polytope& P, const PiecewiseLinearFn& f) {
  if (P.dim() == 1) {
    return f.value(P.box_lower()) + f.value(P.box_upper());
  }
  if (P.dim() == 2) {
    auto poly = P.polygon_ccw();
    Rational total = 0;
    for (size_t i = 0; i < poly.size(); ++i) {
      const RatVec& p = poly[i];
      const RatVec& q = poly[(i + 1) % poly.size()];
      RatVec d{q[0] - p[0], q[1] - p[1]};
      Int g = gcd(numerator(d[0]), numerator(d[1]));
      Int L = lcm(denominator(d[0]), denominator(d[1]));
      if (g == 0) continue;
      Rational sigma_len = abs(Rational(g, L));
      // Restrict f to the edge; split at parameter values where the active
      // piece changes.  The restriction is convex PL in one parameter.
      std::vector<Rational> cuts{Rational(0), Rational(1)};
      const auto& pieces = f.pieces();
      for (size_t j = 0; j < pieces.size(); ++j)
        for (size_t l = j + 1; l < pieces.size(); ++l) {
          Rational fp = (dot(pieces[j].a, p) + pieces[j].c) -
                        (dot(pieces[l].a, p) + pieces[l].c);
          Rational fq = (dot(pieces[j].a, q) + pieces[j].c) -
                        (dot(pieces[l].a, q) + pieces[l].c);
          if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0))
            cuts.push_back(fp / (fp - fq));
        }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (size_t s = 0; s + 1 < cuts.size(); ++s) {
        auto at = [&](const Rational& t) {
          RatVec x{p[0] + t * d[0], p[1] + t * d[1]};
          return f.value(x);
        };
        total += (at(cuts[s]) + at(cuts[s + 1])) / 2 * (cuts[s + 1] - cuts[s]) *
                 sigma_len;
      }
    }
    return total;
  }
  throw UnsupportedError("exact PL boundary integration supported for dim <= 2");
}

}  // namespace toric
