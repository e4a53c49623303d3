#include "toric/geodesic.hpp"

#include <algorithm>
#include <cmath>

namespace toric {

namespace {

bool same_polytope(const Polytope& a, const Polytope& b) {
  if (a.dim() != b.dim() || a.facets().size() != b.facets().size()) return false;
  for (size_t i = 0; i < a.facets().size(); ++i)
    if (a.facets()[i].normal != b.facets()[i].normal ||
        a.facets()[i].offset != b.facets()[i].offset)
      return false;
  return true;
}

}  // namespace

SymplecticPotential segment_potential(const SymplecticPotential& a,
                                      const SymplecticPotential& b, double t) {
  if (!same_polytope(a.polytope(), b.polytope()))
    throw StructuralError("segment endpoints live on different polytopes");
  return interpolate(a, b, t);
}

SymplecticPotential ray_potential(const GeodesicRay& ray, double t) {
  if (t < 0) throw PreconditionError("ray parameter must be >= 0");
  if (t == 0) return ray.u0;
  return ray.u0.plus_ray(ray.f, t);
}

ComplexPotential complex_ray_potential(const GeodesicRay& ray, double t) {
  return legendre_dual(ray_potential(ray, t));
}

GeodesicRay algebraic_initial_ray(std::shared_ptr<const Polytope> P,
                                  std::shared_ptr<const PiecewiseLinearFn> f,
                                  const Rational& K) {
  if (P->dim() != 1)
    throw UnsupportedError("algebraic initial ray implemented for dim 1");
  auto lse = std::make_shared<LogSumExpPotential>(
      algebraic_ray_potential(*P, *f, K, 0.0));
  SmoothFn1D h0{[lse](double y) { return lse->value({y}); },
                [lse](double y) { return lse->gradient({y})[0]; },
                [lse](double y) { return lse->hessian({y})(0, 0); }};
  auto dual = std::make_shared<DualComponent1D>(h0);
  SymplecticPotential u0(P, {{1.0, dual}});
  return GeodesicRay{std::move(u0), std::move(f)};
}

GapSeries parallelism_gap(const GeodesicRay& ray, const Rational& K,
                          const std::vector<double>& t_list, double window,
                          int samples) {
  GapSeries out;
  const Polytope& P = ray.u0.polytope();
  for (double t : t_list) {
    ComplexPotential ht = complex_ray_potential(ray, t);
    LogSumExpPotential h0t = algebraic_ray_potential(P, *ray.f, K, t);
    double lo = -window, hi = window + t;
    double sup = 0;
    for (int i = 0; i <= samples; ++i) {
      VecD y{lo + (hi - lo) * i / samples};
      sup = std::max(sup, std::abs(ht.value(y) - h0t.value(y)));
    }
    double inc = out.gap.empty() ? 0.0 : std::abs(sup - out.gap.back());
    out.t.push_back(t);
    out.gap.push_back(sup);
    out.increment.push_back(inc);
  }
  return out;
}

ResidualReport geodesic_residual(
    const std::function<double(double, double)>& Phi, double t0, double t1,
    int nt, double y0, double y1, int ny,
    const std::function<double(double, double)>& crease_distance) {
  if (nt < 5 || ny < 5) throw PreconditionError("residual grid too small");
  const double dt = (t1 - t0) / nt;
  const double dy = (y1 - y0) / ny;
  const double excl = 3.0 * std::max(dt, dy);
  ResidualReport rep;
  for (int i = 1; i < nt; ++i) {
    double t = t0 + i * dt;
    for (int j = 1; j < ny; ++j) {
      double y = y0 + j * dy;
      if (crease_distance && crease_distance(t, y) < excl) {
        ++rep.skipped;
        continue;
      }
      double c = Phi(t, y);
      double ptt = (Phi(t + dt, y) - 2 * c + Phi(t - dt, y)) / (dt * dt);
      double pyy = (Phi(t, y + dy) - 2 * c + Phi(t, y - dy)) / (dy * dy);
      double pty = (Phi(t + dt, y + dy) - Phi(t + dt, y - dy) -
                    Phi(t - dt, y + dy) + Phi(t - dt, y - dy)) /
                   (4 * dt * dy);
      rep.max_residual = std::max(rep.max_residual, std::abs(ptt * pyy - pty * pty));
      ++rep.evaluated;
    }
  }
  return rep;
}

RayDiagnostics regularity_diagnostics(const GeodesicRay& ray,
                                      const std::vector<double>& t_list,
                                      double window, int samples) {
  if (ray.u0.polytope().dim() != 1)
    throw UnsupportedError("regularity diagnostics implemented for dim 1");
  RayDiagnostics out;
  const double edge_pad = 1e-6;
  for (double t : t_list) {
    ComplexPotential h = complex_ray_potential(ray, t);
    RayDiagnostics::Entry e;
    e.t = t;
    auto segs = h.segments();
    for (const auto& s : segs) {
      e.seg_lo.push_back(s.y_lo);
      e.seg_hi.push_back(s.y_hi);
      // Inside the segment h'' = 0, so the jump equals the outside value.
      e.jump_lo.push_back(std::abs(h.second1d(s.y_lo - edge_pad)));
      e.jump_hi.push_back(std::abs(h.second1d(s.y_hi + edge_pad)));
    }
    double lo = -window, hi = window + t;
    auto off_segment = [&](double y, double pad) {
      for (const auto& s : segs)
        if (y > s.y_lo - pad && y < s.y_hi + pad) return false;
      return true;
    };
    const double pad = 0.05;
    const double fd = 1e-4;
    for (int i = 0; i <= samples; ++i) {
      double y = lo + (hi - lo) * i / samples;
      if (!off_segment(y, pad)) continue;
      double s0 = h.second1d(y);
      e.sup_second = std::max(e.sup_second, std::abs(s0));
      double third =
          (h.second1d(y + fd) - h.second1d(y - fd)) / (2 * fd);
      e.third_sup = std::max(e.third_sup, std::abs(third));
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

}  // namespace toric
