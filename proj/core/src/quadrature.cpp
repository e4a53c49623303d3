#include "toric/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace toric {

namespace {

// Exact 1-d slice of P along axis `axis` with the other coordinates fixed.
// Returns false when empty.
bool slice_range(const Polytope& P, int axis, const std::vector<double>& x,
                 double& lo, double& hi) {
  lo = -std::numeric_limits<double>::infinity();
  hi = std::numeric_limits<double>::infinity();
  for (const auto& f : P.facets()) {
    double v = double(f.normal[axis]);
    double rest = to_double(f.offset);
    for (size_t j = 0; j < x.size(); ++j)
      if (int(j) != axis) rest += double(f.normal[j]) * x[j];
    if (v == 0) {
      if (rest < 0) return false;
    } else if (v > 0) {
      lo = std::max(lo, -rest / v);
    } else {
      hi = std::min(hi, -rest / v);
    }
  }
  return lo < hi;
}

void fill_axis(const Polytope& P, int axis, std::vector<double>& x,
               double cell_target, const std::vector<double>& splits,
               QuadratureRule& rule, double outer_weight) {
  const int n = P.dim();
  double lo, hi;
  if (axis == 0) {
    lo = to_double(P.box_lower()[0]);
    hi = to_double(P.box_upper()[0]);
  } else if (!slice_range(P, axis, x, lo, hi)) {
    return;
  }
  std::vector<double> cuts{lo};
  if (axis == n - 1)
    for (double s : splits)
      if (s > lo && s < hi) cuts.push_back(s);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  for (size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    double a = cuts[seg], b = cuts[seg + 1];
    int cells = std::max(1, int(std::ceil((b - a) / cell_target)));
    double h = (b - a) / cells;
    for (int i = 0; i < cells; ++i) {
      x[axis] = a + (i + 0.5) * h;
      if (axis == n - 1) {
        rule.nodes.push_back(x);
        rule.weights.push_back(outer_weight * h);
      } else {
        fill_axis(P, axis + 1, x, cell_target, splits, rule, outer_weight * h);
      }
    }
  }
  x[axis] = 0;
}

}  // namespace

QuadratureRule midpoint_rule(const Polytope& P, int cells_per_axis,
                             const std::vector<double>& split_points) {
  if (cells_per_axis < 1) throw PreconditionError("cells_per_axis must be >= 1");
  double diam = 0;
  for (int j = 0; j < P.dim(); ++j)
    diam = std::max(diam, to_double(P.box_upper()[j] - P.box_lower()[j]));
  double cell_target = diam / cells_per_axis;
  QuadratureRule rule;
  std::vector<double> x(P.dim(), 0.0);
  fill_axis(P, 0, x, cell_target, split_points, rule, 1.0);
  rule.margin = std::numeric_limits<double>::infinity();
  for (const auto& node : rule.nodes)
    rule.margin = std::min(rule.margin, P.facet_distance(node));
  return rule;
}

double apply_rule(const QuadratureRule& rule, const ScalarField& g) {
  double total = 0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double v = g(rule.nodes[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand not finite at node (";
      for (size_t j = 0; j < rule.nodes[i].size(); ++j)
        os << (j ? "," : "") << rule.nodes[i][j];
      os << ")";
      throw DomainError(os.str());
    }
    total += rule.weights[i] * v;
  }
  return total;
}

IntegralEstimate integrate_interior(const Polytope& P, const ScalarField& g,
                                    int cells_per_axis,
                                    const std::vector<double>& split_points) {
  double coarse = apply_rule(midpoint_rule(P, cells_per_axis / 2, split_points), g);
  double fine = apply_rule(midpoint_rule(P, cells_per_axis, split_points), g);
  return {fine, std::abs(fine - coarse)};
}

double integrate_boundary(const Polytope& P, const ScalarField& g,
                          int cells_per_edge) {
  auto rep = check_delzant(P);
  if (!rep.is_delzant)
    throw UnsupportedError("boundary integration requires a Delzant polytope");
  if (P.dim() == 1) {
    std::vector<double> a{to_double(P.box_lower()[0])};
    std::vector<double> b{to_double(P.box_upper()[0])};
    return g(a) + g(b);
  }
  if (P.dim() == 2) {
    auto poly = P.polygon_ccw();
    double total = 0;
    for (size_t i = 0; i < poly.size(); ++i) {
      const RatVec& p = poly[i];
      const RatVec& q = poly[(i + 1) % poly.size()];
      RatVec d{q[0] - p[0], q[1] - p[1]};
      Int gg = gcd(numerator(d[0]), numerator(d[1]));
      Int L = lcm(denominator(d[0]), denominator(d[1]));
      if (gg == 0) continue;
      double sigma_len = std::abs(to_double(Rational(gg, L)));
      double acc = 0;
      for (int c = 0; c < cells_per_edge; ++c) {
        double t = (c + 0.5) / cells_per_edge;
        std::vector<double> x{to_double(p[0]) + t * to_double(d[0]),
                              to_double(p[1]) + t * to_double(d[1])};
        acc += g(x);
      }
      total += acc / cells_per_edge * sigma_len;
    }
    return total;
  }
  throw UnsupportedError("boundary integration supported for dim <= 2");
}

}  // namespace toric
