#pragma once

#include <functional>
#include <vector>

#include "toric/polytope.hpp"

namespace toric {

using ScalarField = std::function<double(const std::vector<double>&)>;

// Interior midpoint rule.  The innermost axis is sliced exactly against the
// facets, so nodes sit half a cell away from the boundary and never touch it.
struct QuadratureRule {
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  double margin = 0.0;  // min Euclidean distance of any node to a facet
};

// cells_per_axis controls the resolution of the outer grid; slice
// subdivisions match the same spacing.  split_points (per-axis, innermost
// axis only) force cell boundaries, used to keep nodes off PL creases.
QuadratureRule midpoint_rule(const Polytope& P, int cells_per_axis,
                             const std::vector<double>& split_points = {});

struct IntegralEstimate {
  double value = 0.0;
  double refinement_error = 0.0;  // |I(2N) - I(N)|
};

double apply_rule(const QuadratureRule& rule, const ScalarField& g);

IntegralEstimate integrate_interior(const Polytope& P, const ScalarField& g,
                                    int cells_per_axis = 256,
                                    const std::vector<double>& split_points = {});

// Facet-measure boundary integral (dim <= 2).  Exact endpoint atoms in 1-d;
// composite midpoint along lattice-normalized edges in 2-d.
double integrate_boundary(const Polytope& P, const ScalarField& g,
                          int cells_per_edge = 512);

}  // namespace toric
