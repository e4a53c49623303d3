#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "toric/rational.hpp"

namespace toric {

// One inequality <v,x> + lambda >= 0 with primitive integer normal v.
struct Facet {
  IntVec normal;
  Rational offset;
};

struct Vertex {
  RatVec point;
  std::vector<int> active;  // indices of facets vanishing at the point
};

// Bounded rational polytope P = {x : <v_i,x> + lambda_i >= 0}.
// Construction validates primitivity of the normals, boundedness and a
// nonempty interior; vertices are derived exactly.
class Polytope {
 public:
  Polytope(int dim, std::vector<Facet> facets);

  int dim() const { return dim_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  Rational ell(int i, const RatVec& x) const;
  double ell(int i, const std::vector<double>& x) const;

  bool contains(const RatVec& x) const;
  bool contains(const std::vector<double>& x) const;  // strict interior
  // Membership of an integer point in the dilation k·P (offsets scaled by k).
  bool contains_dilated(const IntVec& x, long long k) const;

  // Componentwise bounding box of the vertex set.
  RatVec box_lower() const;
  RatVec box_upper() const;

  RatVec interior_point() const;  // vertex centroid

  // Minimal Euclidean distance from x to the facet hyperplanes.
  double facet_distance(const std::vector<double>& x) const;

  // Exact Lebesgue volume; supported for dim <= 2.
  Rational volume() const;
  // Lattice-normalized boundary measure Vol_sigma(dP); dim <= 2.
  // dim 1: one unit atom per endpoint. dim 2: lattice length of each edge.
  Rational boundary_measure() const;

  // Vertices of the polygon in counterclockwise order (dim 2 only).
  std::vector<RatVec> polygon_ccw() const;

 private:
  int dim_;
  std::vector<Facet> facets_;
  std::vector<Vertex> vertices_;

  void enumerate_vertices();
  void check_bounded() const;
};

struct DelzantFailure {
  RatVec vertex;
  int meeting_facets;
  Int det;  // 0 when the count is wrong
};

struct DelzantReport {
  bool is_delzant = false;
  std::vector<DelzantFailure> failing_vertices;
};

// A vertex passes when exactly n facets meet there and their normals have
// determinant +-1.
DelzantReport check_delzant(const Polytope& P);

// Exact enumeration of k·P ∩ Z^n, sorted lexicographically.
std::vector<IntVec> lattice_points(const Polytope& P, long long k);

// Applies a unimodular map x -> U x + t to the facet data (U integer with
// |det U| = 1).  Used by invariance tests.
Polytope unimodular_image(const Polytope& P, const std::vector<IntVec>& U,
                          const IntVec& t);

}  // namespace toric
