#pragma once

#include <vector>

#include "toric/polytope.hpp"
#include "toric/rational.hpp"

namespace toric {

struct AffinePiece {
  RatVec a;
  Rational c;
};

// Convex rational PL function f(x) = max_j (<a_j,x> + c_j).
class PiecewiseLinearFn {
 public:
  explicit PiecewiseLinearFn(std::vector<AffinePiece> pieces);

  int dim() const { return int(pieces_.front().a.size()); }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }

  Rational value(const RatVec& x) const;
  double value(const std::vector<double>& x) const;
  int active_piece(const std::vector<double>& x) const;  // argmax
  // Gradient of the active piece (one-sided on creases).
  std::vector<double> gradient(const std::vector<double>& x) const;

  Rational max_over(const Polytope& P) const;  // max over vertices

  // 1-d helpers.  Crease locations inside (a,b), sorted, with the one-sided
  // slopes of f on each resulting subinterval.
  struct Crease1D {
    Rational x;
    Rational slope_left;
    Rational slope_right;
  };
  std::vector<Crease1D> creases_1d(const Rational& a, const Rational& b) const;

  double min_crease_distance(const std::vector<double>& x,
                             const Polytope& P) const;

  PiecewiseLinearFn plus_affine(const RatVec& a, const Rational& c) const;
  PiecewiseLinearFn scaled(const Rational& s) const;

 private:
  std::vector<AffinePiece> pieces_;
};

// Exact integrals for dim <= 2, used as closed-form oracles.
Rational integrate_pl_interior(const Polytope& P, const PiecewiseLinearFn& f);
Rational integrate_pl_boundary(const Polytope& P, const PiecewiseLinearFn& f);

}  // namespace toric
