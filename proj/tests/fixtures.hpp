#pragma once

#include <memory>

#include "toric/piecewise_linear.hpp"
#include "toric/polytope.hpp"

namespace toric::testing {

inline std::shared_ptr<const Polytope> interval(const Rational& a,
                                                const Rational& b) {
  return std::make_shared<Polytope>(
      1, std::vector<Facet>{{{1}, -a}, {{-1}, b}});
}

inline std::shared_ptr<const Polytope> unit_square() {
  return std::make_shared<Polytope>(
      2, std::vector<Facet>{
             {{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, 1}, {{0, -1}, 1}});
}

// f(x) = max(0, x - c) on an interval.
inline std::shared_ptr<const PiecewiseLinearFn> hinge(const Rational& c) {
  return std::make_shared<PiecewiseLinearFn>(std::vector<AffinePiece>{
      {{Rational(0)}, Rational(0)}, {{Rational(1)}, -c}});
}

inline std::shared_ptr<const PiecewiseLinearFn> affine1d(const Rational& a,
                                                         const Rational& c) {
  return std::make_shared<PiecewiseLinearFn>(
      std::vector<AffinePiece>{{{a}, c}});
}

}  // namespace toric::testing
