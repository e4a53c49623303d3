#pragma once

#include <json.hpp>
#include <memory>
#include <string>

#include "toric/piecewise_linear.hpp"
#include "toric/polytope.hpp"
#include "toric/rh.hpp"

namespace toric {

using nlohmann::json;

// Rationals serialize as strings "p/q" (or "p" when integral).
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json polytope_to_json(const Polytope& P);
Polytope polytope_from_json(const json& j);

json pl_to_json(const PiecewiseLinearFn& f);
PiecewiseLinearFn pl_from_json(const json& j);

struct ExperimentConfig {
  std::shared_ptr<const Polytope> P;
  std::shared_ptr<const PiecewiseLinearFn> f;
  Rational K;
  int k_max = 8;
  double t_max = 10.0;
  int grid = 400;
  double window = 5.0;
};

ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& cfg);

RHProblem rh_problem_from_json(const json& j);
json rh_problem_to_json(const RHProblem& prob);

// Throws StructuralError with a descriptive message on malformed input.
json load_json_file(const std::string& path);

}  // namespace toric
