#include "toric/serialize.hpp"

#include <fstream>

namespace toric {

json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw StructuralError("rational must be an integer or a \"p/q\" string");
}

json polytope_to_json(const Polytope& P) {
  json facets = json::array();
  for (const auto& f : P.facets()) {
    json normal = json::array();
    for (long long v : f.normal) normal.push_back(v);
    facets.push_back({{"normal", normal}, {"offset", rational_to_json(f.offset)}});
  }
  return {{"dim", P.dim()}, {"facets", facets}};
}

Polytope polytope_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("facets"))
    throw StructuralError("polytope JSON needs \"dim\" and \"facets\"");
  int dim = j.at("dim").get<int>();
  std::vector<Facet> facets;
  for (const auto& fj : j.at("facets")) {
    Facet f;
    for (const auto& v : fj.at("normal")) f.normal.push_back(v.get<long long>());
    f.offset = rational_from_json(fj.at("offset"));
    facets.push_back(std::move(f));
  }
  return Polytope(dim, std::move(facets));
}

json pl_to_json(const PiecewiseLinearFn& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces()) {
    json a = json::array();
    for (const auto& aj : p.a) a.push_back(rational_to_json(aj));
    pieces.push_back({{"a", a}, {"c", rational_to_json(p.c)}});
  }
  return {{"pieces", pieces}};
}

PiecewiseLinearFn pl_from_json(const json& j) {
  if (!j.contains("pieces"))
    throw StructuralError("piecewise-linear JSON needs \"pieces\"");
  std::vector<AffinePiece> pieces;
  for (const auto& pj : j.at("pieces")) {
    AffinePiece p;
    for (const auto& aj : pj.at("a")) p.a.push_back(rational_from_json(aj));
    p.c = rational_from_json(pj.at("c"));
    pieces.push_back(std::move(p));
  }
  return PiecewiseLinearFn(std::move(pieces));
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  if (!j.contains("polytope") || !j.contains("direction") || !j.contains("K"))
    throw StructuralError("config needs \"polytope\", \"direction\" and \"K\"");
  cfg.P = std::make_shared<Polytope>(polytope_from_json(j.at("polytope")));
  cfg.f = std::make_shared<PiecewiseLinearFn>(pl_from_json(j.at("direction")));
  cfg.K = rational_from_json(j.at("K"));
  cfg.k_max = j.value("k_max", cfg.k_max);
  cfg.t_max = j.value("t_max", cfg.t_max);
  cfg.grid = j.value("grid", cfg.grid);
  cfg.window = j.value("window", cfg.window);
  if (cfg.k_max < 1 || cfg.grid < 8 || cfg.t_max < 0 || cfg.window <= 0)
    throw StructuralError("config knob outside the documented range");
  if (cfg.f->dim() != cfg.P->dim())
    throw StructuralError("direction dimension does not match the polytope");
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  return {{"polytope", polytope_to_json(*cfg.P)},
          {"direction", pl_to_json(*cfg.f)},
          {"K", rational_to_json(cfg.K)},
          {"k_max", cfg.k_max},
          {"t_max", cfg.t_max},
          {"grid", cfg.grid},
          {"window", cfg.window}};
}

namespace {

Eigen::MatrixXcd matrix_from_json(const json& j, int n) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  const json& re = j.at("re");
  if ((int)re.size() != n) throw StructuralError("matrix \"re\" has wrong shape");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) M(r, c) = re.at(r).at(c).get<double>();
  if (j.contains("im")) {
    const json& im = j.at("im");
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        M(r, c) += std::complex<double>(0.0, im.at(r).at(c).get<double>());
  }
  return M;
}

json matrix_to_json(const Eigen::MatrixXcd& M) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < M.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (int c = 0; c < M.cols(); ++c) {
      rr.push_back(M(r, c).real());
      ri.push_back(M(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

std::vector<std::pair<int, Eigen::MatrixXcd>> modes_from_json(const json& j,
                                                              int n) {
  std::vector<std::pair<int, Eigen::MatrixXcd>> out;
  for (const auto& mj : j)
    out.emplace_back(mj.at("mode").get<int>(), matrix_from_json(mj, n));
  return out;
}

}  // namespace

RHProblem rh_problem_from_json(const json& j) {
  RHProblem prob;
  if (!j.contains("n")) throw StructuralError("RH problem needs \"n\"");
  prob.n = j.at("n").get<int>();
  if (prob.n < 1) throw StructuralError("RH dimension must be >= 1");
  if (j.contains("S")) prob.S_modes = modes_from_json(j.at("S"), prob.n);
  if (j.contains("A")) prob.A_modes = modes_from_json(j.at("A"), prob.n);
  return prob;
}

json rh_problem_to_json(const RHProblem& prob) {
  json S = json::array(), A = json::array();
  for (const auto& [k, M] : prob.S_modes) {
    json mj = matrix_to_json(M);
    mj["mode"] = k;
    S.push_back(mj);
  }
  for (const auto& [k, M] : prob.A_modes) {
    json mj = matrix_to_json(M);
    mj["mode"] = k;
    A.push_back(mj);
  }
  return {{"n", prob.n}, {"S", S}, {"A", A}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw StructuralError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace toric
