#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "toric/foliation.hpp"
#include "toric/geodesic.hpp"
#include "toric/invariants.hpp"
#include "toric/serialize.hpp"

namespace fs = std::filesystem;
using namespace toric;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitConsistency = 3;
constexpr int kExitIdentity = 4;

int thread_cap() {
  if (const char* env = std::getenv("TORIC_GEODESIC_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void write_text(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot write " + path.string());
  out << content;
}

// Minimal standalone SVG line plot; data embedded as a comment for diffing.
std::string svg_plot(const std::string& title,
                     const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  const int W = 640, H = 480, M = 50;
  double x0 = xs.front(), x1 = xs.front(), y0 = ys.front(), y1 = ys.front();
  for (double x : xs) x0 = std::min(x0, x), x1 = std::max(x1, x);
  for (double y : ys) y0 = std::min(y0, y), y1 = std::max(y1, y);
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\">\n<!-- data\n";
  for (size_t i = 0; i < xs.size(); ++i)
    os << fmt(xs[i]) << "," << fmt(ys[i]) << "\n";
  os << "-->\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\">" << title
     << "</text>\n<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (size_t i = 0; i < xs.size(); ++i) {
    double px = M + (xs[i] - x0) / (x1 - x0) * (W - 2 * M);
    double py = H - M - (ys[i] - y0) / (y1 - y0) * (H - 2 * M);
    os << fmt(px) << "," << fmt(py) << " ";
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

ExperimentConfig load_config(const std::string& path) {
  return config_from_json(load_json_file(path));
}

json futaki_report(const ExperimentConfig& cfg) {
  json report;
  try {
    FutakiExpansion fe = futaki_expansion(*cfg.P, *cfg.f, cfg.K, cfg.k_max);
    report["method"] = "exact";
    report["F0"] = rational_to_json(fe.F0);
    report["F1"] = rational_to_json(fe.F1);
    report["F2"] = rational_to_json(fe.F2);
    report["fit"] = {{"F0", fe.fit_F0}, {"F1", fe.fit_F1}, {"F2", fe.fit_F2}};
    json table = json::array();
    for (size_t i = 0; i < fe.data.d.size(); ++i) {
      double k = double(i + 1);
      table.push_back({{"k", i + 1},
                       {"d", fe.data.d[i]},
                       {"w", fe.data.w[i]},
                       {"F", double(fe.data.w[i]) / (k * double(fe.data.d[i]))}});
    }
    report["table"] = table;
  } catch (const ConsistencyError&) {
    // Non-polynomial counts (non-integral lifted polytope): least-squares fit.
    HilbertData data = hilbert_data(*cfg.P, *cfg.f, cfg.K, std::max(cfg.k_max, 6));
    const int M = (int)data.d.size();
    Eigen::MatrixXd X(M, 3);
    Eigen::VectorXd y(M);
    for (int i = 0; i < M; ++i) {
      double k = i + 1.0;
      X(i, 0) = 1.0;
      X(i, 1) = 1.0 / k;
      X(i, 2) = 1.0 / (k * k);
      y(i) = double(data.w[i]) / (k * double(data.d[i]));
    }
    Eigen::Vector3d beta = X.colPivHouseholderQr().solve(y);
    report["method"] = "fit";
    report["F0"] = beta(0);
    report["F1"] = beta(1);
    report["F2"] = beta(2);
  }
  return report;
}

int cmd_futaki(const std::string& config, const std::string& out, int k_max) {
  ExperimentConfig cfg = load_config(config);
  if (k_max > 0) cfg.k_max = k_max;
  json report = futaki_report(cfg);
  std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) write_text(fs::path(out) / "futaki.json", text);
  return kExitOk;
}

int cmd_compare(const std::string& config, const std::string& out, bool flip) {
  ExperimentConfig cfg = load_config(config);
  ComparisonReport rep = compare_futaki_yen(*cfg.P, *cfg.f, cfg.K, flip);
  json j = {{"F1", rational_to_json(rep.F1)},
            {"yen_closed", rational_to_json(rep.yen_closed)},
            {"yen_numeric", rep.yen_numeric},
            {"vol", rational_to_json(rep.volume)},
            {"identity_residual", rep.identity_residual},
            {"pass", rep.pass}};
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) write_text(fs::path(out) / "compare.json", text);
  return rep.pass ? kExitOk : kExitIdentity;
}

int cmd_yen(const std::string& config, const std::string& out, double t_max) {
  ExperimentConfig cfg = load_config(config);
  if (t_max > 0) cfg.t_max = t_max;
  if (cfg.P->dim() != 1)
    throw PreconditionError("yen command implemented for dim-1 configurations");
  GeodesicRay ray = algebraic_initial_ray(cfg.P, cfg.f, cfg.K);
  YenEstimate est = yen_invariant(ray, std::max(1, int(cfg.t_max)));
  json series = json::array();
  for (const auto& [t, v] : est.series) series.push_back({{"t", t}, {"dEdt", v}});
  json j = {{"series", series},
            {"limit", est.limit},
            {"closed_form", rational_to_json(est.closed_form)},
            {"converged", est.converged}};
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) write_text(fs::path(out) / "yen.json", text);
  return kExitOk;
}

int cmd_ray(const std::string& config, const std::string& out,
            std::vector<double> t_list, double t_max, int grid) {
  ExperimentConfig cfg = load_config(config);
  if (t_max > 0) cfg.t_max = t_max;
  if (grid > 0) cfg.grid = grid;
  if (cfg.P->dim() != 1)
    throw PreconditionError("ray command implemented for dim-1 configurations");
  if (t_list.empty()) t_list = {0.0, cfg.t_max / 2, cfg.t_max};
  GeodesicRay ray = algebraic_initial_ray(cfg.P, cfg.f, cfg.K);

  struct PerT {
    std::vector<double> ys, hs;
  };
  std::vector<PerT> curves(t_list.size());
  const int cap = thread_cap();
  for (size_t base = 0; base < t_list.size(); base += cap) {
    std::vector<std::future<PerT>> tasks;
    for (size_t i = base; i < std::min(t_list.size(), base + cap); ++i) {
      double t = t_list[i];
      tasks.push_back(std::async(std::launch::async, [&, t] {
        ComplexPotential h = complex_ray_potential(ray, t);
        PerT c;
        double lo = -cfg.window, hi = cfg.window + t;
        for (int k = 0; k <= cfg.grid; ++k) {
          double y = lo + (hi - lo) * k / cfg.grid;
          c.ys.push_back(y);
          c.hs.push_back(h.value({y}));
        }
        return c;
      }));
    }
    for (size_t i = base; i < std::min(t_list.size(), base + cap); ++i)
      curves[i] = tasks[i - base].get();
  }
  fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  for (size_t i = 0; i < t_list.size(); ++i) {
    std::ostringstream name;
    name << "ht_t" << t_list[i] << ".svg";
    write_text(dir / name.str(),
               svg_plot("h_t branches, t=" + fmt(t_list[i]), curves[i].ys,
                        curves[i].hs));
  }
  // Window-size sanity: the right edge should sit on the outer branch where
  // the moment coordinate has saturated near the top vertex.
  {
    double t = t_list.back();
    ComplexPotential h = complex_ray_potential(ray, t);
    double b = to_double(cfg.P->box_upper()[0]);
    if (!ray.f->creases_1d(cfg.P->box_lower()[0], cfg.P->box_upper()[0]).empty() &&
        h.deriv1d(cfg.window + t) < b - 0.05)
      std::cerr << "warning: traveling branch reaches the window edge; "
                   "increase window\n";
  }
  GapSeries gaps = parallelism_gap(ray, cfg.K, t_list, cfg.window, cfg.grid);
  std::ostringstream gap_csv;
  gap_csv << "t,gap,increment\n";
  for (size_t i = 0; i < gaps.t.size(); ++i)
    gap_csv << fmt(gaps.t[i]) << "," << fmt(gaps.gap[i]) << ","
            << fmt(gaps.increment[i]) << "\n";
  write_text(dir / "gap.csv", gap_csv.str());
  RayDiagnostics diag = regularity_diagnostics(ray, t_list, cfg.window);
  std::ostringstream reg_csv;
  reg_csv << "t,seg_lo,seg_hi,jump_lo,jump_hi,sup_second,third_sup\n";
  for (const auto& e : diag.entries) {
    if (e.seg_lo.empty()) {
      reg_csv << fmt(e.t) << ",,,,," << fmt(e.sup_second) << ","
              << fmt(e.third_sup) << "\n";
    } else {
      for (size_t s = 0; s < e.seg_lo.size(); ++s)
        reg_csv << fmt(e.t) << "," << fmt(e.seg_lo[s]) << "," << fmt(e.seg_hi[s])
                << "," << fmt(e.jump_lo[s]) << "," << fmt(e.jump_hi[s]) << ","
                << fmt(e.sup_second) << "," << fmt(e.third_sup) << "\n";
    }
  }
  write_text(dir / "regularity.csv", reg_csv.str());
  std::cout << "wrote " << t_list.size() << " branch plots, gap.csv and "
            << "regularity.csv to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_rh(const std::string& problem_path, const std::string& out,
           int truncation) {
  RHProblem prob = rh_problem_from_json(load_json_file(problem_path));
  int N = truncation > 0 ? truncation : std::max(8, 4 * prob.max_mode());
  RHSolution sol = rh_solve(prob, N);
  PairingReport pairing = pairing_invariance(sol.kernel);
  json j = {{"kernel_dim", sol.kernel_dim},
            {"index", sol.index},
            {"truncation", sol.truncation},
            {"pairing_deviation",
             std::max(pairing.max_imaginary, pairing.max_variation)}};
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) write_text(fs::path(out) / "rh.json", text);
  return kExitOk;
}

json example_config_json() {
  return {{"polytope",
           {{"dim", 1},
            {"facets", json::array({{{"normal", {1}}, {"offset", "0"}},
                                    {{"normal", {-1}}, {"offset", "2"}}})}}},
          {"direction",
           {{"pieces", json::array({{{"a", {"0"}}, {"c", "0"}},
                                    {{"a", {"1"}}, {"c", "-1"}}})}}},
          {"K", "1"}};
}

int cmd_example(const std::string& out) {
  fs::path dir = out.empty() ? fs::path("example_out") : fs::path(out);
  fs::create_directories(dir);
  json cfg_json = example_config_json();
  write_text(dir / "config.json", cfg_json.dump(2) + "\n");
  ExperimentConfig cfg = config_from_json(cfg_json);

  json report;
  report["futaki"] = futaki_report(cfg);
  ComparisonReport cmp = compare_futaki_yen(*cfg.P, *cfg.f, cfg.K, false);
  report["compare"] = {{"F1", rational_to_json(cmp.F1)},
                       {"yen_closed", rational_to_json(cmp.yen_closed)},
                       {"yen_numeric", cmp.yen_numeric},
                       {"vol", rational_to_json(cmp.volume)},
                       {"pass", cmp.pass}};
  GeodesicRay ray = algebraic_initial_ray(cfg.P, cfg.f, cfg.K);
  GapSeries gaps = parallelism_gap(ray, cfg.K, {5, 10, 20}, cfg.window, cfg.grid);
  report["gap"] = {{"t", gaps.t}, {"gap", gaps.gap}, {"increment", gaps.increment}};
  RayDiagnostics diag = regularity_diagnostics(ray, {1, 5, 10});
  json reg = json::array();
  for (const auto& e : diag.entries)
    reg.push_back({{"t", e.t},
                   {"seg_lo", e.seg_lo},
                   {"seg_hi", e.seg_hi},
                   {"jump_lo", e.jump_lo},
                   {"jump_hi", e.jump_hi},
                   {"sup_second", e.sup_second}});
  report["regularity"] = reg;
  // Reduced Monge-Ampere residual on a crease-excluded grid.
  {
    auto Phi = [&](double t, double y) {
      return complex_ray_potential(ray, t).value({y});
    };
    ComplexPotential h1 = complex_ray_potential(ray, 1.0);
    auto segs = h1.segments();
    double ystar = segs.empty() ? 0.0 : segs.front().y_lo;
    auto crease = [ystar](double t, double y) {
      double d1 = std::abs(y - ystar);
      double d2 = std::abs(y - (ystar + t));
      return std::min(d1, d2);
    };
    ResidualReport res = geodesic_residual(Phi, 0.5, 3.0, 40, -2.0, 5.0, 40, crease);
    report["hcma_residual"] = res.max_residual;
  }
  std::string text = report.dump(2) + "\n";
  std::cout << text;
  write_text(dir / "example.json", text);
  cmd_ray(
      (dir / "config.json").string(), dir.string(), {0, 5, 10}, -1, -1);
  return cmp.pass ? kExitOk : kExitIdentity;
}

int classify(const std::exception& e) {
  if (dynamic_cast<const ConsistencyError*>(&e)) return kExitConsistency;
  if (dynamic_cast<const ConvexityError*>(&e)) return kExitConsistency;
  if (dynamic_cast<const Error*>(&e)) return kExitConfig;
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric degenerations, geodesic rays and their invariants"};
  app.require_subcommand(1);

  std::string config, out, problem;
  double t_max = -1;
  int k_max = -1, grid = -1, truncation = -1;
  bool flip = false;
  std::vector<double> t_list;

  auto* futaki = app.add_subcommand("futaki", "Hilbert counts and F(k) expansion");
  futaki->add_option("--config", config)->required();
  futaki->add_option("--out", out);
  futaki->add_option("--k-max", k_max);

  auto* ray = app.add_subcommand("ray", "Geodesic ray diagnostics and plots");
  ray->add_option("--config", config)->required();
  ray->add_option("--out", out);
  ray->add_option("--t", t_list, "ray times");
  ray->add_option("--t-max", t_max);
  ray->add_option("--grid", grid);

  auto* yen = app.add_subcommand("yen", "K-energy derivative series and limit");
  yen->add_option("--config", config)->required();
  yen->add_option("--out", out);
  yen->add_option("--t-max", t_max);

  auto* compare = app.add_subcommand("compare", "Futaki vs geometric invariant");
  compare->add_option("--config", config)->required();
  compare->add_option("--out", out);
  compare->add_flag("--flip-weight-sign", flip,
                    "debug: corrupt the weight convention");

  auto* rh = app.add_subcommand("rh", "Riemann-Hilbert boundary problem");
  rh->add_option("--config", problem, "problem JSON file")->required();
  rh->add_option("--out", out);
  rh->add_option("--truncation", truncation);

  auto* example = app.add_subcommand("example", "full worked-example bundle");
  example->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (futaki->parsed()) return cmd_futaki(config, out, k_max);
    if (ray->parsed()) return cmd_ray(config, out, t_list, t_max, grid);
    if (yen->parsed()) return cmd_yen(config, out, t_max);
    if (compare->parsed()) return cmd_compare(config, out, flip);
    if (rh->parsed()) return cmd_rh(problem, out, truncation);
    if (example->parsed()) return cmd_example(out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  }
  return kExitOk;
}
