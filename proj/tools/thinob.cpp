// thinob: error majorants for thin obstacle and Signorini problems.
//
//   thinob reproduce --example v1 --a 1 [--eps E] [--flux gradient_of_u] --out r.json
//   thinob certify case.json --out r.json
//   thinob minimize case.json --iterations 10 --out r.json
//
// The report goes to --out (stdout if absent) and the term table to the same
// path with a .csv extension. Timing is printed on stderr so that reports
// stay byte-identical across runs.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "thinob/app.hpp"
#include "thinob/report.hpp"

namespace {

struct QuadFlags {
  int triangle_degree = 12;
  int segment_nodes = 16;
  int level = 2;
  bool no_grading = false;
};

void add_quad_flags(CLI::App* cmd, QuadFlags& q) {
  cmd->add_option("--triangle-degree", q.triangle_degree, "Exactness degree of the triangle rule")
      ->check(CLI::Range(1, 40));
  cmd->add_option("--segment-nodes", q.segment_nodes, "Gauss nodes per manifold segment")->check(CLI::Range(1, 64));
  cmd->add_option("--level", q.level, "Uniform refinement level of the base mesh")->check(CLI::Range(0, 8));
  cmd->add_flag("--no-grading", q.no_grading, "Disable geometric grading toward singular points");
}

bool write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  f << body;
  return static_cast<bool>(f);
}

int finish(const thinob::CommandResult& res, const std::string& out) {
  if (res.exit_code != thinob::exit_ok) {
    std::cerr << "thinob: " << res.message << "\n";
    return res.exit_code;
  }
  const std::string body = thinob::write_report(res.report);
  if (out.empty()) {
    std::cout << body;
    return thinob::exit_ok;
  }
  std::filesystem::path csv(out);
  csv.replace_extension(".csv");
  if (!write_file(out, body) || !write_file(csv, res.csv)) {
    std::cerr << "thinob: cannot write " << out << "\n";
    return thinob::exit_usage;
  }
  return thinob::exit_ok;
}

int load_config(const std::string& path, nlohmann::json& cfg) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "thinob: cannot open config " << path << "\n";
    return thinob::exit_usage;
  }
  try {
    cfg = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "thinob: config " << path << " does not parse: " << e.what() << "\n";
    return thinob::exit_usage;
  }
  return thinob::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guaranteed error majorants for thin obstacle and Signorini problems"};
  app.require_subcommand(1);
  std::string out;

  thinob::ReproduceArgs rep;
  QuadFlags rq;
  double eps = 0.0;
  auto* reproduce = app.add_subcommand("reproduce", "Evaluate one of the worked example families");
  reproduce->add_option("--example", rep.example, "v1, v2 or v3eps")->check(CLI::IsMember({"v1", "v2", "v3eps"}));
  reproduce->add_option("--a", rep.a, "Half width of the square domain");
  auto* eps_opt = reproduce->add_option("--eps", eps, "Family parameter of v3eps, in (0, a)");
  reproduce->add_option("--flux", rep.flux, "gradient_of_v or gradient_of_u")
      ->check(CLI::IsMember({"gradient_of_v", "gradient_of_u"}));
  reproduce->add_option("--out", out, "Report path");
  add_quad_flags(reproduce, rq);

  std::string config_path;
  auto* certify = app.add_subcommand("certify", "Evaluate the majorants requested by a case config");
  certify->add_option("config", config_path, "Case config (JSON)")->required();
  certify->add_option("--out", out, "Report path");

  int iterations = 10;
  auto* minimize = app.add_subcommand("minimize", "Minimize the majorant over fluxes and parameters");
  minimize->add_option("config", config_path, "Case config (JSON)")->required();
  auto* iter_opt = minimize->add_option("--iterations", iterations, "Outer iterations")->check(CLI::PositiveNumber);
  minimize->add_option("--out", out, "Report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? thinob::exit_ok : thinob::exit_usage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  thinob::CommandResult res;
  if (*reproduce) {
    if (*eps_opt) rep.eps = eps;
    rep.quadrature.triangle_degree = rq.triangle_degree;
    rep.quadrature.segment_nodes = rq.segment_nodes;
    rep.quadrature.level = rq.level;
    rep.quadrature.graded = !rq.no_grading;
    res = thinob::run_reproduce(rep);
  } else {
    nlohmann::json cfg;
    if (const int rc = load_config(config_path, cfg); rc != thinob::exit_ok) return rc;
    if (*certify) {
      res = thinob::run_certify(cfg);
    } else {
      res = thinob::run_minimize(cfg, *iter_opt ? std::optional<int>(iterations) : std::nullopt);
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "thinob: %s finished in %.3f s\n", app.get_subcommands().front()->get_name().c_str(), seconds);
  return finish(res, out);
}
