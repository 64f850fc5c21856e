#include "thinob/app.hpp"

#include <cmath>
#include <set>

#include "thinob/constants.hpp"
#include "thinob/minimize.hpp"
#include "thinob/paperbench.hpp"
#include "thinob/report.hpp"
#include "thinob/signorini.hpp"

namespace thinob {

using nlohmann::json;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IncompleteConstants*>(&e)) return exit_missing_constant;
  if (dynamic_cast<const InvalidParameter*>(&e)) return exit_usage;
  if (dynamic_cast<const json::exception*>(&e)) return exit_usage;
  return exit_evaluation;
}

namespace {

template <class F>
CommandResult guarded(F&& body) {
  CommandResult res;
  try {
    body(res);
  } catch (const std::exception& e) {
    res.exit_code = exit_code_for(e);
    res.report = nullptr;
    res.csv.clear();
    const auto* err = dynamic_cast<const Error*>(&e);
    res.message = std::string(err ? err->code() : "error") + ": " + e.what();
  }
  return res;
}

// ---- config access

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
  }
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key, "must be finite");
  return x;
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError(key, "expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& key) {
  if (!j.is_string()) throw ConfigError(key, "expected a string");
  return j.get<std::string>();
}

QuadratureConfig parse_quadrature(const json& cfg) {
  QuadratureConfig q;
  if (!cfg.contains("quadrature")) return q;
  const json& j = cfg["quadrature"];
  check_keys(j, "quadrature", {"triangle_degree", "segment_nodes", "graded", "level"});
  if (j.contains("triangle_degree")) q.triangle_degree = integer(j["triangle_degree"], "quadrature.triangle_degree");
  if (j.contains("segment_nodes")) q.segment_nodes = integer(j["segment_nodes"], "quadrature.segment_nodes");
  if (j.contains("level")) q.level = integer(j["level"], "quadrature.level");
  if (j.contains("graded")) {
    if (!j["graded"].is_boolean()) throw ConfigError("quadrature.graded", "expected true or false");
    q.graded = j["graded"].get<bool>();
  }
  if (q.triangle_degree < 1 || q.triangle_degree > 40) throw ConfigError("quadrature.triangle_degree", "out of range [1, 40]");
  if (q.segment_nodes < 1 || q.segment_nodes > 64) throw ConfigError("quadrature.segment_nodes", "out of range [1, 64]");
  if (q.level < 0 || q.level > 8) throw ConfigError("quadrature.level", "out of range [0, 8]");
  return q;
}

Polynomial parse_table(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError(key, "expected a list of [i, j, coefficient] terms");
  Polynomial p;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = key + "[" + std::to_string(k) + "]";
    const json& t = j[k];
    if (!t.is_array() || t.size() != 3) throw ConfigError(at, "expected [i, j, coefficient]");
    const int i = integer(t[0], at);
    const int e = integer(t[1], at);
    if (i < 0 || e < 0) throw ConfigError(at, "exponents must be nonnegative");
    p = p + Polynomial::monomial(i, e, number(t[2], at));
  }
  return p;
}

struct Setup {
  bool signorini = false;
  double a = 1.0;
  std::optional<double> eps;
  std::array<double, 4> rect{0.0, 1.0, 0.0, 1.0};
  QuadratureConfig quadrature;
  ScalarFieldPtr v;
  ScalarFieldPtr psi;
  ScalarFieldPtr phi;
  ScalarFieldPtr oracle;
  FluxFieldPtr q;
  MultiplierFieldPtr lambda;
  ConstantSet overrides;
};

ScalarFieldPtr parse_field(const json& j, const std::string& key, const Setup& s) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "v3eps" && !s.eps) throw ConfigError("fields.eps", "v3eps needs eps");
    ScalarFieldPtr f = registry_field(name, s.a, name == "v3eps" ? s.eps : std::nullopt);
    if (!f) throw ConfigError(key, "unknown registry field '" + name + "'");
    return f;
  }
  if (j.is_object()) {
    check_keys(j, key, {"plus", "minus", "both"});
    if (j.contains("both")) return std::make_shared<PolynomialField>(parse_table(j["both"], key + ".both"));
    if (!j.contains("plus")) throw ConfigError(key, "needs 'both' or 'plus'");
    const Polynomial plus = parse_table(j["plus"], key + ".plus");
    const Polynomial minus = j.contains("minus") ? parse_table(j["minus"], key + ".minus") : plus;
    return std::make_shared<PolynomialField>(plus, minus);
  }
  throw ConfigError(key, "expected a registry name or a polynomial table");
}

FluxFieldPtr parse_flux(const json& j, const Setup& s) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "gradient_of_v") return flux_from_gradient(s.v);
    if (name == "gradient_of_u") {
      if (!s.oracle) throw ConfigError("flux", "gradient_of_u needs fields.oracle");
      return flux_from_gradient(s.oracle);
    }
    return flux_from_gradient(parse_field(j, "flux", s));
  }
  if (j.is_object()) {
    check_keys(j, "flux", {"plus", "minus"});
    auto comps = [&](const json& side, const std::string& key) {
      check_keys(side, key, {"q1", "q2"});
      std::array<Polynomial, 2> c{};
      if (side.contains("q1")) c[0] = parse_table(side["q1"], key + ".q1");
      if (side.contains("q2")) c[1] = parse_table(side["q2"], key + ".q2");
      return c;
    };
    if (!j.contains("plus")) throw ConfigError("flux", "needs 'plus'");
    const auto plus = comps(j["plus"], "flux.plus");
    const auto minus = j.contains("minus") ? comps(j["minus"], "flux.minus") : plus;
    return std::make_shared<PolynomialFlux>(plus, minus);
  }
  throw ConfigError("flux", "expected gradient_of_v, gradient_of_u, a registry name or component tables");
}

MultiplierFieldPtr parse_lambda(const json& cfg, const Setup& s) {
  const json j = cfg.contains("lambda") ? cfg["lambda"] : json("clip_jump");
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "clip_jump") {
      return s.signorini ? signorini_multiplier_from_flux(s.q, s.rect[2]) : multiplier_from_jump(s.q);
    }
    if (name == "exact") return s.signorini ? signorini_exact_multiplier() : exact_multiplier();
    if (name == "zero") return std::make_shared<PolynomialMultiplier>(Polynomial::constant(0.0));
    throw ConfigError("lambda", "unknown multiplier '" + name + "'");
  }
  if (j.is_object()) {
    check_keys(j, "lambda", {"table"});
    if (!j.contains("table")) throw ConfigError("lambda", "needs 'table'");
    const Polynomial p = parse_table(j["table"], "lambda.table");
    for (const auto& t : p.terms()) {
      if (t.j != 0) throw ConfigError("lambda.table", "a multiplier depends on x1 only");
    }
    return std::make_shared<PolynomialMultiplier>(p);
  }
  throw ConfigError("lambda", "expected clip_jump, exact, zero or {table: ...}");
}

ConstantSet parse_constants(const json& cfg) {
  ConstantSet out;
  if (!cfg.contains("constants")) return out;
  const json& j = cfg["constants"];
  if (!j.is_object()) throw ConfigError("constants", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = "constants." + it.key();
    const auto id = constant_from_string(it.key());
    if (!id) throw ConfigError(key, "unknown constant");
    Constant c;
    c.provenance = Provenance::user_supplied;
    if (it.value().is_object()) {
      check_keys(it.value(), key, {"value", "source"});
      if (!it.value().contains("value")) throw ConfigError(key, "needs 'value'");
      c.value = number(it.value()["value"], key + ".value");
      if (it.value().contains("source")) c.source = text(it.value()["source"], key + ".source");
    } else {
      c.value = number(it.value(), key);
    }
    if (!(c.value > 0.0)) throw ConfigError(key, "must be positive");
    out.set(*id, c);
  }
  return out;
}

Setup parse_setup(const json& cfg) {
  check_keys(cfg, "", {"problem_type", "geometry", "fields", "flux", "lambda", "constants", "quadrature",
                       "majorant_kinds", "parameters", "iterations", "flux_degree"});
  Setup s;
  const std::string type = cfg.contains("problem_type") ? text(cfg["problem_type"], "problem_type") : "thin_obstacle";
  if (type == "signorini") {
    s.signorini = true;
  } else if (type != "thin_obstacle") {
    throw ConfigError("problem_type", "expected thin_obstacle or signorini");
  }
  if (cfg.contains("geometry")) {
    const json& g = cfg["geometry"];
    check_keys(g, "geometry", {"a", "rectangle"});
    if (g.contains("a")) {
      if (s.signorini) throw ConfigError("geometry.a", "applies to thin_obstacle only");
      s.a = number(g["a"], "geometry.a");
      if (!(s.a > 0.0)) throw ConfigError("geometry.a", "must be positive");
    }
    if (g.contains("rectangle")) {
      if (!s.signorini) throw ConfigError("geometry.rectangle", "applies to signorini only");
      const json& r = g["rectangle"];
      if (!r.is_array() || r.size() != 4) throw ConfigError("geometry.rectangle", "expected [x1_lo, x1_hi, x2_lo, x2_hi]");
      for (std::size_t k = 0; k < 4; ++k) s.rect[k] = number(r[k], "geometry.rectangle");
      if (!(s.rect[1] > s.rect[0] && s.rect[3] > s.rect[2])) throw ConfigError("geometry.rectangle", "empty rectangle");
    }
  }
  s.quadrature = parse_quadrature(cfg);
  if (!cfg.contains("fields")) throw ConfigError("fields", "missing");
  const json& f = cfg["fields"];
  check_keys(f, "fields", {"v", "psi", "phi", "oracle", "eps"});
  if (f.contains("eps")) s.eps = number(f["eps"], "fields.eps");
  if (!f.contains("v")) throw ConfigError("fields.v", "missing");
  s.v = parse_field(f["v"], "fields.v", s);
  s.psi = f.contains("psi") ? parse_field(f["psi"], "fields.psi", s) : zero_field();
  if (f.contains("phi")) {
    s.phi = parse_field(f["phi"], "fields.phi", s);
  } else {
    s.phi = s.signorini ? signorini_exact_field() : exact_field();
  }
  if (f.contains("oracle")) s.oracle = parse_field(f["oracle"], "fields.oracle", s);
  s.q = parse_flux(cfg.contains("flux") ? cfg["flux"] : json("gradient_of_v"), s);
  s.lambda = parse_lambda(cfg, s);
  s.overrides = parse_constants(cfg);
  return s;
}

struct BetaAlpha {
  std::optional<double> beta1;  // nullopt means optimize
  std::optional<double> beta2;
  std::optional<double> alpha;
};

BetaAlpha parse_parameters(const json& cfg) {
  BetaAlpha p{1.0, 1.0, std::nullopt};
  if (!cfg.contains("parameters")) return p;
  const json& j = cfg["parameters"];
  check_keys(j, "parameters", {"beta1", "beta2", "alpha"});
  auto read = [&](const char* name, std::optional<double>& slot, bool unit) {
    if (!j.contains(name)) return;
    const std::string key = std::string("parameters.") + name;
    if (j[name].is_string()) {
      if (j[name].get<std::string>() != "optimize") throw ConfigError(key, "expected a number or \"optimize\"");
      slot = std::nullopt;
      return;
    }
    const double x = number(j[name], key);
    if (unit ? !(x >= 0.0 && x <= 1.0) : !(x > 0.0)) throw ConfigError(key, unit ? "must lie in [0, 1]" : "must be positive");
    slot = x;
  };
  read("beta1", p.beta1, false);
  read("beta2", p.beta2, false);
  read("alpha", p.alpha, true);
  return p;
}

std::vector<MajorantKind> parse_kinds(const json& cfg, bool signorini) {
  if (!cfg.contains("majorant_kinds")) {
    return {signorini ? MajorantKind::signorini : MajorantKind::M};
  }
  const json& j = cfg["majorant_kinds"];
  if (!j.is_array() || j.empty()) throw ConfigError("majorant_kinds", "expected a nonempty list");
  std::vector<MajorantKind> kinds;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string key = "majorant_kinds[" + std::to_string(k) + "]";
    const auto kind = majorant_kind_from_string(text(j[k], key));
    if (!kind) throw ConfigError(key, "unknown majorant kind");
    const bool s_kind = *kind == MajorantKind::signorini || *kind == MajorantKind::signorini_poincare;
    if (s_kind != signorini) throw ConfigError(key, "kind does not match problem_type");
    kinds.push_back(*kind);
  }
  return kinds;
}

ThinObstacleProblem thin_problem(const Setup& s) {
  ThinObstacleProblem p;
  p.domain = build_domain(s.a);
  p.psi = s.psi;
  p.phi = s.phi;
  p.quadrature = s.quadrature;
  return p;
}

SignoriniProblem signorini_problem(const Setup& s) {
  SignoriniProblem p;
  p.domain = build_signorini_domain(s.rect[0], s.rect[1], s.rect[2], s.rect[3]);
  p.psi = s.psi;
  p.phi = s.phi;
  p.quadrature = s.quadrature;
  return p;
}

MajorantReport evaluate_thin(MajorantKind kind, const ThinObstacleProblem& p, const Setup& s, const BetaAlpha& pa,
                             const ConstantSet& c) {
  switch (kind) {
    case MajorantKind::basic: return majorant_basic(p, *s.v, *s.q, *s.lambda, c);
    case MajorantKind::M: return majorant_M(p, *s.v, *s.q, *s.lambda, c);
    case MajorantKind::M12:
    case MajorantKind::M4: {
      if (pa.beta1 && pa.beta2) {
        return kind == MajorantKind::M12 ? majorant_M12(p, *s.v, *s.q, *s.lambda, *pa.beta1, *pa.beta2, c)
                                         : majorant_M4(p, *s.v, *s.q, *pa.beta1, *pa.beta2, c);
      }
      const BetaObjective obj = kind == MajorantKind::M12 ? BetaObjective::M12_with_lambda : BetaObjective::M4;
      return optimize_betas(p, *s.v, *s.q, s.lambda.get(), c, obj).report;
    }
    case MajorantKind::M5: return majorant_M5(p, *s.v, *s.q, *s.lambda, pa.alpha, c, M5Mode::full);
    case MajorantKind::M5_partial: return majorant_M5(p, *s.v, *s.q, *s.lambda, pa.alpha, c, M5Mode::partial);
    default: break;
  }
  throw InternalDefect("unreachable majorant kind");
}

json header(const char* command, const json& config) {
  json r;
  r["schema_version"] = kReportSchemaVersion;
  r["command"] = command;
  r["config"] = config;
  return r;
}

}  // namespace

CommandResult run_reproduce(const ReproduceArgs& args) {
  return guarded([&](CommandResult& res) {
    const auto name = example_from_string(args.example);
    if (!name) throw ConfigError("example", "expected v1, v2 or v3eps");
    const auto flux = flux_choice_from_string(args.flux);
    if (!flux) throw ConfigError("flux", "expected gradient_of_v or gradient_of_u");
    const Reproduction r = reproduce(*name, args.a, args.eps, args.quadrature, *flux);
    json cfg;
    cfg["example"] = args.example;
    cfg["a"] = args.a;
    if (args.eps) cfg["eps"] = *args.eps;
    cfg["flux"] = args.flux;
    cfg["quadrature"] = {{"triangle_degree", args.quadrature.triangle_degree},
                         {"segment_nodes", args.quadrature.segment_nodes},
                         {"graded", args.quadrature.graded},
                         {"level", args.quadrature.level}};
    json rep = header("reproduce", cfg);
    rep["exact_error"] = r.exact_error;
    if (r.example.exact_error_closed_form) rep["exact_error_closed_form"] = *r.example.exact_error_closed_form;
    rep["majorants"] = json::array();
    for (const MajorantReport& m : r.reports) rep["majorants"].push_back(to_json(m));
    if (!r.trend.empty()) {
      json t = json::object();
      for (const auto& [k, v] : r.trend) t[k] = v;
      rep["trend"] = t;
    }
    res.csv = terms_csv(r.reports);
    for (const auto& [k, v] : r.trend) res.csv += "trend," + k + "," + format_double(v) + "\n";
    res.report = std::move(rep);
  });
}

CommandResult run_certify(const json& config) {
  return guarded([&](CommandResult& res) {
    const Setup s = parse_setup(config);
    const BetaAlpha pa = parse_parameters(config);
    const std::vector<MajorantKind> kinds = parse_kinds(config, s.signorini);
    std::vector<MajorantReport> reports;
    std::optional<double> err;
    if (s.signorini) {
      const SignoriniProblem p = signorini_problem(s);
      const ConstantSet c = assemble_signorini_constants(p.domain, s.overrides);
      if (s.oracle) err = energy_error_signorini(*s.v, *s.oracle, p);
      for (MajorantKind k : kinds) {
        reports.push_back(k == MajorantKind::signorini ? majorant_signorini(p, *s.v, *s.q, *s.lambda, c)
                                                       : majorant_signorini_poincare(p, *s.v, *s.q, *s.lambda, c));
      }
    } else {
      const ThinObstacleProblem p = thin_problem(s);
      const ConstantSet c = assemble_constants(p.domain, s.overrides);
      if (s.oracle) err = energy_error(*s.v, *s.oracle, p.domain, p.quadrature);
      for (MajorantKind k : kinds) reports.push_back(evaluate_thin(k, p, s, pa, c));
    }
    json rep = header("certify", config);
    if (err) rep["exact_error"] = *err;
    rep["majorants"] = json::array();
    for (MajorantReport& m : reports) {
      if (err) m.attach_exact_error(*err);
      rep["majorants"].push_back(to_json(m));
    }
    res.csv = terms_csv(reports);
    res.report = std::move(rep);
  });
}

CommandResult run_minimize(const json& config, std::optional<int> iterations) {
  return guarded([&](CommandResult& res) {
    const Setup s = parse_setup(config);
    if (s.signorini) throw ConfigError("problem_type", "minimize supports thin_obstacle only");
    if (config.contains("majorant_kinds") || config.contains("parameters")) {
      throw ConfigError(config.contains("parameters") ? "parameters" : "majorant_kinds",
                        "not used by minimize; the functional is M4 with optimized betas");
    }
    MinimizationOptions opt;
    if (config.contains("iterations")) opt.iterations = integer(config["iterations"], "iterations");
    if (iterations) opt.iterations = *iterations;
    if (config.contains("flux_degree")) opt.flux_degree = integer(config["flux_degree"], "flux_degree");
    if (opt.iterations < 1) throw ConfigError("iterations", "must be >= 1");
    if (opt.flux_degree < 0 || opt.flux_degree > 6) throw ConfigError("flux_degree", "out of range [0, 6]");
    const ThinObstacleProblem p = thin_problem(s);
    const ConstantSet c = assemble_constants(p.domain, s.overrides);
    MinimizationResult m = minimize_majorant(p, s.v, s.q, c, opt);
    std::optional<double> err;
    if (s.oracle) {
      err = energy_error(*s.v, *s.oracle, p.domain, p.quadrature);
      m.report.attach_exact_error(*err);
    }
    json rep = header("minimize", config);
    rep["iterations"] = opt.iterations;
    rep["initial_value"] = m.initial_value;
    if (err) rep["exact_error"] = *err;
    json hist = json::array();
    res.csv = "iteration,value,flux_step_accepted\n0," + format_double(m.initial_value) + ",\n";
    for (std::size_t k = 0; k < m.history.size(); ++k) {
      hist.push_back({{"iteration", k + 1}, {"value", m.history[k]}, {"flux_step_accepted", m.flux_step_accepted[k]}});
      res.csv += std::to_string(k + 1) + "," + format_double(m.history[k]) + "," +
                 (m.flux_step_accepted[k] ? "true" : "false") + "\n";
    }
    rep["history"] = hist;
    rep["final"] = to_json(m.report);
    rep["final"]["flux"] = m.flux->describe();
    res.report = std::move(rep);
  });
}

}  // namespace thinob
