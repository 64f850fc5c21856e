#include "thinob/report.hpp"

#include <cmath>
#include <cstdio>

#include "thinob/errors.hpp"

namespace thinob {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw InvalidParameter("report value is not finite");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // keep a float recognisable as one after a round trip
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

nlohmann::json to_json(const MajorantReport& r) {
  nlohmann::json j;
  j["kind"] = to_string(r.kind);
  j["notation"] = notation(r.kind);
  j["value"] = r.value;
  j["terms"] = nlohmann::json::object();
  for (const auto& [k, v] : r.terms) j["terms"][k] = v;
  j["parameters"] = nlohmann::json::object();
  for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
  j["constants_used"] = nlohmann::json::object();
  for (const auto& [id, c] : r.constants_used) {
    j["constants_used"][to_string(id)] = {{"value", c.value}, {"provenance", to_string(c.provenance)}, {"source", c.source}};
  }
  if (r.exact_error) {
    j["exact_error"] = *r.exact_error;
    j["bound_holds"] = r.value >= *r.exact_error - r.quadrature_slack;
  }
  if (r.efficiency_index) j["efficiency_index"] = *r.efficiency_index;
  j["quadrature_slack"] = r.quadrature_slack;
  j["quadrature"] = {{"elements", r.quadrature.elements},
                     {"sub_triangles", r.quadrature.sub_triangles},
                     {"max_grading_depth", r.quadrature.max_grading_depth}};
  return j;
}

namespace {

void quote(std::string& out, const std::string& s) {
  out += nlohmann::json(s).dump();
}

void emit(std::string& out, const nlohmann::json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      // object_t is an ordered std::map, so iteration is already sorted
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        quote(out, it.key());
        out += ": ";
        emit(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += inner;
        emit(out, j[k], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string write_report(const nlohmann::json& j) {
  std::string out;
  emit(out, j, 0);
  out += "\n";
  return out;
}

std::string terms_csv(const std::vector<MajorantReport>& reports) {
  std::string out = "kind,term,value\n";
  for (const MajorantReport& r : reports) {
    const std::string kind = to_string(r.kind);
    out += kind + ",value," + format_double(r.value) + "\n";
    for (const auto& [k, v] : r.terms) out += kind + "," + k + "," + format_double(v) + "\n";
    for (const auto& [k, v] : r.parameters) out += kind + "," + k + "," + format_double(v) + "\n";
    if (r.exact_error) out += kind + ",exact_error," + format_double(*r.exact_error) + "\n";
    if (r.efficiency_index) out += kind + ",efficiency_index," + format_double(*r.efficiency_index) + "\n";
  }
  return out;
}

}  // namespace thinob
