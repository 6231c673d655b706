#include "driftlab/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace driftlab {

using nlohmann::json;

json tool_stamp() { return json{{"name", kToolName}, {"version", kToolVersion}}; }

json to_json(const GroupElement& g) {
  return json::array({json::array({g.a, g.b}), json::array({g.c, g.d})});
}

GroupElement group_element_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2)
    throw std::invalid_argument("group element: expected [[a,b],[c,d]]");
  return make_group_element(j[0][0].get<std::int64_t>(), j[0][1].get<std::int64_t>(),
                            j[1][0].get<std::int64_t>(), j[1][1].get<std::int64_t>());
}

json to_json(const Measure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms) atoms.push_back(json{{"g", to_json(a.g)}, {"p", a.p}});
  return json{{"atoms", atoms}};
}

Measure measure_from_json(const json& j) {
  if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty())
    throw std::invalid_argument("measure: expected {\"atoms\": [...]}");
  Measure mu;
  for (const auto& a : j["atoms"]) {
    if (!a.contains("g") || !a.contains("p"))
      throw std::invalid_argument("measure atom: expected {\"g\":..., \"p\":...}");
    mu.atoms.push_back(MeasureAtom{group_element_from_json(a["g"]), a["p"].get<double>()});
  }
  return validate(mu);
}

json to_json(const FlatTorusPoint& x) {
  json j{{"model", "flat"}, {"tau", json::array({x.tau.real(), x.tau.imag()})}};
  if (x.marking_exact) j["marking"] = to_json(x.marking);
  return j;
}

json to_json(const FrickePoint& x) {
  auto tr = x.traces();
  json j{{"model", "fricke"}, {"traces", json::array({tr[0], tr[1], tr[2]})}};
  if (x.marking_exact) j["marking"] = to_json(x.marking);
  return j;
}

json to_json(const Slope& s) { return to_string(s); }

json to_json(const DriftEstimate& e) {
  json j{{"mean", e.mean},   {"stderr", e.stderr_},       {"trials", e.trials},
         {"steps", e.steps}, {"orientation", e.orientation}};
  if (!std::isnan(e.opposite_mean)) {
    j["opposite_mean"] = e.opposite_mean;
    j["opposite_stderr"] = e.opposite_stderr;
  }
  return j;
}

json to_json(const SweepReport& r) {
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back(json{{"parameter", p.parameter},
                       {"estimate", to_json(p.estimate)},
                       {"reference", p.reference},
                       {"extra", p.extra},
                       {"verdict", p.verdict}});
  return json{{"kind", r.kind}, {"points", pts}, {"pass", r.pass}, {"note", r.note}};
}

json to_json(const SearchConfig& c) {
  return json{{"max_height", c.max_height},
              {"beam_width", c.beam_width},
              {"stabilization_window", c.stabilization_window}};
}

SearchConfig search_config_from_json(const json& j) {
  SearchConfig c;
  if (j.contains("max_height")) c.max_height = j["max_height"].get<std::int64_t>();
  if (j.contains("beam_width")) c.beam_width = j["beam_width"].get<int>();
  if (j.contains("stabilization_window"))
    c.stabilization_window = j["stabilization_window"].get<int>();
  c.validate();
  return c;
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_json_file: cannot open " + path);
  f << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_json_file: cannot open " + path);
  json j;
  f >> j;
  return j;
}

}  // namespace driftlab
