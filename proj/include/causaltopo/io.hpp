#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "causaltopo/causal_site.hpp"
#include "causaltopo/errors.hpp"
#include "causaltopo/fintop.hpp"
#include "causaltopo/framework.hpp"
#include "causaltopo/minkowski.hpp"
#include "causaltopo/poset.hpp"

namespace causaltopo::io {

using nlohmann::json;

inline json parse_text(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError(origin + ": not valid JSON");
  return j;
}

inline json load_json_text(const std::string& text) { return parse_text(text, "<string>"); }

/// Reads a JSON document from a file, or from stdin when path is "-".
inline json load_json(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return parse_text(ss.str(), "<stdin>");
  }
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

inline std::string id_from(const json& j, const std::string& field) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw SchemaError(field + ": identifiers must be strings or integers");
}

inline std::vector<std::string> id_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw SchemaError(field + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(id_from(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::pair<std::string, std::string>> pair_list(const json& j,
                                                                  const std::string& field) {
  if (!j.is_array()) throw SchemaError(field + ": expected an array of pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) throw SchemaError(at + ": expected a pair");
    out.emplace_back(id_from(j[i][0], at + "[0]"), id_from(j[i][1], at + "[1]"));
  }
  return out;
}

inline const json& need(const json& j, const std::string& key, const std::string& origin) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(origin + ": missing field '" + key + "'");
  return j.at(key);
}

// --- poset ---------------------------------------------------------------

inline Poset poset_from_json(const json& j, const std::string& origin = "poset") {
  auto elements = id_list(need(j, "elements", origin), origin + ".elements");
  auto covers = pair_list(need(j, "covers", origin), origin + ".covers");
  return Poset::from_cover(std::move(elements), covers);
}

inline json poset_to_json(const Poset& p) {
  json j;
  j["elements"] = p.elements();
  json covers = json::array();
  for (const auto& [a, b] : p.covers()) covers.push_back({a, b});
  j["covers"] = std::move(covers);
  return j;
}

// --- causal site ----------------------------------------------------------

struct SiteData {
  Poset inclusion;
  std::vector<std::pair<std::string, std::string>> causal;
};

inline SiteData site_from_json(const json& j) {
  SiteData d{poset_from_json(need(j, "inclusion", "site"), "site.inclusion"),
             pair_list(need(j, "causal", "site"), "site.causal")};
  for (const auto& [a, b] : d.causal) {
    if (!d.inclusion.contains(a)) throw SchemaError("site.causal: unknown region '" + a + "'");
    if (!d.inclusion.contains(b)) throw SchemaError("site.causal: unknown region '" + b + "'");
  }
  return d;
}

inline json site_to_json(const CausalSite& s) {
  json j;
  j["inclusion"] = poset_to_json(s.inclusion());
  json causal = json::array();
  for (const auto& [a, b] : s.causal_pairs()) causal.push_back({a, b});
  j["causal"] = std::move(causal);
  return j;
}

inline json axiom_report_to_json(const AxiomReport& r) {
  json j;
  j["passed"] = r.passed;
  json vs = json::array();
  for (const auto& v : r.violations) {
    json e;
    e["axiom"] = v.axiom;
    e["witness"] = v.witness;
    vs.push_back(std::move(e));
  }
  j["violations"] = std::move(vs);
  return j;
}

// --- framework --------------------------------------------------------------

inline Framework framework_from_json(const json& j) {
  auto places = id_list(need(j, "places", "framework"), "framework.places");
  const json& fr = need(j, "framology", "framework");
  if (!fr.is_array()) throw SchemaError("framework.framology: expected an array");
  std::vector<std::vector<std::string>> members;
  for (std::size_t i = 0; i < fr.size(); ++i)
    members.push_back(id_list(fr[i], "framework.framology[" + std::to_string(i) + "]"));
  return Framework::from_names(std::move(places), members);
}

inline json framework_to_json(const Framework& f) {
  json j;
  j["places"] = f.places();
  json fr = json::array();
  for (const auto& m : f.framology()) fr.push_back(f.names_of(m));
  j["framology"] = std::move(fr);
  return j;
}

// --- topology ---------------------------------------------------------------

inline FiniteTopSpace topology_from_json(const json& j) {
  auto points = id_list(need(j, "points", "topology"), "topology.points");
  const json& sb = need(j, "closed_subbase", "topology");
  if (!sb.is_array()) throw SchemaError("topology.closed_subbase: expected an array");
  std::vector<std::vector<std::string>> subbase;
  for (std::size_t i = 0; i < sb.size(); ++i)
    subbase.push_back(id_list(sb[i], "topology.closed_subbase[" + std::to_string(i) + "]"));
  return space_from_names(std::move(points), subbase);
}

inline json topology_to_json(const FiniteTopSpace& s) {
  json j;
  j["points"] = s.points();
  json sb = json::array();
  for (const auto& m : s.closed_subbase()) sb.push_back(s.names_of(m));
  j["closed_subbase"] = std::move(sb);
  return j;
}

// --- events -----------------------------------------------------------------

inline EventSet events_from_json(const json& j) {
  const json& dj = need(j, "dim", "events");
  if (!dj.is_number_integer()) throw SchemaError("events.dim: expected 2 or 4");
  const int dim = dj.get<int>();
  const json& ev = need(j, "events", "events");
  if (!ev.is_array()) throw SchemaError("events.events: expected an array");
  std::vector<Event> events;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const std::string at = "events.events[" + std::to_string(i) + "]";
    if (!ev[i].is_array()) throw SchemaError(at + ": expected an integer tuple");
    Event e;
    for (std::size_t k = 0; k < ev[i].size(); ++k) {
      if (!ev[i][k].is_number_integer())
        throw SchemaError(at + "[" + std::to_string(k) + "]: coordinates must be integers");
      e.push_back(ev[i][k].get<long long>());
    }
    events.push_back(std::move(e));
  }
  return EventSet::make(dim, std::move(events));
}

inline json events_to_json(const EventSet& s) {
  json j;
  j["dim"] = s.dim();
  json ev = json::array();
  for (const auto& e : s.events()) ev.push_back(e);
  j["events"] = std::move(ev);
  return j;
}

/// Canonical serialization: two-space indent, keys sorted (nlohmann objects
/// are ordered maps), trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace causaltopo::io
