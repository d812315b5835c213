// Copyright 2026 The esgames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "esg/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "esg/errors.hpp"
#include "esg/kernels.hpp"

namespace esg::io {

namespace {

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string(what) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

std::string str(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> str_list(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + ": expected an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(str(x, what));
  return out;
}

Mask names_mask(const std::map<std::string, int>& index, const json& j, const char* what) {
  Mask m = 0;
  for (const auto& n : str_list(j, what)) {
    auto it = index.find(n);
    if (it == index.end()) {
      throw FormatError(std::string(what) + ": unknown event '" + n + "'");
    }
    m |= bit(it->second);
  }
  return m;
}

json load(const json& j, const std::string& base_dir) {
  if (j.is_string()) {
    std::string p = j.get<std::string>();
    if (!p.empty() && p[0] != '/') p = base_dir + "/" + p;
    return read_json_file(p);
  }
  return j;
}

json set_list(const Structure& s, std::vector<Mask> sets) {
  kernels::sort_canonical(sets);
  json out = json::array();
  for (Mask m : sets) out.push_back(s.names_of(m));
  return out;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::string dirname(const std::string& path) {
  auto slash = path.rfind('/');
  if (slash == std::string::npos) return ".";
  if (slash == 0) return "/";
  return path.substr(0, slash);
}

Structure structure_from_json(const json& j) {
  const char* what = "structure";
  Kind kind = kind_from_string(str(field(j, "kind", what), what));
  const json& events = field(j, "events", what);
  if (!events.is_array()) throw FormatError("structure: events must be an array");
  std::vector<std::string> names, classes;
  std::vector<Polarity> pol;
  int with_pol = 0;
  for (const auto& e : events) {
    names.push_back(str(field(e, "id", "event"), "event id"));
    classes.push_back(e.contains("class") ? str(e.at("class"), "event class") : names.back());
    if (e.contains("polarity")) {
      std::string p = str(e.at("polarity"), "polarity");
      if (p != "+" && p != "-") throw FormatError("polarity must be \"+\" or \"-\"");
      pol.push_back(p == "+" ? Polarity::kPlus : Polarity::kMinus);
      ++with_pol;
    }
  }
  if (with_pol != 0 && with_pol != static_cast<int>(names.size())) {
    throw FormatError("polarity must be given for every event or none");
  }
  if (names.size() > static_cast<std::size_t>(kMaxEvents)) {
    throw ResourceError("structures are limited to 64 events");
  }
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], static_cast<int>(i)).second) {
      throw FormatError("duplicate event id '" + names[i] + "'");
    }
  }
  auto idx = [&](const json& n) {
    auto it = index.find(str(n, "event reference"));
    if (it == index.end()) throw FormatError("unknown event '" + n.get<std::string>() + "'");
    return it->second;
  };
  std::vector<std::pair<int, int>> causality;
  if (j.contains("causality")) {
    for (const auto& p : j.at("causality")) {
      if (!p.is_array() || p.size() != 2) throw FormatError("causality pairs need two ids");
      causality.emplace_back(idx(p[0]), idx(p[1]));
    }
  }
  std::vector<Enabling> enablings;
  if (j.contains("enablings")) {
    for (const auto& en : j.at("enablings")) {
      enablings.push_back({names_mask(index, field(en, "set", "enabling"), "enabling set"),
                           idx(field(en, "event", "enabling"))});
    }
  }
  if (kind != Kind::kGeneral && !enablings.empty()) {
    throw FormatError("only general structures have enablings");
  }
  if (kind == Kind::kGeneral && !causality.empty()) {
    throw FormatError("general structures have enablings, not causality");
  }
  Consistency c;
  if (j.contains("conflicts") && j.contains("consistent")) {
    throw FormatError("give either conflicts or consistent, not both");
  }
  if (j.contains("consistent")) {
    c.explicit_form = true;
    for (const auto& x : j.at("consistent")) c.sets.push_back(names_mask(index, x, "consistent set"));
  } else if (j.contains("conflicts")) {
    for (const auto& x : j.at("conflicts")) c.sets.push_back(names_mask(index, x, "conflict"));
  }
  std::optional<std::vector<Polarity>> p;
  if (with_pol) p = pol;
  return Structure::make(kind, names, causality, enablings, c, classes, p);
}

json structure_to_json(const Structure& s) {
  json j;
  j["kind"] = to_string(s.kind());
  json events = json::array();
  for (int e = 0; e < s.size(); ++e) {
    json ev{{"id", s.name(e)}};
    if (s.class_label(e) != s.name(e)) ev["class"] = s.class_label(e);
    if (s.has_polarity()) ev["polarity"] = s.pol(e) == Polarity::kPlus ? "+" : "-";
    events.push_back(ev);
  }
  j["events"] = events;
  if (s.kind() == Kind::kGeneral) {
    std::vector<std::pair<Mask, int>> ens;
    for (const auto& en : s.enablings()) ens.emplace_back(en.set, en.event);
    std::sort(ens.begin(), ens.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second < b.second;
      return canonical_less(a.first, b.first);
    });
    json out = json::array();
    for (auto [m, e] : ens) out.push_back({{"set", s.names_of(m)}, {"event", s.name(e)}});
    j["enablings"] = out;
  } else {
    auto cov = s.covers();
    std::sort(cov.begin(), cov.end());
    json out = json::array();
    for (auto [a, b] : cov) out.push_back({s.name(a), s.name(b)});
    j["causality"] = out;
  }
  if (s.consistency().explicit_form) {
    j["consistent"] = set_list(s, s.consistency().sets);
  } else {
    j["conflicts"] = set_list(s, s.consistency().sets);
  }
  return j;
}

StructMap map_from_json(const json& j, const std::string& base_dir) {
  Structure src = structure_from_json(load(field(j, "source", "map"), base_dir));
  Structure tgt = structure_from_json(load(field(j, "target", "map"), base_dir));
  const json& m = field(j, "mapping", "map");
  if (!m.is_object()) throw FormatError("map: mapping must be an object");
  std::vector<int> mapping(src.size(), -1);
  for (const auto& [k, v] : m.items()) {
    auto s = src.index_of(k);
    if (!s) throw FormatError("map: unknown source event '" + k + "'");
    if (v.is_null()) continue;
    auto t = tgt.index_of(str(v, "map target"));
    if (!t) throw FormatError("map: unknown target event '" + v.get<std::string>() + "'");
    mapping[*s] = *t;
  }
  return {src, tgt, mapping};
}

json mapping_to_json(const StructMap& f) {
  json m = json::object();
  for (int e = 0; e < f.source.size(); ++e) {
    m[f.source.name(e)] = f.defined(e) ? json(f.target.name(f.mapping[e])) : json(nullptr);
  }
  return m;
}

json map_to_json(const StructMap& f) {
  return {{"source", structure_to_json(f.source)},
          {"target", structure_to_json(f.target)},
          {"mapping", mapping_to_json(f)}};
}

Family family_from_json(const json& j) {
  auto carrier = str_list(field(j, "carrier", "family"), "carrier");
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < carrier.size(); ++i) index[carrier[i]] = static_cast<int>(i);
  std::vector<Mask> configs;
  for (const auto& c : field(j, "configs", "family")) {
    configs.push_back(names_mask(index, c, "family configuration"));
  }
  std::vector<std::string> classes = carrier;
  if (j.contains("classes")) {
    std::vector<int> seen(carrier.size(), 0);
    for (const auto& cls : j.at("classes")) {
      auto members_of = str_list(cls, "class");
      if (members_of.empty()) throw FormatError("empty equivalence class");
      std::string label = *std::min_element(members_of.begin(), members_of.end());
      for (const auto& n : members_of) {
        auto it = index.find(n);
        if (it == index.end()) throw FormatError("class mentions unknown event '" + n + "'");
        if (seen[it->second]++) throw FormatError("event '" + n + "' in two classes");
        classes[it->second] = label;
      }
    }
  }
  return Family::make(carrier, configs, classes);
}

json family_to_json(const Family& f) {
  json j;
  j["carrier"] = f.carrier();
  json cs = json::array();
  for (Mask x : f.configs()) cs.push_back(f.names_of(x));
  j["configs"] = cs;
  std::map<std::string, std::vector<std::string>> by_label;
  for (int e = 0; e < f.size(); ++e) by_label[f.class_labels()[e]].push_back(f.name(e));
  json classes = json::array();
  std::vector<std::vector<std::string>> groups;
  for (auto& [label, members_of] : by_label) {
    if (members_of.size() > 1) groups.push_back(members_of);
  }
  std::sort(groups.begin(), groups.end());
  for (auto& g : groups) classes.push_back(g);
  if (!classes.empty()) j["classes"] = classes;
  return j;
}

Realisation realisation_from_json(const json& j, const Family& f) {
  auto elements = str_list(field(j, "elements", "realisation"), "elements");
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!index.emplace(elements[i], static_cast<int>(i)).second) {
      throw FormatError("duplicate realisation element '" + elements[i] + "'");
    }
  }
  std::vector<std::pair<int, int>> order;
  if (j.contains("order")) {
    for (const auto& p : j.at("order")) {
      if (!p.is_array() || p.size() != 2) throw FormatError("order pairs need two elements");
      auto a = index.find(str(p[0], "order")), b = index.find(str(p[1], "order"));
      if (a == index.end() || b == index.end()) throw FormatError("order mentions unknown element");
      order.emplace_back(a->second, b->second);
    }
  }
  const json& label = field(j, "label", "realisation");
  std::vector<int> labels(elements.size(), -1);
  for (const auto& [k, v] : label.items()) {
    auto it = index.find(k);
    if (it == index.end()) throw FormatError("label mentions unknown element '" + k + "'");
    labels[it->second] = f.require_index(str(v, "label"));
  }
  for (int l : labels) {
    if (l < 0) throw FormatError("every realisation element needs a label");
  }
  return Realisation::make(elements, order, labels);
}

json realisation_to_json(const Realisation& r, const Family& f) {
  json order = json::array();
  auto cov = r.covers();
  std::sort(cov.begin(), cov.end());
  for (auto [a, b] : cov) order.push_back({r.elements()[a], r.elements()[b]});
  json label = json::object();
  for (int e = 0; e < r.size(); ++e) label[r.elements()[e]] = f.name(r.label(e));
  return {{"elements", r.elements()}, {"order", order}, {"label", label}};
}

Strategy strategy_from_json(const json& j, const std::string& base_dir) {
  Structure game = structure_from_json(load(field(j, "game", "strategy"), base_dir));
  Structure inner = structure_from_json(load(field(j, "inner", "strategy"), base_dir));
  const json& m = field(j, "sigma", "strategy");
  std::vector<int> mapping(inner.size(), -1);
  for (const auto& [k, v] : m.items()) {
    auto s = inner.index_of(k);
    if (!s) throw FormatError("sigma: unknown event '" + k + "'");
    auto t = game.index_of(str(v, "sigma target"));
    if (!t) throw FormatError("sigma: unknown game event '" + v.get<std::string>() + "'");
    mapping[*s] = *t;
  }
  return make_strategy(game, inner, mapping);
}

json strategy_to_json(const Strategy& s) {
  return {{"game", structure_to_json(s.game())},
          {"inner", structure_to_json(s.inner())},
          {"sigma", mapping_to_json(s.sigma)}};
}

Valuation valuation_from_json(const json& j, const Structure& s, const Budget& budget) {
  Valuation given;
  std::map<std::string, int> index;
  for (int e = 0; e < s.size(); ++e) index[s.name(e)] = e;
  for (const auto& entry : field(j, "values", "valuation")) {
    Mask x = names_mask(index, field(entry, "config", "valuation entry"), "valuation config");
    const json& val = field(entry, "value", "valuation entry");
    Rational q = val.is_string() ? parse_rational(val.get<std::string>())
                 : val.is_number_integer() ? Rational(val.get<long long>())
                                          : throw FormatError("values are \"num/den\" strings");
    if (given.has(x)) throw FormatError("configuration listed twice in valuation");
    given.set(x, q);
  }
  bool complete = j.value("complete_by_lmc", false);
  return complete ? complete_by_lmc(s, given, budget) : given;
}

json valuation_to_json(const Valuation& v, const Structure& s, bool by_lmc) {
  // The lmc form keeps configurations whose maximal events are all Player;
  // completion recovers the rest.
  auto player_topped = [&](Mask x) {
    for (int e : members(x)) {
      if ((s.up(e) & x) == bit(e) && s.pol(e) == Polarity::kMinus) return false;
    }
    return true;
  };
  std::vector<Mask> xs;
  for (const auto& [x, q] : v.values()) {
    if (!by_lmc || player_topped(x)) xs.push_back(x);
  }
  kernels::sort_canonical(xs);
  json values = json::array();
  for (Mask x : xs) values.push_back({{"config", s.names_of(x)}, {"value", to_string(v.at(x))}});
  return {{"values", values}, {"complete_by_lmc", by_lmc}};
}

json configs_to_json(const Structure& s, const std::vector<Mask>& xs) {
  json out = json::array();
  for (Mask x : xs) out.push_back(s.names_of(x));
  return out;
}

json names_to_json(const std::vector<std::string>& names) { return names; }

}  // namespace esg::io
