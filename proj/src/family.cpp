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

#include "esg/family.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "esg/errors.hpp"
#include "esg/kernels.hpp"

namespace esg {

Family Family::make(std::vector<std::string> carrier, std::vector<Mask> configs,
                    std::vector<std::string> classes) {
  const int n = static_cast<int>(carrier.size());
  if (n > kMaxEvents) throw ResourceError("families are limited to 64 events");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return carrier[a] < carrier[b]; });
  for (int i = 1; i < n; ++i) {
    if (carrier[order[i]] == carrier[order[i - 1]]) {
      throw FormatError("duplicate carrier event '" + carrier[order[i]] + "'");
    }
  }
  if (!classes.empty() && static_cast<int>(classes.size()) != n) {
    throw FormatError("class labels do not match carrier");
  }
  std::vector<int> to(n);
  for (int i = 0; i < n; ++i) to[order[i]] = i;
  Family f;
  f.carrier_.resize(n);
  f.classes_.resize(n);
  for (int i = 0; i < n; ++i) {
    f.carrier_[to[i]] = carrier[i];
    f.classes_[to[i]] = classes.empty() ? carrier[i] : classes[i];
  }
  const Mask all = full_mask(n);
  std::set<Mask> seen;
  for (Mask m : configs) {
    if (!subset(m, all)) throw FormatError("configuration mentions unknown event");
    Mask r = 0;
    for (int e : members(m)) r |= bit(to[e]);
    seen.insert(r);
  }
  f.sorted_.assign(seen.begin(), seen.end());
  f.configs_ = f.sorted_;
  kernels::sort_canonical(f.configs_);
  return f;
}

int Family::require_index(const std::string& name) const {
  auto it = std::lower_bound(carrier_.begin(), carrier_.end(), name);
  if (it == carrier_.end() || *it != name) {
    throw FormatError("unknown carrier event '" + name + "'");
  }
  return static_cast<int>(it - carrier_.begin());
}

bool Family::contains(Mask x) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), x);
}

bool Family::trivial_equivalence() const {
  std::set<std::string> s(classes_.begin(), classes_.end());
  return static_cast<int>(s.size()) == size();
}

bool Family::unambiguous(Mask x) const {
  auto ms = members(x);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (equivalent(ms[i], ms[j])) return false;
    }
  }
  return true;
}

std::vector<std::string> Family::names_of(Mask m) const {
  std::vector<std::string> out;
  for (int i : members(m)) out.push_back(carrier_[i]);
  return out;
}

Mask Family::mask_of(const std::vector<std::string>& names) const {
  Mask m = 0;
  for (const auto& n : names) m |= bit(require_index(n));
  return m;
}

Family family_of(const Structure& s, const Budget& budget) {
  std::vector<std::string> classes;
  if (s.kind() == Kind::kEse || s.kind() == Kind::kEdc) {
    classes = s.class_labels();
  }
  return Family::make(s.names(), all_configs(s, budget), classes);
}

namespace {

bool bounded(const Family& f, Mask u, Mask* bound) {
  for (Mask w : f.configs()) {
    if (subset(u, w)) {
      if (bound) *bound = w;
      return true;
    }
  }
  return false;
}

}  // namespace

ValidationReport validate_family(const Family& f) {
  ValidationReport r;
  const auto& cs = f.configs();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      Mask u = cs[i] | cs[j];
      if (subset(cs[i], cs[j]) || subset(cs[j], cs[i]) || f.contains(u)) continue;
      Mask bound = 0;
      if (!bounded(f, u, &bound)) continue;
      r.violations.push_back(
          {"union-closure",
           {{"left", f.names_of(cs[i])}, {"right", f.names_of(cs[j])},
            {"bound", f.names_of(bound)}, {"missing", f.names_of(u)}}});
      // The sharper diagnosis: two single-event extensions of a common
      // member with an upper bound but no union.
      Mask base = cs[i] & cs[j];
      if (f.contains(base) && popcount(cs[i]) == popcount(base) + 1 &&
          popcount(cs[j]) == popcount(base) + 1) {
        r.violations.push_back(
            {"coverability",
             {{"base", f.names_of(base)}, {"left", f.names_of(cs[i])},
              {"right", f.names_of(cs[j])}, {"bound", f.names_of(bound)},
              {"missing", f.names_of(u)}}});
      }
    }
  }

  // Members reachable from the empty set by single-event steps inside f.
  std::unordered_set<Mask> reach{0};
  for (Mask x : cs) {
    for (int e : members(x)) {
      if (reach.count(x & ~bit(e))) {
        reach.insert(x);
        break;
      }
    }
  }
  for (Mask x : cs) {
    for (int e : members(x)) {
      bool secured = std::any_of(cs.begin(), cs.end(), [&](Mask y) {
        return has(y, e) && subset(y, x) && reach.count(y) &&
               reach.count(y & ~bit(e));
      });
      if (!secured) {
        r.violations.push_back(
            {"securing-chain", {{"config", f.names_of(x)}, {"event", f.name(e)}}});
      }
    }
  }

  bool stable = true, ef_stable = true;
  nlohmann::json stable_witness, ef_witness;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      Mask u = cs[i] | cs[j];
      Mask inter = cs[i] & cs[j];
      if (f.contains(inter)) continue;
      for (Mask z : cs) {
        if (!subset(u, z)) continue;
        if (stable) {
          stable = false;
          stable_witness = {{"left", f.names_of(cs[i])},
                            {"right", f.names_of(cs[j])},
                            {"bound", f.names_of(z)}};
        }
        if (ef_stable && f.unambiguous(z)) {
          ef_stable = false;
          ef_witness = {{"clause", "intersection-below-unambiguous"},
                        {"left", f.names_of(cs[i])},
                        {"right", f.names_of(cs[j])},
                        {"bound", f.names_of(z)}};
        }
      }
    }
  }
  for (std::size_t i = 0; i < cs.size() && ef_stable; ++i) {
    for (int a : members(cs[i])) {
      bool ok = std::any_of(cs.begin(), cs.end(), [&](Mask z) {
        return f.unambiguous(z) && has(z, a) && subset(z, cs[i]);
      });
      if (!ok) {
        ef_stable = false;
        ef_witness = {{"clause", "unambiguous-cover"},
                      {"config", f.names_of(cs[i])},
                      {"event", f.name(a)}};
        break;
      }
    }
  }
  r.properties["stable"] = stable;
  if (!stable) r.properties["stable_witness"] = stable_witness;
  r.properties["stable_equivalence_family"] = ef_stable;
  if (!ef_stable) r.properties["stable_equivalence_family_witness"] = ef_witness;
  r.notes.push_back("finite family: axioms checked over the listed members only");
  return r;
}

std::vector<Mask> irreducibles(const Family& f) {
  std::vector<Mask> out;
  for (Mask x : f.configs()) {
    for (int e : members(x)) {
      bool forced = std::none_of(f.configs().begin(), f.configs().end(),
                                 [&](Mask y) {
                                   return y != x && has(y, e) && subset(y, x);
                                 });
      if (forced) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

Structure canonical_ges(const Family& f, const Budget& budget) {
  if (!f.trivial_equivalence()) {
    throw UsageError("canonical_ges needs a family with trivial equivalence; use pr");
  }
  const int n = f.size();
  kernels::check_sweep_budget(n, budget.max_subsets);
  std::vector<bool> ok(std::size_t{1} << n, false);
  std::vector<Mask> conflicts;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    ok[m] = bounded(f, m, nullptr);
    if (ok[m]) continue;
    bool minimal = true;
    for (int i : members(m)) {
      if (!ok[m & ~bit(i)]) {
        minimal = false;
        break;
      }
    }
    if (minimal) conflicts.push_back(m);
  }
  std::vector<Enabling> en;
  for (Mask y : f.configs()) {
    for (int a : members(y)) en.push_back({y & ~bit(a), a});
  }
  std::vector<Enabling> minimal;
  for (const auto& e : en) {
    bool dominated = std::any_of(en.begin(), en.end(), [&](const Enabling& o) {
      return o.event == e.event && o.set != e.set && subset(o.set, e.set);
    });
    if (!dominated) minimal.push_back(e);
  }
  return Structure::make(Kind::kGeneral, f.carrier(), {}, minimal,
                         {false, conflicts});
}

Family hide_in_family(const Family& f, Mask hidden) {
  std::vector<std::string> carrier;
  std::vector<std::string> classes;
  std::vector<int> to(f.size(), -1);
  for (int e = 0; e < f.size(); ++e) {
    if (has(hidden, e)) continue;
    to[e] = static_cast<int>(carrier.size());
    carrier.push_back(f.name(e));
    classes.push_back(f.class_labels()[e]);
  }
  std::vector<Mask> cs;
  for (Mask x : f.configs()) {
    Mask m = 0;
    for (int e : members(x & ~hidden)) m |= bit(to[e]);
    cs.push_back(m);
  }
  return Family::make(carrier, cs, classes);
}

Family stable_restriction(const Family& f) {
  std::vector<Mask> unamb;
  for (Mask x : f.configs()) {
    if (f.unambiguous(x)) unamb.push_back(x);
  }
  std::vector<Mask> keep;
  for (Mask x : f.configs()) {
    Mask u = 0;
    for (Mask y : unamb) {
      if (subset(y, x)) u |= y;
    }
    if (u == x) keep.push_back(x);
  }
  return Family::make(f.carrier(), keep, f.class_labels());
}

bool FamilyMap::total() const {
  return std::all_of(mapping.begin(), mapping.end(), [](int t) { return t >= 0; });
}

Mask FamilyMap::image(Mask x) const {
  Mask m = 0;
  for (int e : members(x)) {
    if (mapping[e] >= 0) m |= bit(mapping[e]);
  }
  return m;
}

FamilyMap family_map_of(const StructMap& f, const Budget& budget) {
  return {family_of(f.source, budget), family_of(f.target, budget), f.mapping};
}

ValidationReport validate_family_map(const FamilyMap& f) {
  ValidationReport r;
  const auto& src = f.source;
  const auto& tgt = f.target;
  for (int a = 0; a < src.size(); ++a) {
    for (int b = a + 1; b < src.size(); ++b) {
      if (!src.equivalent(a, b)) continue;
      bool da = f.mapping[a] >= 0, db = f.mapping[b] >= 0;
      if (da != db || (da && !tgt.equivalent(f.mapping[a], f.mapping[b]))) {
        r.violations.push_back({"preserves-equivalence", {src.name(a), src.name(b)}});
      }
    }
  }
  for (Mask x : src.configs()) {
    if (!tgt.contains(f.image(x))) {
      r.violations.push_back({"image-configuration", src.names_of(x)});
      continue;
    }
    auto ms = members(x);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      for (std::size_t j = i + 1; j < ms.size(); ++j) {
        int fa = f.mapping[ms[i]], fb = f.mapping[ms[j]];
        if (fa >= 0 && fb >= 0 && tgt.equivalent(fa, fb) &&
            !src.equivalent(ms[i], ms[j])) {
          r.violations.push_back(
              {"reflects-equivalence",
               {{"config", src.names_of(x)}, {"events", {src.name(ms[i]), src.name(ms[j])}}}});
        }
      }
    }
  }
  return r;
}

PseudoPullback pseudo_pullback_ef(const FamilyMap& f, const FamilyMap& g,
                                  const Budget& budget) {
  if (!f.total() || !g.total()) {
    throw UsageError("pseudo pullback needs total maps");
  }
  if (f.target.carrier() != g.target.carrier()) {
    throw UsageError("pseudo pullback needs maps with a common target");
  }
  const Family& A = f.source;
  const Family& B = g.source;
  const Family& C = f.target;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < A.size(); ++a) {
    for (int b = 0; b < B.size(); ++b) {
      if (C.equivalent(f.mapping[a], g.mapping[b])) pairs.emplace_back(a, b);
    }
  }
  if (pairs.size() > static_cast<std::size_t>(kMaxEvents)) {
    throw ResourceError("pseudo pullback has more than 64 events");
  }
  const int n = static_cast<int>(pairs.size());
  auto proj = [&](Mask x, int side) {
    Mask m = 0;
    for (int d : members(x)) m |= bit(side == 0 ? pairs[d].first : pairs[d].second);
    return m;
  };
  std::vector<Mask> found{0};
  std::unordered_set<Mask> seen{0};
  std::vector<Mask> frontier{0};
  if (!A.contains(0) || !B.contains(0)) {
    found.clear();
    frontier.clear();
  }
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask x : frontier) {
      for (int d = 0; d < n; ++d) {
        Mask y = x | bit(d);
        if (y == x || seen.count(y)) continue;
        if (A.contains(proj(y, 0)) && B.contains(proj(y, 1))) {
          seen.insert(y);
          next.push_back(y);
          found.push_back(y);
        }
      }
    }
    if (found.size() > budget.max_subsets) {
      throw ResourceError("pseudo pullback enumeration exceeds budget");
    }
    frontier = std::move(next);
  }
  std::vector<std::string> names, classes;
  std::vector<int> m1, m2;
  for (auto [a, b] : pairs) {
    names.push_back(A.name(a) + "|" + B.name(b));
    classes.push_back(A.class_labels()[a] + "|" + B.class_labels()[b]);
    m1.push_back(a);
    m2.push_back(b);
  }
  Family D = Family::make(names, found, classes);
  // Family::make sorted the carrier; re-express projections in that order.
  std::vector<int> p1(n), p2(n);
  for (int i = 0; i < n; ++i) {
    int k = D.require_index(names[i]);
    p1[k] = m1[i];
    p2[k] = m2[i];
  }
  return {D, {D, A, p1}, {D, B, p2}};
}

}  // namespace esg
