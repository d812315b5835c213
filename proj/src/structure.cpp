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

#include "esg/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "esg/errors.hpp"
#include "esg/kernels.hpp"

namespace esg {

namespace {

Mask remap(Mask m, const std::vector<int>& to) {
  Mask out = 0;
  for (int i : members(m)) out |= bit(to[i]);
  return out;
}

nlohmann::json names_json(const Structure& s, Mask m) {
  return s.names_of(m);
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::kPrime: return "prime";
    case Kind::kGeneral: return "general";
    case Kind::kEse: return "ese";
    case Kind::kEdc: return "edc";
  }
  return "prime";
}

Kind kind_from_string(const std::string& s) {
  if (s == "prime") return Kind::kPrime;
  if (s == "general") return Kind::kGeneral;
  if (s == "ese") return Kind::kEse;
  if (s == "edc") return Kind::kEdc;
  throw FormatError("unknown structure kind '" + s + "'");
}

Structure Structure::make(Kind kind, std::vector<std::string> names,
                          std::vector<std::pair<int, int>> causality,
                          std::vector<Enabling> enablings,
                          Consistency consistency,
                          std::vector<std::string> classes,
                          std::optional<std::vector<Polarity>> polarity) {
  const int n = static_cast<int>(names.size());
  if (n > kMaxEvents) {
    throw ResourceError("structures are limited to 64 events");
  }
  for (const auto& nm : names) {
    if (nm.empty()) throw FormatError("event names must be nonempty");
  }
  // The empty structure is a game too.
  if (n == 0 && !polarity) polarity.emplace();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return names[a] < names[b]; });
  for (int i = 1; i < n; ++i) {
    if (names[order[i]] == names[order[i - 1]]) {
      throw FormatError("duplicate event id '" + names[order[i]] + "'");
    }
  }
  std::vector<int> to(n);
  for (int i = 0; i < n; ++i) to[order[i]] = i;
  auto check = [&](int e) {
    if (e < 0 || e >= n) throw FormatError("event index out of range");
  };

  Structure s;
  s.kind_ = kind;
  s.names_.resize(n);
  for (int i = 0; i < n; ++i) s.names_[to[i]] = names[i];
  for (auto [a, b] : causality) {
    check(a);
    check(b);
    s.causality_.emplace_back(to[a], to[b]);
  }
  const Mask all = full_mask(n);
  for (auto en : enablings) {
    check(en.event);
    if (!subset(en.set, all)) throw FormatError("enabling mentions unknown event");
    s.enablings_.push_back({remap(en.set, to), to[en.event]});
  }
  for (Mask& m : consistency.sets) {
    if (!subset(m, all)) throw FormatError("consistency mentions unknown event");
    m = remap(m, to);
  }
  s.consistency_ = std::move(consistency);
  s.classes_.resize(n);
  if (classes.empty()) {
    for (int i = 0; i < n; ++i) s.classes_[to[i]] = names[i];
  } else {
    if (static_cast<int>(classes.size()) != n) {
      throw FormatError("class labels do not match events");
    }
    for (int i = 0; i < n; ++i) s.classes_[to[i]] = classes[i];
  }
  if (polarity) {
    if (static_cast<int>(polarity->size()) != n) {
      throw FormatError("polarity does not match events");
    }
    std::vector<Polarity> p(n);
    for (int i = 0; i < n; ++i) p[to[i]] = (*polarity)[i];
    s.polarity_ = std::move(p);
  }
  s.derive();
  return s;
}

void Structure::derive() {
  const int n = size();
  down_.assign(n, 0);
  for (int e = 0; e < n; ++e) down_[e] = bit(e);
  for (auto [a, b] : causality_) down_[b] |= bit(a);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < n; ++e) {
      Mask acc = down_[e];
      for (int p : members(down_[e])) acc |= down_[p];
      if (acc != down_[e]) {
        down_[e] = acc;
        changed = true;
      }
    }
  }
  up_.assign(n, 0);
  for (int e = 0; e < n; ++e) {
    for (int p : members(down_[e])) up_[p] |= bit(e);
  }
  acyclic_ = true;
  for (int e = 0; e < n && acyclic_; ++e) {
    if (popcount(down_[e] & up_[e]) > 1) acyclic_ = false;
  }
  if (acyclic_) causality_ = covers();
  std::sort(causality_.begin(), causality_.end());
  causality_.erase(std::unique(causality_.begin(), causality_.end()),
                   causality_.end());
  std::sort(enablings_.begin(), enablings_.end(),
            [](const Enabling& a, const Enabling& b) {
              if (a.event != b.event) return a.event < b.event;
              return canonical_less(a.set, b.set);
            });
  enablings_.erase(std::unique(enablings_.begin(), enablings_.end()),
                   enablings_.end());
  auto& sets = consistency_.sets;
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

std::optional<int> Structure::index_of(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

int Structure::require_index(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw FormatError("unknown event id '" + name + "'");
  return *i;
}

Mask Structure::down_closure(Mask x) const {
  Mask out = 0;
  for (int e : members(x)) out |= down_[e];
  return out;
}

std::vector<std::pair<int, int>> Structure::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int b = 0; b < size(); ++b) {
    Mask below = down_[b] & ~bit(b);
    for (int a : members(below)) {
      bool immediate = true;
      for (int c : members(below & ~bit(a))) {
        if (has(down_[c], a)) {
          immediate = false;
          break;
        }
      }
      if (immediate) out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Structure::trivial_equivalence() const {
  std::set<std::string> seen(classes_.begin(), classes_.end());
  return static_cast<int>(seen.size()) == size();
}

Mask Structure::class_mask(int e) const {
  Mask out = 0;
  for (int i = 0; i < size(); ++i) {
    if (classes_[i] == classes_[e]) out |= bit(i);
  }
  return out;
}

Mask Structure::polarity_mask(Polarity p) const {
  Mask out = 0;
  if (!polarity_) return out;
  for (int i = 0; i < size(); ++i) {
    if ((*polarity_)[i] == p) out |= bit(i);
  }
  return out;
}

bool Structure::consistent(Mask x) const {
  const auto& sets = consistency_.sets;
  if (consistency_.explicit_form) {
    return std::binary_search(sets.begin(), sets.end(), x);
  }
  for (Mask k : sets) {
    if (subset(k, x)) return false;
  }
  return true;
}

bool Structure::is_config(Mask x) const {
  if (!consistent(x)) return false;
  if (kind_ != Kind::kGeneral) {
    for (int e : members(x)) {
      if (!subset(down_[e], x)) return false;
    }
    return true;
  }
  Mask reached = 0;
  bool grew = true;
  while (grew && reached != x) {
    grew = false;
    for (const auto& en : enablings_) {
      if (has(x, en.event) && !has(reached, en.event) &&
          subset(en.set, reached)) {
        reached |= bit(en.event);
        grew = true;
      }
    }
  }
  return reached == x;
}

Mask Structure::enabled_at(Mask x) const {
  Mask out = 0;
  if (kind_ != Kind::kGeneral) {
    for (int e = 0; e < size(); ++e) {
      if (has(x, e)) continue;
      if (subset(down_[e] & ~bit(e), x) && consistent(x | bit(e))) {
        out |= bit(e);
      }
    }
    return out;
  }
  for (const auto& en : enablings_) {
    if (has(x, en.event) || has(out, en.event)) continue;
    if (subset(en.set, x) && consistent(x | bit(en.event))) {
      out |= bit(en.event);
    }
  }
  return out;
}

bool Structure::unambiguous(Mask x) const {
  auto ms = members(x);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (equivalent(ms[i], ms[j])) return false;
    }
  }
  return true;
}

std::vector<Mask> Structure::minimal_conflicts(const Budget& budget) const {
  std::vector<Mask> out;
  if (!consistency_.explicit_form) {
    for (Mask k : consistency_.sets) {
      bool minimal = true;
      for (Mask j : consistency_.sets) {
        if (j != k && subset(j, k)) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.push_back(k);
    }
    kernels::sort_canonical(out);
    return out;
  }
  const int n = size();
  kernels::check_sweep_budget(n, budget.max_subsets);
  std::vector<bool> ok(std::size_t{1} << n, false);
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    ok[m] = consistent(m);
    if (ok[m]) continue;
    bool minimal = true;
    for (int i : members(m)) {
      if (!ok[m & ~bit(i)]) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(m);
  }
  kernels::sort_canonical(out);
  return out;
}

std::vector<std::string> Structure::names_of(Mask m) const {
  std::vector<std::string> out;
  for (int i : members(m)) out.push_back(names_[i]);
  return out;
}

Mask Structure::mask_of(const std::vector<std::string>& names) const {
  Mask m = 0;
  for (const auto& nm : names) m |= bit(require_index(nm));
  return m;
}

Structure Structure::with_kind(Kind k) const {
  Structure s = *this;
  s.kind_ = k;
  return s;
}

Structure Structure::with_polarity(std::optional<std::vector<Polarity>> p) const {
  Structure s = *this;
  s.polarity_ = std::move(p);
  return s;
}

Structure Structure::with_classes(std::vector<std::string> classes) const {
  Structure s = *this;
  s.classes_ = std::move(classes);
  return s;
}

Structure Structure::with_consistency(Consistency c) const {
  Structure s = *this;
  s.consistency_ = std::move(c);
  s.derive();
  return s;
}

Structure Structure::renamed(const std::vector<std::string>& new_names) const {
  std::vector<std::string> classes = classes_;
  // Singleton classes keep following their event's name.
  for (int i = 0; i < size(); ++i) {
    if (class_mask(i) == bit(i) && classes_[i] == names_[i]) {
      classes[i] = new_names[i];
    }
  }
  return make(kind_, new_names, causality_, enablings_, consistency_, classes,
              polarity_);
}

bool operator==(const Structure& a, const Structure& b) {
  return a.kind_ == b.kind_ && a.names_ == b.names_ &&
         a.causality_ == b.causality_ && a.enablings_ == b.enablings_ &&
         a.consistency_.explicit_form == b.consistency_.explicit_form &&
         a.consistency_.sets == b.consistency_.sets &&
         a.classes_ == b.classes_ && a.polarity_ == b.polarity_;
}

Structure restrict(const Structure& s, Mask keep) {
  std::vector<int> to(s.size(), -1);
  std::vector<std::string> names, classes;
  std::optional<std::vector<Polarity>> pol;
  if (s.has_polarity()) pol.emplace();
  for (int e : members(keep)) {
    to[e] = static_cast<int>(names.size());
    names.push_back(s.name(e));
    classes.push_back(s.class_label(e));
    if (pol) pol->push_back(s.pol(e));
  }
  std::vector<std::pair<int, int>> causality;
  for (int b : members(keep)) {
    for (int a : members(s.down(b) & keep & ~bit(b))) {
      causality.emplace_back(to[a], to[b]);
    }
  }
  std::vector<Enabling> enablings;
  for (const auto& en : s.enablings()) {
    if (has(keep, en.event) && subset(en.set, keep)) {
      enablings.push_back({remap(en.set, to), to[en.event]});
    }
  }
  Consistency c{s.consistency().explicit_form, {}};
  for (Mask m : s.consistency().sets) {
    if (subset(m, keep)) c.sets.push_back(remap(m, to));
  }
  return Structure::make(s.kind(), names, causality, enablings, c, classes, pol);
}

Mask StructMap::domain() const {
  Mask m = 0;
  for (std::size_t i = 0; i < mapping.size(); ++i) {
    if (mapping[i] >= 0) m |= bit(static_cast<int>(i));
  }
  return m;
}

Mask StructMap::image(Mask x) const {
  Mask m = 0;
  for (int e : members(x)) {
    if (mapping[e] >= 0) m |= bit(mapping[e]);
  }
  return m;
}

bool StructMap::total() const {
  return std::all_of(mapping.begin(), mapping.end(), [](int t) { return t >= 0; });
}

StructMap identity_map(const Structure& s) {
  std::vector<int> m(s.size());
  std::iota(m.begin(), m.end(), 0);
  return {s, s, m};
}

StructMap compose_maps(const StructMap& g, const StructMap& f) {
  std::vector<int> m(f.mapping.size(), -1);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (f.mapping[i] >= 0) m[i] = g.mapping[f.mapping[i]];
  }
  return {f.source, g.target, m};
}

bool ValidationReport::violates(const std::string& axiom) const {
  return find(axiom) != nullptr;
}

const Violation* ValidationReport::find(const std::string& axiom) const {
  for (const auto& v : violations) {
    if (v.axiom == axiom) return &v;
  }
  return nullptr;
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json j;
  j["valid"] = ok();
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations) {
    j["violations"].push_back({{"axiom", v.axiom}, {"witness", v.witness}});
  }
  j["properties"] = nlohmann::json::parse(properties.dump());
  j["notes"] = notes;
  return j;
}

ValidationReport validate(const Structure& s, const Budget& budget) {
  ValidationReport r;
  const int n = s.size();
  auto add = [&](std::string axiom, nlohmann::json w) {
    r.violations.push_back({std::move(axiom), std::move(w)});
  };

  if (!s.order_is_partial()) {
    for (int a = 0; a < n; ++a) {
      Mask cyc = s.down(a) & s.up(a) & ~bit(a);
      if (cyc) {
        add("partial-order", {s.name(a), s.name(members(cyc)[0])});
        break;
      }
    }
  }
  if (!s.consistent(0)) add("consistency-nonempty", nlohmann::json::array());

  const auto& con = s.consistency();
  if (con.explicit_form) {
    for (Mask m : con.sets) {
      for (int i : members(m)) {
        if (!s.consistent(m & ~bit(i))) {
          add("subset-closed", {{"set", names_json(s, m)},
                                {"missing", names_json(s, m & ~bit(i))}});
          break;
        }
      }
    }
  }

  if (s.kind() != Kind::kGeneral) {
    for (int e = 0; e < n; ++e) {
      if (!s.consistent(bit(e))) add("singleton-consistent", {s.name(e)});
    }
    if (con.explicit_form) {
      for (Mask m : con.sets) {
        if (!s.consistent(s.down_closure(m))) {
          add("consistency-down-closed", {{"set", names_json(s, m)}});
        }
      }
    } else {
      for (Mask k : con.sets) {
        // A consistent set whose down-closure covers the conflict k can be
        // shrunk to one event above each member of k.
        auto ks = members(k);
        std::vector<std::vector<int>> choices;
        std::uint64_t work = 1;
        for (int x : ks) {
          choices.push_back(members(s.up(x)));
          work *= choices.back().size();
          if (work > budget.max_subsets) {
            throw ResourceError("down-closure check exceeds subset budget");
          }
        }
        std::vector<std::size_t> idx(ks.size(), 0);
        bool found = false;
        while (!found) {
          Mask x = 0;
          for (std::size_t i = 0; i < ks.size(); ++i) x |= bit(choices[i][idx[i]]);
          if (s.consistent(x)) {
            add("consistency-down-closed",
                {{"set", names_json(s, x)}, {"conflict", names_json(s, k)}});
            found = true;
          }
          std::size_t i = 0;
          while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
          if (i == idx.size()) break;
        }
      }
    }
  } else {
    for (const auto& en : s.enablings()) {
      if (!s.consistent(en.set)) {
        add("enabling-consistent",
            {{"set", names_json(s, en.set)}, {"event", s.name(en.event)}});
      }
    }
  }

  if (s.kind() == Kind::kPrime || s.kind() == Kind::kGeneral) {
    for (int a = 0; a < n; ++a) {
      Mask others = s.class_mask(a) & ~bit(a);
      if (others && members(others)[0] > a) {
        add("equivalence-identity", {s.name(a), s.name(members(others)[0])});
      }
    }
  }
  if (s.kind() == Kind::kEdc) {
    for (int p = 0; p < n; ++p) {
      auto below = members(s.down(p));
      bool done = false;
      for (std::size_t i = 0; i < below.size() && !done; ++i) {
        for (std::size_t j = i + 1; j < below.size() && !done; ++j) {
          if (s.equivalent(below[i], below[j])) {
            add("edc", {{"causes", {s.name(below[i]), s.name(below[j])}}, {"event", s.name(p)}});
            done = true;
          }
        }
      }
    }
  }
  if (s.has_polarity()) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (s.equivalent(a, b) && s.pol(a) != s.pol(b)) {
          add("polarity-respects-equivalence", {s.name(a), s.name(b)});
        }
      }
    }
  }

  if (s.kind() == Kind::kGeneral && r.ok()) {
    bool replete = true;
    nlohmann::json why;
    for (int e = 0; e < n && replete; ++e) {
      bool enabled = false;
      for (const auto& en : s.enablings()) {
        if (en.event == e && s.consistent(en.set)) enabled = true;
      }
      if (!enabled) {
        replete = false;
        why = {{"unenabled", s.name(e)}};
      }
    }
    auto cfgs = all_configs(s, budget);
    if (replete) {
      kernels::check_sweep_budget(n, budget.max_subsets);
      auto bad = kernels::first_failure(n, [&](Mask x) {
        if (!s.consistent(x)) return true;
        return std::any_of(cfgs.begin(), cfgs.end(),
                           [&](Mask c) { return subset(x, c); });
      });
      if (bad) {
        replete = false;
        why = {{"uncovered-consistent-set", names_json(s, *bad)}};
      }
    }
    for (std::size_t i = 0; i < s.enablings().size() && replete; ++i) {
      const auto& en = s.enablings()[i];
      Mask lim = en.set | bit(en.event);
      bool found = std::any_of(cfgs.begin(), cfgs.end(), [&](Mask c) {
        return has(c, en.event) && subset(c, lim);
      });
      if (!found) {
        replete = false;
        why = {{"enabling-without-configuration",
                {{"set", names_json(s, en.set)}, {"event", s.name(en.event)}}}};
      }
    }
    r.properties["replete"] = replete;
    if (!replete) r.properties["replete_witness"] = why;
  }
  return r;
}

std::vector<Mask> configs(const Structure& s, int max_size,
                          const Budget& budget) {
  std::vector<Mask> out{0};
  if (!s.is_config(0)) return {};
  std::vector<Mask> frontier{0};
  for (int k = 0; k < max_size && !frontier.empty(); ++k) {
    std::unordered_set<Mask> next;
    for (Mask x : frontier) {
      for (int e : members(s.enabled_at(x))) next.insert(x | bit(e));
    }
    frontier.assign(next.begin(), next.end());
    out.insert(out.end(), frontier.begin(), frontier.end());
    if (out.size() > budget.max_subsets) {
      throw ResourceError("configuration enumeration exceeds budget of " +
                          std::to_string(budget.max_subsets));
    }
  }
  kernels::sort_canonical(out);
  return out;
}

std::vector<Mask> configs_bruteforce(const Structure& s, int max_size,
                                     const Budget& budget) {
  kernels::check_sweep_budget(s.size(), budget.max_subsets);
  return kernels::filter_subsets(s.size(), [&](Mask x) {
    return popcount(x) <= max_size && s.is_config(x);
  });
}

ValidationReport validate_map(const StructMap& f, const Budget& budget) {
  const Structure& src = f.source;
  const Structure& tgt = f.target;
  if (static_cast<int>(f.mapping.size()) != src.size()) {
    throw FormatError("mapping does not cover the source events");
  }
  for (int t : f.mapping) {
    if (t >= tgt.size()) throw FormatError("mapping targets unknown event");
  }
  ValidationReport r;
  auto add = [&](std::string axiom, nlohmann::json w) {
    r.violations.push_back({std::move(axiom), std::move(w)});
  };
  const int n = src.size();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!src.equivalent(a, b)) continue;
      if (f.defined(a) != f.defined(b)) {
        add("equi-defined", {src.name(a), src.name(b)});
      } else if (f.defined(a) && !tgt.equivalent(f.mapping[a], f.mapping[b])) {
        add("preserves-equivalence", {src.name(a), src.name(b)});
      }
    }
  }
  if (src.has_polarity() && tgt.has_polarity()) {
    for (int a = 0; a < n; ++a) {
      if (f.defined(a) && src.pol(a) != tgt.pol(f.mapping[a])) {
        add("preserves-polarity", {src.name(a)});
      }
    }
  }
  for (Mask x : all_configs(src, budget)) {
    Mask fx = f.image(x);
    if (!tgt.is_config(fx)) {
      add("image-configuration",
          {{"config", src.names_of(x)}, {"image", tgt.names_of(fx)}});
      continue;
    }
    auto ms = members(x & f.domain());
    bool bad = false;
    for (std::size_t i = 0; i < ms.size() && !bad; ++i) {
      for (std::size_t j = i + 1; j < ms.size() && !bad; ++j) {
        if (tgt.equivalent(f.mapping[ms[i]], f.mapping[ms[j]]) &&
            !src.equivalent(ms[i], ms[j])) {
          add("reflects-equivalence", {{"config", src.names_of(x)},
                                       {"events", {src.name(ms[i]), src.name(ms[j])}}});
          bad = true;
        }
      }
    }
  }
  if (src.kind() == Kind::kGeneral && tgt.kind() == Kind::kGeneral) {
    kernels::check_sweep_budget(n, budget.max_subsets);
    auto bad = kernels::first_failure(n, [&](Mask x) {
      if (!src.consistent(x)) return true;
      Mask fx = f.image(x & f.domain());
      return tgt.consistent(fx) && popcount(fx) == popcount(x & f.domain());
    });
    if (bad) add("consistency-preserved-injectively", src.names_of(*bad));
    for (const auto& en : src.enablings()) {
      if (!f.defined(en.event) || !src.consistent(en.set)) continue;
      Mask fx = f.image(en.set);
      int fe = f.mapping[en.event];
      bool ok = tgt.consistent(fx) &&
                std::any_of(tgt.enablings().begin(), tgt.enablings().end(),
                            [&](const Enabling& t) {
                              return t.event == fe && subset(t.set, fx);
                            });
      if (!ok) {
        add("enabling-preserved",
            {{"set", src.names_of(en.set)}, {"event", src.name(en.event)}});
      }
    }
  }
  return r;
}

bool maps_equivalent(const StructMap& f, const StructMap& g) {
  if (f.source.names() != g.source.names() ||
      f.target.names() != g.target.names()) {
    throw UsageError("maps_equivalent needs maps with the same endpoints");
  }
  for (std::size_t i = 0; i < f.mapping.size(); ++i) {
    if (f.defined(static_cast<int>(i)) != g.defined(static_cast<int>(i))) return false;
    if (f.mapping[i] >= 0 && !f.target.equivalent(f.mapping[i], g.mapping[i])) {
      return false;
    }
  }
  return true;
}

Structure as_general(const Structure& prime) {
  std::vector<Enabling> en;
  for (int p = 0; p < prime.size(); ++p) {
    en.push_back({prime.down(p) & ~bit(p), p});
  }
  return Structure::make(Kind::kGeneral, prime.names(), {}, en,
                         prime.consistency(), {},
                         prime.has_polarity()
                             ? std::optional(prime.polarity())
                             : std::nullopt);
}

Consistency to_explicit(const Structure& s, const Budget& budget) {
  kernels::check_sweep_budget(s.size(), budget.max_subsets);
  auto sets = kernels::filter_subsets(s.size(), [&](Mask x) { return s.consistent(x); });
  return {true, sets};
}

Consistency to_conflicts(const Structure& s, const Budget& budget) {
  return {false, s.minimal_conflicts(budget)};
}

}  // namespace esg
