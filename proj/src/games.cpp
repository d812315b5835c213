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

#include "esg/games.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "esg/errors.hpp"
#include "esg/kernels.hpp"
#include "esg/realisation.hpp"

namespace esg {

namespace {

std::string padded(int k, int n) {
  std::string num = std::to_string(k);
  const std::size_t width = std::to_string(std::max(n - 1, 0)).size();
  while (num.size() < width) num = "0" + num;
  return num;
}

std::vector<std::string> p_names(int n) {
  std::vector<std::string> out;
  for (int k = 0; k < n; ++k) out.push_back("p" + padded(k, n));
  return out;
}

// Disjoint union of non-general structures whose names are already distinct.
Structure union_of(const std::vector<Structure>& parts, Kind kind,
                   const Budget& budget) {
  std::vector<std::string> names, classes;
  std::vector<std::pair<int, int>> causality;
  std::vector<Mask> conflicts;
  std::vector<Polarity> pol;
  bool polar = true;
  int offset = 0;
  for (const auto& s : parts) {
    for (int e = 0; e < s.size(); ++e) {
      names.push_back(s.name(e));
      classes.push_back(s.class_label(e));
      if (s.has_polarity()) pol.push_back(s.pol(e));
    }
    polar = polar && s.has_polarity();
    for (auto [a, b] : s.causality()) causality.emplace_back(a + offset, b + offset);
    for (Mask c : s.minimal_conflicts(budget)) conflicts.push_back(c << offset);
    offset += s.size();
  }
  if (offset > kMaxEvents) throw ResourceError("structure exceeds 64 events");
  std::optional<std::vector<Polarity>> p;
  if (polar) p = pol;
  return Structure::make(kind, names, causality, {}, {false, conflicts}, classes, p);
}

Mask tagged(const Structure& s, int tag) {
  Mask m = 0;
  for (int e = 0; e < s.size(); ++e) {
    auto t = split_tag(s.name(e));
    if (!t) throw UsageError("game event '" + s.name(e) + "' lacks a side tag");
    if (t->first == tag) m |= bit(e);
  }
  return m;
}

// Renames every event by replacing its leading tag.
Structure retag(const Structure& s, const std::string& tag) {
  std::vector<std::string> names;
  for (int e = 0; e < s.size(); ++e) names.push_back(tag + split_tag(s.name(e))->second);
  return s.renamed(names);
}

Structure untagged(const Structure& s) {
  std::vector<std::string> names;
  for (int e = 0; e < s.size(); ++e) names.push_back(split_tag(s.name(e))->second);
  return s.renamed(names);
}

Structure without_polarity(const Structure& s) { return s.with_polarity(std::nullopt); }


// Labels every equivalence class by the name of its first event.
Structure tidy_classes(const Structure& s) {
  std::vector<std::string> classes(s.size());
  for (int e = 0; e < s.size(); ++e) {
    classes[e] = s.name(members(s.class_mask(e)).front());
  }
  return s.with_classes(classes);
}

}  // namespace

bool same_structure(const Structure& a, const Structure& b) {
  if (a.names() != b.names() || a.class_labels() != b.class_labels() ||
      a.has_polarity() != b.has_polarity() || a.kind() != b.kind()) {
    return false;
  }
  if (a.has_polarity() && a.polarity() != b.polarity()) return false;
  for (int e = 0; e < a.size(); ++e) {
    if (a.down(e) != b.down(e)) return false;
  }
  if (a.kind() == Kind::kGeneral) return a.enablings() == b.enablings() && a == b;
  return a.minimal_conflicts() == b.minimal_conflicts();
}

bool is_game(const Structure& a) {
  return a.kind() != Kind::kGeneral && a.has_polarity() && a.trivial_equivalence();
}

void require_game(const Structure& a) {
  if (!is_game(a)) {
    throw UsageError("a game needs total polarity and identity equivalence");
  }
}

Strategy make_strategy(Structure game, Structure inner, std::vector<int> mapping) {
  if (static_cast<int>(mapping.size()) != inner.size()) {
    throw FormatError("strategy map must cover every event");
  }
  for (int m : mapping) {
    if (m < 0 || m >= game.size()) throw UsageError("strategy map must be total");
  }
  return Strategy{StructMap{std::move(inner), std::move(game), std::move(mapping)}};
}

Structure dual(const Structure& a) {
  if (!a.has_polarity()) throw UsageError("dual needs a polarised structure");
  std::vector<Polarity> p;
  for (Polarity x : a.polarity()) p.push_back(flip(x));
  return a.with_polarity(p);
}

std::optional<std::pair<int, std::string>> split_tag(const std::string& name) {
  auto dot = name.find('.');
  if (dot == std::string::npos || dot == 0) return std::nullopt;
  const std::string head = name.substr(0, dot);
  if (!std::all_of(head.begin(), head.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return std::make_pair(std::stoi(head), name.substr(dot + 1));
}

Structure par(const Structure& a, const Structure& b) {
  if ((a.kind() == Kind::kGeneral) != (b.kind() == Kind::kGeneral)) {
    throw UsageError("par needs two general or two non-general structures");
  }
  if (a.size() + b.size() > kMaxEvents) throw ResourceError("par exceeds 64 events");
  Kind kind = a.kind();
  if (kind != b.kind() && kind != Kind::kGeneral) {
    if (a.kind() == Kind::kEse || b.kind() == Kind::kEse) {
      kind = Kind::kEse;
    } else {
      kind = Kind::kEdc;
    }
  }
  std::vector<std::string> names, classes;
  std::vector<std::pair<int, int>> causality;
  std::vector<Enabling> enablings;
  std::vector<Mask> conflicts;
  const int off = a.size();
  for (int e = 0; e < a.size(); ++e) {
    names.push_back("0." + a.name(e));
    classes.push_back("0." + a.class_label(e));
  }
  for (int e = 0; e < b.size(); ++e) {
    names.push_back("1." + b.name(e));
    classes.push_back("1." + b.class_label(e));
  }
  for (auto [x, y] : a.causality()) causality.emplace_back(x, y);
  for (auto [x, y] : b.causality()) causality.emplace_back(x + off, y + off);
  for (const auto& en : a.enablings()) enablings.push_back(en);
  for (const auto& en : b.enablings()) enablings.push_back({en.set << off, en.event + off});
  for (Mask c : a.minimal_conflicts()) conflicts.push_back(c);
  for (Mask c : b.minimal_conflicts()) conflicts.push_back(c << off);
  std::optional<std::vector<Polarity>> pol;
  if (a.has_polarity() && b.has_polarity()) {
    pol = a.polarity();
    pol->insert(pol->end(), b.polarity().begin(), b.polarity().end());
  }
  return Structure::make(kind, names, causality, enablings, {false, conflicts}, classes,
                         pol);
}

// A game with untagged events is read as the right side of "empty || A".
Strategy as_tagged(const Strategy& s) {
  const Structure& g = s.game();
  bool all = true;
  for (int e = 0; e < g.size(); ++e) {
    if (!split_tag(g.name(e))) all = false;
  }
  if (all) return s;
  std::vector<std::string> names;
  for (int e = 0; e < g.size(); ++e) names.push_back("1." + g.name(e));
  return make_strategy(g.renamed(names), s.inner(), s.sigma.mapping);
}

Strategy par_strategy(const Strategy& s_in, const Strategy& t_in) {
  const Strategy s = as_tagged(s_in);
  const Strategy t = as_tagged(t_in);
  auto regroup = [](const Structure& g, const std::string& which) {
    std::vector<std::string> names;
    for (int e = 0; e < g.size(); ++e) {
      auto [side, base] = *split_tag(g.name(e));
      names.push_back(std::to_string(side) + "." + which + "." + base);
    }
    return g.renamed(names);
  };
  Structure gs = regroup(s.game(), "0");
  Structure gt = regroup(t.game(), "1");
  Structure game = union_of({gs, gt}, Kind::kPrime, Budget{});
  Structure inner = par(s.inner(), t.inner());
  std::vector<int> m;
  for (int e = 0; e < s.inner().size(); ++e) {
    m.push_back(game.require_index(gs.name(s.sigma.mapping[e])));
  }
  for (int e = 0; e < t.inner().size(); ++e) {
    m.push_back(game.require_index(gt.name(t.sigma.mapping[e])));
  }
  return make_strategy(game, inner, m);
}

Strategy copycat(const Structure& a, const Budget& budget) {
  require_game(a);
  Structure game = par(dual(a), a);
  const int n = a.size();
  std::vector<std::pair<int, int>> causality = game.causality();
  for (int e = 0; e < n; ++e) {
    if (a.pol(e) == Polarity::kPlus) {
      causality.emplace_back(e, n + e);
    } else {
      causality.emplace_back(n + e, e);
    }
  }
  Structure order = Structure::make(Kind::kEdc, game.names(), causality, {}, {false, {}},
                                    {}, game.polarity());
  std::vector<Mask> downs;
  for (int e = 0; e < 2 * n; ++e) downs.push_back(order.down(e));
  auto conflicts = minimal_inconsistent(
      2 * n, [&](Mask x) { return game.consistent(order.down_closure(x)); }, budget,
      downs);
  Structure inner = order.with_consistency({false, conflicts});
  std::vector<int> id(2 * n);
  for (int e = 0; e < 2 * n; ++e) id[e] = e;
  return make_strategy(game, inner, id);
}

bool scott_leq(const Structure& a, Mask x, Mask y) {
  if (!a.is_config(x) || !a.is_config(y)) {
    throw UsageError("scott order compares configurations only");
  }
  const Mask plus = a.polarity_mask(Polarity::kPlus);
  const Mask minus = a.polarity_mask(Polarity::kMinus);
  return subset(x & ~y, minus) && subset(y & ~x, plus);
}

bool is_race_free(const Structure& a, const Budget& budget) {
  const Mask plus = a.polarity_mask(Polarity::kPlus);
  for (Mask x : all_configs(a, budget)) {
    Mask en = a.enabled_at(x);
    for (int p : members(en & plus)) {
      for (int m : members(en & ~plus)) {
        if (!a.is_config(x | bit(p) | bit(m))) return false;
      }
    }
  }
  return true;
}

Structure hide_events(const Structure& s, Mask visible) {
  for (int e : members(visible)) {
    if (!subset(s.class_mask(e), visible)) {
      throw UsageError("visible events must be closed under equivalence; '" +
                       s.name(e) + "' is not");
    }
  }
  return restrict(s, visible);
}

Factorisation factorise_partial(const StructMap& f) {
  const Mask v = f.domain();
  Structure pv = hide_events(f.source, v);
  std::vector<int> proj(f.source.size(), -1), def;
  int k = 0;
  for (int e : members(v)) {
    proj[e] = k++;
    def.push_back(f.mapping[e]);
  }
  return {StructMap{f.source, pv, proj}, StructMap{pv, f.target, def}};
}

StructMap mediate(const StructMap& f, const StructMap& g0, const StructMap& g1) {
  if (!g1.total()) throw UsageError("mediate needs a total second factor");
  if (g0.domain() != f.domain()) {
    throw UsageError("the factorisation is not defined where the map is");
  }
  auto fac = factorise_partial(f);
  std::vector<int> h;
  for (int e : members(f.domain())) {
    int t = g0.mapping[e];
    if (g1.mapping[t] != f.mapping[e]) {
      throw UsageError("the supplied factorisation does not compose to the map");
    }
    h.push_back(t);
  }
  return {fac.projection.target, g0.target, h};
}

Pullback pullback_edc(const StructMap& f, const StructMap& g, const Budget& budget) {
  if (!f.total() || !g.total()) throw UsageError("pullback needs total maps");
  if (!same_structure(f.target, g.target)) throw UsageError("pullback needs a common target");
  if (!f.target.trivial_equivalence()) {
    throw UsageError("pullback target must have identity equivalence");
  }
  auto pp = pseudo_pullback_ef(family_map_of(f, budget), family_map_of(g, budget), budget);
  PrResult p = pr(stable_restriction(pp.family), budget);
  const int n = p.edc.size();
  std::vector<int> m1(n), m2(n);
  for (int e = 0; e < n; ++e) {
    m1[e] = pp.proj1.mapping[p.top[e]];
    m2[e] = pp.proj2.mapping[p.top[e]];
  }
  Structure edc = p.edc;
  if (f.source.has_polarity()) {
    std::vector<Polarity> pol;
    for (int e = 0; e < n; ++e) pol.push_back(f.source.pol(m1[e]));
    edc = edc.with_polarity(pol);
  }
  return {edc, StructMap{edc, f.source, m1}, StructMap{edc, g.source, m2}};
}

Composite compose_full(const Strategy& sigma_in, const Strategy& tau_in,
                       const Budget& budget) {
  const Strategy sigma = as_tagged(sigma_in);
  const Strategy tau = as_tagged(tau_in);
  const Structure& gs = sigma.game();
  const Structure& gt = tau.game();
  require_game(gs);
  require_game(gt);
  Structure a_part = restrict(gs, tagged(gs, 0));
  Structure b_sigma = untagged(restrict(gs, tagged(gs, 1)));
  Structure b_tau = untagged(restrict(gt, tagged(gt, 0)));
  Structure c_part = restrict(gt, tagged(gt, 1));
  if (!same_structure(b_sigma, dual(b_tau))) {
    throw UsageError("middle games of the composed strategies do not match");
  }
  // A || B || C without polarity, events "0.a", "1.b", "2.c".
  Structure abc = union_of({without_polarity(a_part),
                            without_polarity(retag(restrict(gs, tagged(gs, 1)), "1.")),
                            without_polarity(retag(c_part, "2."))},
                           Kind::kPrime, budget);
  auto abc_index = [&](int tag, const std::string& base) {
    return abc.require_index(std::to_string(tag) + "." + base);
  };

  Structure sc = par(without_polarity(sigma.inner()), without_polarity(c_part));
  std::vector<int> sc_map(sc.size());
  for (int e = 0; e < sc.size(); ++e) {
    auto [side, rest] = *split_tag(sc.name(e));
    if (side == 0) {
      auto g = *split_tag(gs.name(sigma.sigma.mapping[sigma.inner().require_index(rest)]));
      sc_map[e] = abc_index(g.first, g.second);
    } else {
      sc_map[e] = abc_index(2, split_tag(rest)->second);
    }
  }
  Structure at = par(without_polarity(a_part), without_polarity(tau.inner()));
  std::vector<int> at_map(at.size());
  for (int e = 0; e < at.size(); ++e) {
    auto [side, rest] = *split_tag(at.name(e));
    if (side == 0) {
      at_map[e] = abc_index(0, split_tag(rest)->second);
    } else {
      auto g = *split_tag(gt.name(tau.sigma.mapping[tau.inner().require_index(rest)]));
      at_map[e] = abc_index(g.first + 1, g.second);
    }
  }
  Pullback pb = pullback_edc(StructMap{sc, abc, sc_map}, StructMap{at, abc, at_map}, budget);

  Composite out;
  out.interaction = pb.edc;
  const int n = pb.edc.size();
  out.interaction_map = StructMap{pb.edc, abc, std::vector<int>(n)};
  std::vector<int> ps(n, -1), pt(n, -1);
  for (int e = 0; e < n; ++e) {
    int img = sc_map[pb.proj1.mapping[e]];
    out.interaction_map.mapping[e] = img;
    if (split_tag(abc.name(img))->first != 1) out.visible |= bit(e);
    auto s1 = *split_tag(sc.name(pb.proj1.mapping[e]));
    if (s1.first == 0) ps[e] = sigma.inner().require_index(s1.second);
    auto t1 = *split_tag(at.name(pb.proj2.mapping[e]));
    if (t1.first == 1) pt[e] = tau.inner().require_index(t1.second);
  }
  out.proj_s = StructMap{pb.edc, sigma.inner(), ps};
  out.proj_t = StructMap{pb.edc, tau.inner(), pt};

  Structure game = union_of({a_part, c_part}, Kind::kPrime, budget);
  Structure hidden = hide_events(pb.edc, out.visible);
  std::vector<int> m;
  std::vector<Polarity> pol;
  for (int e : members(out.visible)) {
    auto t = *split_tag(abc.name(out.interaction_map.mapping[e]));
    int g = game.require_index((t.first == 0 ? "0." : "1.") + t.second);
    m.push_back(g);
    pol.push_back(game.pol(g));
  }
  Structure inner = tidy_classes(
      hidden.renamed(p_names(hidden.size())).with_polarity(pol).with_kind(Kind::kEdc));
  out.result = make_strategy(game, inner, m);
  return out;
}

Strategy compose(const Strategy& sigma, const Strategy& tau, const Budget& budget) {
  return compose_full(sigma, tau, budget).result;
}

Strategy conjunction(const Strategy& s, const Strategy& t, const Budget& budget) {
  if (!same_structure(s.game(), t.game())) throw UsageError("conjunction needs a common game");
  Pullback pb = pullback_edc(s.sigma, t.sigma, budget);
  std::vector<int> m;
  std::vector<Polarity> pol;
  for (int e = 0; e < pb.edc.size(); ++e) {
    m.push_back(s.sigma.mapping[pb.proj1.mapping[e]]);
    pol.push_back(s.game().pol(m.back()));
  }
  Structure inner = tidy_classes(pb.edc.renamed(p_names(pb.edc.size())).with_polarity(pol));
  return make_strategy(s.game(), inner, m);
}

ValidationReport check_strategy(const Strategy& s, const Budget& budget) {
  ValidationReport r;
  const Structure& in = s.inner();
  const Structure& g = s.game();
  const auto& m = s.sigma.mapping;
  auto name = [&](int e) { return in.name(e); };

  bool pre = s.sigma.total() && in.has_polarity() && g.has_polarity() &&
             in.kind() != Kind::kGeneral;
  if (pre) {
    for (int e = 0; e < in.size(); ++e) {
      if (in.pol(e) != g.pol(m[e])) pre = false;
    }
    pre = pre && validate_map(s.sigma, budget).ok();
  }
  r.properties["pre_strategy"] = pre;
  if (!pre) {
    r.violations.push_back({"pre-strategy", {{"reason", "not a total polarity-preserving map"}}});
    return r;
  }

  bool innocence = true;
  auto game_covers = g.covers();
  std::set<std::pair<int, int>> gc(game_covers.begin(), game_covers.end());
  for (auto [a, b] : in.covers()) {
    if (in.pol(a) == Polarity::kPlus || in.pol(b) == Polarity::kMinus) {
      if (!gc.count({m[a], m[b]})) {
        innocence = false;
        r.violations.push_back({"innocence", {{"edge", {name(a), name(b)}}}});
        break;
      }
    }
  }
  r.properties["innocence"] = innocence;

  bool receptive = true;
  const auto cs = all_configs(in, budget);
  for (Mask x : cs) {
    Mask gx = s.sigma.image(x);
    Mask ext = in.enabled_at(x);
    for (int a : members(g.enabled_at(gx) & g.polarity_mask(Polarity::kMinus))) {
      bool found = false;
      for (int e : members(ext)) {
        if (m[e] == a) found = true;
      }
      if (!found) {
        receptive = false;
        r.violations.push_back(
            {"exists-receptivity", {{"config", in.names_of(x)}, {"move", g.name(a)}}});
        break;
      }
    }
    if (!receptive) break;
  }
  r.properties["exists_receptivity"] = receptive;

  kernels::check_sweep_budget(in.size(), budget.max_subsets);
  const Mask plus = in.polarity_mask(Polarity::kPlus);
  // Consistency of an edc is decided on down-closures, so the game side is
  // checked on the image of [X].
  auto bad = kernels::first_failure(in.size(), [&](Mask x) {
    if (in.consistent(x)) return true;
    const Mask dx = in.down_closure(x);
    return !(g.consistent(s.sigma.image(dx)) && in.consistent(dx & plus));
  });
  r.properties["plus_consistency"] = !bad.has_value();
  if (bad) {
    r.violations.push_back({"plus-consistency", {{"set", in.names_of(*bad)}}});
  }

  bool nonred = true;
  for (int a = 0; a < in.size() && nonred; ++a) {
    for (int b = a + 1; b < in.size(); ++b) {
      if (in.pol(a) == Polarity::kMinus && in.pol(b) == Polarity::kMinus &&
          in.equivalent(a, b) &&
          (in.down(a) & ~bit(a)) == (in.down(b) & ~bit(b))) {
        nonred = false;
        r.violations.push_back({"non-redundancy", {{"events", {name(a), name(b)}}}});
        break;
      }
    }
  }
  r.properties["non_redundancy"] = nonred;

  bool saturated = true;
  for (int a = 0; a < in.size() && saturated; ++a) {
    for (int b = a + 1; b < in.size(); ++b) {
      if (m[a] == m[b] && !in.equivalent(a, b)) {
        saturated = false;
        r.violations.push_back({"equivalence-saturation", {{"events", {name(a), name(b)}}}});
        break;
      }
    }
  }
  r.properties["equivalence_saturation"] = saturated;
  return r;
}

bool is_strategy(const Strategy& s, const Budget& budget) {
  return check_strategy(s, budget).ok();
}

bool is_deterministic(const Structure& s, const Budget& budget) {
  kernels::check_sweep_budget(s.size(), budget.max_subsets);
  const Mask minus = s.polarity_mask(Polarity::kMinus);
  return !kernels::first_failure(s.size(), [&](Mask x) {
            return !s.consistent(s.down_closure(x) & minus) || s.consistent(x);
          }).has_value();
}

bool is_deterministic_covers(const Structure& s, const Budget& budget) {
  const Mask plus = s.polarity_mask(Polarity::kPlus);
  for (Mask x : all_configs(s, budget)) {
    Mask en = s.enabled_at(x);
    for (int a : members(en & plus)) {
      for (int b : members(en & ~bit(a))) {
        if (!s.is_config(x | bit(a) | bit(b))) return false;
      }
    }
  }
  return true;
}

std::optional<StructMap> find_iso(const Structure& p, const Structure& q,
                                  const std::vector<std::string>& colour_p,
                                  const std::vector<std::string>& colour_q,
                                  const Budget& budget) {
  if (p.kind() == Kind::kGeneral || q.kind() == Kind::kGeneral) {
    throw UsageError("find_iso compares non-general structures");
  }
  if (p.size() != q.size() || p.has_polarity() != q.has_polarity()) return std::nullopt;
  const int n = p.size();
  auto cp = p.minimal_conflicts(budget);
  auto cq = q.minimal_conflicts(budget);
  if (cp.size() != cq.size()) return std::nullopt;
  std::vector<int> conflict_deg_p(n, 0), conflict_deg_q(n, 0);
  for (Mask c : cp) for (int e : members(c)) ++conflict_deg_p[e];
  for (Mask c : cq) for (int e : members(c)) ++conflict_deg_q[e];
  auto sig = [&](const Structure& s, const std::vector<std::string>& col,
                 const std::vector<int>& deg, int e) {
    std::string out = col.empty() ? "" : col[e];
    out += "|" + std::to_string(popcount(s.down(e))) + "|" +
           std::to_string(popcount(s.up(e))) + "|" +
           std::to_string(popcount(s.class_mask(e))) + "|" + std::to_string(deg[e]);
    if (s.has_polarity()) out += s.pol(e) == Polarity::kPlus ? "+" : "-";
    return out;
  };
  std::vector<std::string> sp(n), sq(n);
  for (int e = 0; e < n; ++e) {
    sp[e] = sig(p, colour_p, conflict_deg_p, e);
    sq[e] = sig(q, colour_q, conflict_deg_q, e);
  }
  {
    auto a = sp, b = sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::set<Mask> conflicts_q(cq.begin(), cq.end());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return popcount(p.down(a)) < popcount(p.down(b));
  });
  std::vector<int> f(n, -1);
  Mask used = 0;
  std::function<bool(int)> go = [&](int k) {
    if (k == n) {
      for (Mask c : cp) {
        Mask img = 0;
        for (int e : members(c)) img |= bit(f[e]);
        if (!conflicts_q.count(img)) return false;
      }
      return true;
    }
    const int e = order[k];
    for (int t = 0; t < n; ++t) {
      if (has(used, t) || sp[e] != sq[t]) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        int d = order[j];
        if (p.leq(d, e) != q.leq(f[d], t) || p.leq(e, d) != q.leq(t, f[d]) ||
            p.equivalent(d, e) != q.equivalent(f[d], t)) {
          ok = false;
        }
      }
      if (!ok) continue;
      f[e] = t;
      used |= bit(t);
      if (go(k + 1)) return true;
      used &= ~bit(t);
      f[e] = -1;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return StructMap{p, q, f};
}

std::optional<StructMap> find_strategy_iso(const Strategy& s_in, const Strategy& t_in,
                                           const std::map<std::string, std::string>& translate,
                                           const Budget& budget) {
  const Strategy s = as_tagged(s_in);
  const Strategy t = as_tagged(t_in);
  std::vector<std::string> cs, ct;
  for (int e = 0; e < s.inner().size(); ++e) {
    std::string g = s.game().name(s.sigma.mapping[e]);
    if (!translate.empty()) {
      auto it = translate.find(g);
      if (it == translate.end()) throw UsageError("no translation for game event " + g);
      g = it->second;
    }
    cs.push_back(g);
  }
  for (int e = 0; e < t.inner().size(); ++e) ct.push_back(t.game().name(t.sigma.mapping[e]));
  return find_iso(s.inner(), t.inner(), cs, ct, budget);
}

std::vector<StructMap> mediating_maps(const Cone& cone, const Structure& q,
                                      const StructMap& q_to_a, const StructMap& q_to_b,
                                      const Budget& budget) {
  const Structure& d = cone.apex;
  std::vector<std::vector<int>> cand(d.size());
  for (int e = 0; e < d.size(); ++e) {
    for (int t = 0; t < q.size(); ++t) {
      if (q_to_a.mapping[t] == cone.to_a.mapping[e] &&
          q_to_b.mapping[t] == cone.to_b.mapping[e]) {
        cand[e].push_back(t);
      }
    }
  }
  std::vector<StructMap> out;
  std::vector<int> h(d.size(), -1);
  std::function<void(int)> go = [&](int e) {
    if (e == d.size()) {
      StructMap m{d, q, h};
      if (validate_map(m, budget).ok()) out.push_back(m);
      return;
    }
    for (int t : cand[e]) {
      h[e] = t;
      go(e + 1);
    }
    h[e] = -1;
  };
  go(0);
  return out;
}

ReplayResult replay_no_pullback(const Cone& d, const Cone& e, const Cone& f,
                                const Structure& q, const StructMap& q_to_a,
                                const StructMap& q_to_b, const Budget& budget) {
  auto hd = mediating_maps(d, q, q_to_a, q_to_b, budget);
  auto he = mediating_maps(e, q, q_to_a, q_to_b, budget);
  auto hf = mediating_maps(f, q, q_to_a, q_to_b, budget);
  // h_D . k_D = h_E = h_F . k_F, with k_D and k_F given by the lettering.
  auto agrees = [&](const StructMap& x, const StructMap& ex) {
    for (int v = 0; v < e.apex.size(); ++v) {
      if (x.mapping[x.source.require_index(e.apex.name(v))] != ex.mapping[v]) return false;
    }
    return true;
  };
  ReplayResult res;
  int triples = 0;
  for (const auto& a : hd) {
    for (const auto& b : he) {
      if (!agrees(a, b)) continue;
      for (const auto& c : hf) {
        if (agrees(c, b)) ++triples;
      }
    }
  }
  res.satisfiable = triples > 0;
  auto images = [&](const std::vector<StructMap>& ms, const std::string& ev) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& m : ms) {
      auto i = m.source.index_of(ev);
      if (i) out.push_back(q.name(m.mapping[*i]));
    }
    return out;
  };
  res.report = {{"mediating_D", hd.size()},
                {"mediating_E", he.size()},
                {"mediating_F", hf.size()},
                {"compatible_triples", triples},
                {"h_D(a1)", images(hd, "a1")},
                {"h_F(a1)", images(hf, "a1")},
                {"h_D(b2)", images(hd, "b2")},
                {"h_F(b1)", images(hf, "b1")},
                {"satisfiable", res.satisfiable}};
  return res;
}

}  // namespace esg
