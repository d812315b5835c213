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

#include "esg/probability.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "esg/errors.hpp"
#include "esg/kernels.hpp"
#include "esg/realisation.hpp"

namespace esg {

using boost::multiprecision::cpp_int;

std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

Rational parse_rational(const std::string& s) {
  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    return i < t.size() &&
           std::all_of(t.begin() + i, t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!is_int(a) || !is_int(b)) throw FormatError("bad rational '" + s + "'");
    cpp_int den(b);
    if (den == 0) throw FormatError("zero denominator in '" + s + "'");
    return Rational(cpp_int(a), den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string a = s.substr(0, dot), b = s.substr(dot + 1);
    if (a.empty() || a == "-") a += "0";
    if (!is_int(a) || b.empty() || !is_int(b) || b[0] == '-') {
      throw FormatError("bad rational '" + s + "'");
    }
    cpp_int scale = 1;
    for (std::size_t i = 0; i < b.size(); ++i) scale *= 10;
    cpp_int whole(a);
    cpp_int frac(b);
    bool neg = a[0] == '-';
    return Rational(whole) + Rational(neg ? cpp_int(-frac) : frac, scale);
  }
  if (!is_int(s)) throw FormatError("bad rational '" + s + "'");
  return Rational(cpp_int(s));
}

const Rational& Valuation::at(Mask x) const {
  auto it = values_.find(x);
  if (it == values_.end()) {
    throw UsageError("valuation has no value for configuration mask " + std::to_string(x));
  }
  return it->second;
}

Valuation complete_by_lmc(const Structure& s, const Valuation& given, const Budget& budget) {
  Valuation out;
  const Mask minus = s.polarity_mask(Polarity::kMinus);
  for (Mask y : all_configs(s, budget)) {
    if (given.has(y)) {
      out.set(y, given.at(y));
      continue;
    }
    std::optional<Rational> v;
    for (int e : members(y & minus)) {
      Mask x = y & ~bit(e);
      if (!s.is_config(x)) continue;
      const Rational& w = out.at(x);
      if (v && *v != w) {
        throw UsageError("lmc completion is ambiguous at " +
                         nlohmann::json(s.names_of(y)).dump());
      }
      v = w;
    }
    if (!v) {
      throw UsageError("valuation leaves configuration " +
                       nlohmann::json(s.names_of(y)).dump() + " undetermined");
    }
    out.set(y, *v);
  }
  return out;
}

Valuation constant_one(const Structure& s, const Budget& budget) {
  Valuation v;
  for (Mask x : all_configs(s, budget)) v.set(x, 1);
  return v;
}

Rational drop(const Valuation& v, Mask y, const std::vector<Mask>& xs) {
  for (Mask x : xs) {
    if (!subset(y, x)) throw UsageError("drop needs y contained in every x");
  }
  Rational d = v.at(y);
  const std::size_t n = xs.size();
  if (n >= 63) throw ResourceError("drop over too many configurations");
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
    Mask u = 0;
    int k = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i >> j & 1) {
        u |= xs[j];
        ++k;
      }
    }
    if (!v.has(u)) continue;
    if (k % 2 == 1) {
      d -= v.at(u);
    } else {
      d += v.at(u);
    }
  }
  return d;
}

namespace {

nlohmann::json names_list(const Structure& s, const std::vector<Mask>& xs) {
  nlohmann::json out = nlohmann::json::array();
  for (Mask x : xs) out.push_back(s.names_of(x));
  return out;
}

// Shared checks: domain, range, normalisation. Returns the configurations.
std::vector<Mask> check_table(const Structure& s, const Valuation& v, ValidationReport& r,
                              const Budget& budget) {
  auto cs = all_configs(s, budget);
  std::set<Mask> cset(cs.begin(), cs.end());
  for (Mask x : cs) {
    if (!v.has(x)) {
      throw UsageError("valuation is partial: no value for " +
                       nlohmann::json(s.names_of(x)).dump());
    }
  }
  for (const auto& [x, q] : v.values()) {
    if (!cset.count(x)) {
      r.violations.push_back({"domain", {{"set", s.names_of(x)}}});
    } else if (q < 0 || q > 1) {
      r.violations.push_back({"range", {{"config", s.names_of(x)}, {"value", to_string(q)}}});
    }
  }
  bool normalized = v.at(0) == 1;
  r.properties["normalized"] = normalized;
  if (!normalized) {
    r.violations.push_back({"normalized", {{"value", to_string(v.at(0))}}});
  }
  return cs;
}

// First (y; xs) over the candidate extensions of each y with a negative drop.
bool sweep_drops(const Structure& s, const Valuation& v, const std::vector<Mask>& cs,
                 const std::function<bool(Mask, Mask)>& extends, ValidationReport& r,
                 const std::string& axiom, const Budget& budget) {
  std::uint64_t spent = 0;
  for (Mask y : cs) {
    std::vector<Mask> ext;
    for (Mask x : cs) {
      if (x != y && subset(y, x) && extends(y, x)) ext.push_back(x);
    }
    if (ext.empty()) continue;
    if (ext.size() >= 40) throw ResourceError("drop sweep exceeds budget");
    spent += std::uint64_t{1} << ext.size();
    if (spent > budget.max_subsets) throw ResourceError("drop sweep exceeds budget");
    const int n = static_cast<int>(ext.size());
    auto bad = kernels::first_failure(n, [&](Mask sel) {
      if (sel == 0) return true;
      std::vector<Mask> xs;
      for (int j : members(sel)) xs.push_back(ext[j]);
      return drop(v, y, xs) >= 0;
    });
    if (bad) {
      std::vector<Mask> xs;
      for (int j : members(*bad)) xs.push_back(ext[j]);
      r.violations.push_back({axiom,
                              {{"y", s.names_of(y)},
                               {"xs", names_list(s, xs)},
                               {"drop", to_string(drop(v, y, xs))}}});
      return false;
    }
  }
  return true;
}

}  // namespace

ValidationReport validate_valuation(const Structure& s, const Valuation& v,
                                    const Budget& budget) {
  if (!s.has_polarity()) throw UsageError("valuations with Opponent need polarity");
  ValidationReport r;
  auto cs = check_table(s, v, r, budget);
  const Mask minus = s.polarity_mask(Polarity::kMinus);
  const Mask plus = s.polarity_mask(Polarity::kPlus);

  bool lmc = true;
  for (Mask x : cs) {
    for (int e : members(s.enabled_at(x) & minus)) {
      if (v.at(x) != v.at(x | bit(e))) {
        lmc = false;
        r.violations.push_back({"lmc",
                                {{"x", s.names_of(x)},
                                 {"y", s.names_of(x | bit(e))},
                                 {"values", {to_string(v.at(x)), to_string(v.at(x | bit(e)))}}}});
        break;
      }
    }
    if (!lmc) break;
  }
  r.properties["lmc"] = lmc;

  bool drops = sweep_drops(
      s, v, cs, [&](Mask y, Mask x) { return subset(x & ~y, plus); }, r, "plus-drop", budget);
  r.properties["plus_drop"] = drops;

  // Limited Markov condition, multiplicatively.
  bool markov = true;
  nlohmann::json markov_witness;
  for (Mask x : cs) {
    Mask en = s.enabled_at(x);
    for (int p : members(en & plus)) {
      for (int m : members(en & minus)) {
        Mask both = x | bit(p) | bit(m);
        if (!v.has(both)) continue;
        if (v.at(both) * v.at(x) != v.at(x | bit(p)) * v.at(x | bit(m))) {
          if (markov) {
            markov_witness = {{"x", s.names_of(x)}, {"plus", s.name(p)}, {"minus", s.name(m)}};
          }
          markov = false;
        }
      }
    }
  }
  r.properties["limited_markov"] = markov;
  if (!markov) r.properties["limited_markov_witness"] = markov_witness;
  return r;
}

ValidationReport validate_valuation_plain(const Structure& s, const Valuation& v,
                                          const Budget& budget) {
  ValidationReport r;
  auto cs = check_table(s, v, r, budget);
  bool drops = sweep_drops(
      s, v, cs, [](Mask, Mask) { return true; }, r, "drop", budget);
  r.properties["drop"] = drops;
  return r;
}

std::optional<Rational> conditional(const Valuation& v, Mask x, Mask y) {
  if (!subset(x, y)) throw UsageError("conditional needs x contained in y");
  const Rational& vx = v.at(x);
  if (vx == 0) return std::nullopt;
  return v.at(y) / vx;
}

ProbComposite compose_valuations(const ProbStrategy& s, const ProbStrategy& t,
                                 const Budget& budget) {
  ProbComposite out;
  out.composite = compose_full(s.strategy, t.strategy, budget);
  const Composite& c = out.composite;
  const Structure& inner = c.result.inner();
  std::vector<int> at = members(c.visible);
  Valuation v;
  for (Mask x : all_configs(inner, budget)) {
    Mask big = 0;
    for (int e : members(x)) big |= bit(at[e]);
    big = c.interaction.down_closure(big);
    Mask xs = c.proj_s.image(big);
    Mask xt = c.proj_t.image(big);
    if (!s.valuation.has(xs) || !t.valuation.has(xt)) {
      throw InternalError("projection of a composite configuration has no value");
    }
    v.set(x, s.valuation.at(xs) * t.valuation.at(xt));
  }
  out.result = {c.result, v};
  auto report = validate_valuation(inner, v, budget);
  if (!report.ok()) {
    throw InternalError("composed valuation fails validation: " + report.to_json().dump());
  }
  return out;
}

bool is_rigid(const StructMap& f) {
  for (int b = 0; b < f.source.size(); ++b) {
    for (int a : members(f.source.down(b))) {
      if (f.mapping[a] < 0 || f.mapping[b] < 0) continue;
      if (!f.target.leq(f.mapping[a], f.mapping[b])) return false;
    }
  }
  return true;
}

namespace {

void require_2cell(const StructMap& f, const Strategy& from, const Strategy& to,
                   const Budget& budget) {
  if (!same_structure(f.source, from.inner()) || !same_structure(f.target, to.inner())) {
    throw UsageError("2-cell endpoints do not match the strategies");
  }
  if (!same_structure(from.game(), to.game())) {
    throw UsageError("2-cell strategies must share a game");
  }
  if (!f.total()) throw UsageError("2-cell map must be total");
  if (!is_rigid(f)) throw UsageError("2-cell map is not rigid");
  if (!validate_map(f, budget).ok()) throw UsageError("2-cell map is not a map");
  for (int e = 0; e < f.source.size(); ++e) {
    if (from.sigma.mapping[e] != to.sigma.mapping[f.mapping[e]]) {
      throw UsageError("map does not commute with the strategies");
    }
  }
}

}  // namespace

Valuation push_forward(const StructMap& f, const Strategy& from, const Strategy& to,
                       const Valuation& v, const Budget& budget) {
  require_2cell(f, from, to, budget);
  Valuation out;
  for (Mask y : all_configs(f.target, budget)) out.set(y, 0);
  for (Mask x : all_configs(f.source, budget)) {
    Mask y = f.image(x);
    out.set(y, out.at(y) + v.at(x));
  }
  return out;
}

bool is_2cell(const StructMap& f, const Strategy& from, const Strategy& to,
              const Valuation& v, const Valuation& v_to, const Budget& budget) {
  Valuation pushed = push_forward(f, from, to, v, budget);
  for (const auto& [y, q] : pushed.values()) {
    if (q > v_to.at(y)) return false;
  }
  return true;
}

ProbStrategy bottom(const Structure& game, const Budget& budget) {
  require_game(game);
  const Mask minus = game.polarity_mask(Polarity::kMinus);
  Mask keep = 0;
  for (int e = 0; e < game.size(); ++e) {
    if (subset(game.down(e), minus)) keep |= bit(e);
  }
  Structure inner = restrict(game, keep).with_kind(Kind::kEdc);
  std::vector<int> m = members(keep);
  Strategy s = make_strategy(game, inner, m);
  return {s, constant_one(inner, budget)};
}

ProbStrategy prob_sum(const std::vector<ProbStrategy>& branches,
                      const std::vector<Rational>& weights, const Structure& game,
                      const Budget& budget) {
  if (branches.size() != weights.size()) {
    throw UsageError("one weight per branch is required");
  }
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw UsageError("weights must be nonnegative");
    total += w;
  }
  if (total > 1) throw UsageError("weights sum to " + to_string(total) + " > 1");
  require_game(game);
  if (branches.empty()) return bottom(game, budget);

  const int k = static_cast<int>(branches.size());
  // Events with purely Opponent history are glued across branches by the
  // game move and the glued history below them.
  std::map<std::string, int> shared_index;
  std::vector<std::vector<std::string>> keys(k);
  std::vector<Mask> shared(k, 0);
  for (int i = 0; i < k; ++i) {
    const Strategy& st = branches[i].strategy;
    if (!same_structure(st.game(), game)) throw UsageError("branches must share the game");
    const Structure& in = st.inner();
    const Mask minus = in.polarity_mask(Polarity::kMinus);
    keys[i].assign(in.size(), "");
    std::vector<int> order(in.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return popcount(in.down(a)) < popcount(in.down(b));
    });
    for (int e : order) {
      if (!subset(in.down(e), minus)) continue;
      shared[i] |= bit(e);
      std::vector<std::string> below;
      for (int d : members(in.down(e) & ~bit(e))) below.push_back(keys[i][d]);
      std::sort(below.begin(), below.end());
      std::string key = game.name(st.sigma.mapping[e]) + "[";
      for (const auto& b : below) key += b + ",";
      keys[i][e] = key + "]";
      shared_index.emplace(keys[i][e], 0);
    }
  }
  std::vector<std::string> names;
  int next = 0;
  const int width = static_cast<int>(std::to_string(std::max<int>(0, shared_index.size() - 1)).size());
  for (auto& [key, idx] : shared_index) {
    idx = next++;
    std::string num = std::to_string(idx);
    while (static_cast<int>(num.size()) < width) num = "0" + num;
    names.push_back("s" + num);
  }
  // glob[i][e]: global event of branch event e.
  std::vector<std::vector<int>> glob(k);
  std::vector<int> image(names.size(), -1);
  std::vector<int> owner(names.size(), -1);
  for (int i = 0; i < k; ++i) {
    const Strategy& st = branches[i].strategy;
    for (int e = 0; e < st.inner().size(); ++e) {
      int g;
      if (has(shared[i], e)) {
        g = shared_index.at(keys[i][e]);
      } else {
        g = static_cast<int>(names.size());
        names.push_back("b" + std::to_string(i) + "." + st.inner().name(e));
        image.push_back(-1);
        owner.push_back(i);
      }
      image[g] = st.sigma.mapping[e];
      glob[i].push_back(g);
    }
  }
  const int n = static_cast<int>(names.size());
  if (n > kMaxEvents) throw ResourceError("sum exceeds 64 events");
  std::vector<std::pair<int, int>> causality;
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int a) { return uf[a] == a ? a : uf[a] = find(uf[a]); };
  std::vector<std::vector<int>> local(k, std::vector<int>(n, -1));
  for (int i = 0; i < k; ++i) {
    const Structure& in = branches[i].strategy.inner();
    for (auto [a, b] : in.causality()) causality.emplace_back(glob[i][a], glob[i][b]);
    for (int e = 0; e < in.size(); ++e) {
      local[i][glob[i][e]] = e;
      for (int d : members(in.class_mask(e))) uf[find(glob[i][d])] = find(glob[i][e]);
    }
  }
  // Saturation: events over the same game move are equivalent across branches.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (image[a] == image[b]) uf[find(b)] = find(a);
    }
  }
  auto consistent = [&](Mask x) {
    for (int i = 0; i < k; ++i) {
      Mask lx = 0;
      bool inside = true;
      for (int g : members(x)) {
        if (local[i][g] < 0) {
          inside = false;
          break;
        }
        lx |= bit(local[i][g]);
      }
      if (inside && branches[i].strategy.inner().consistent(lx)) return true;
    }
    return false;
  };
  Structure order = Structure::make(Kind::kEdc, names, causality, {}, {false, {}});
  std::vector<Mask> down(n);
  for (int e = 0; e < n; ++e) {
    for (int d : members(order.down(order.require_index(names[e])))) {
      down[e] |= bit(static_cast<int>(std::find(names.begin(), names.end(), order.name(d)) -
                                      names.begin()));
    }
  }
  auto conflicts = minimal_inconsistent(n, consistent, budget, down);
  std::vector<std::string> classes(n);
  std::vector<Polarity> pol(n);
  for (int g = 0; g < n; ++g) {
    classes[g] = names[find(g)];
    pol[g] = game.pol(image[g]);
  }
  Structure inner = Structure::make(Kind::kEdc, names, causality, {}, {false, conflicts},
                                    classes, pol);
  // Structure::make sorted the names; translate global indices.
  std::vector<int> m(n);
  std::vector<int> pos(n);
  for (int g = 0; g < n; ++g) {
    pos[g] = inner.require_index(names[g]);
    m[pos[g]] = image[g];
  }
  Strategy st = make_strategy(game, inner, m);
  Valuation v;
  for (Mask x : all_configs(inner, budget)) {
    int branch = -1;
    Mask lx = 0;
    for (int g = 0; g < n; ++g) {
      if (!has(x, pos[g])) continue;
      if (owner[g] >= 0) branch = owner[g];
    }
    if (branch < 0) {
      v.set(x, 1);
      continue;
    }
    for (int g = 0; g < n; ++g) {
      if (has(x, pos[g])) lx |= bit(local[branch][g]);
    }
    v.set(x, weights[branch] * branches[branch].valuation.at(lx));
  }
  return {st, v};
}

Strategy duplication(const Structure& a, const Budget& budget) {
  require_game(a);
  if (!is_race_free(a, budget)) throw UsageError("duplication needs a race-free game");
  const int n = a.size();
  if (3 * n > kMaxEvents) throw ResourceError("duplication game exceeds 64 events");
  Structure game = par(dual(a), par(a, a));
  const Mask plus = a.polarity_mask(Polarity::kPlus);
  const Mask minus = a.polarity_mask(Polarity::kMinus);
  auto cs = all_configs(a, budget);
  struct Prime {
    Mask carrier;
    std::vector<Mask> down;  // indexed by game event, valid on carrier
    int top;
  };
  std::vector<Prime> primes;
  auto lift = [&](Mask x, int tag) { return x << (tag * n); };
  for (Mask x : cs) {
    for (Mask y1 : cs) {
      for (Mask y2 : cs) {
        // Balanced: Player moves of A on the right occur on the left, and
        // Player moves of A^perp on the left occur on some right copy.
        if (!subset((y1 | y2) & plus, x)) continue;
        if (!subset(x & minus, y1 | y2)) continue;
        std::vector<int> choice_events = members(x & minus);
        const std::size_t cn = choice_events.size();
        for (std::uint64_t chi = 0; chi < (std::uint64_t{1} << cn); ++chi) {
          bool ok = true;
          std::vector<std::pair<int, int>> rel;
          for (std::size_t j = 0; j < cn; ++j) {
            int e = choice_events[j];
            int side = (chi >> j & 1) ? 2 : 1;
            if (!has(side == 1 ? y1 : y2, e)) ok = false;
            rel.emplace_back(side * n + e, e);
          }
          if (!ok) continue;
          Mask carrier = lift(x, 0) | lift(y1, 1) | lift(y2, 2);
          for (int tag = 0; tag < 3; ++tag) {
            Mask part = tag == 0 ? x : (tag == 1 ? y1 : y2);
            for (int b : members(part)) {
              for (int d : members(a.down(b) & ~bit(b))) rel.emplace_back(tag * n + d, tag * n + b);
            }
          }
          for (int e : members(y1 & plus)) rel.emplace_back(e, n + e);
          for (int e : members(y2 & plus)) rel.emplace_back(e, 2 * n + e);
          // Closure over the carrier.
          std::vector<Mask> down(3 * n, 0);
          for (int e : members(carrier)) down[e] = bit(e);
          for (auto [p, q] : rel) down[q] |= bit(p);
          bool grew = true;
          while (grew) {
            grew = false;
            for (int e : members(carrier)) {
              Mask acc = down[e];
              for (int d : members(down[e])) acc |= down[d];
              if (acc != down[e]) {
                down[e] = acc;
                grew = true;
              }
            }
          }
          bool acyclic = true;
          for (int e : members(carrier)) {
            for (int d : members(down[e] & ~bit(e))) {
              if (has(down[d], e)) acyclic = false;
            }
          }
          if (!acyclic) continue;
          for (int e : members(carrier)) {
            if (down[e] == carrier) {
              primes.push_back({carrier, down, e});
              break;
            }
          }
        }
      }
    }
  }
  std::sort(primes.begin(), primes.end(), [](const Prime& p, const Prime& q) {
    if (p.carrier != q.carrier) return canonical_less(p.carrier, q.carrier);
    if (p.top != q.top) return p.top < q.top;
    return p.down < q.down;
  });
  const int m = static_cast<int>(primes.size());
  if (m > kMaxEvents) throw ResourceError("duplication has more than 64 events");
  // d <= d' iff d sits in d' as a down-closed part with the same order.
  auto below = [&](const Prime& d, const Prime& e) {
    if (!subset(d.carrier, e.carrier)) return false;
    for (int v : members(d.carrier)) {
      if ((e.down[v]) != d.down[v]) return false;
    }
    return true;
  };
  std::vector<std::string> names;
  const int width = static_cast<int>(std::to_string(std::max(m - 1, 0)).size());
  for (int i = 0; i < m; ++i) {
    std::string num = std::to_string(i);
    while (static_cast<int>(num.size()) < width) num = "0" + num;
    names.push_back("d" + num);
  }
  std::vector<std::pair<int, int>> causality;
  std::vector<Mask> dmask(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (below(primes[i], primes[j])) {
        dmask[j] |= bit(i);
        if (i != j) causality.emplace_back(i, j);
      }
    }
  }
  auto conflicts = minimal_inconsistent(
      m,
      [&](Mask x) {
        Mask d = 0;
        for (int i : members(x)) d |= dmask[i];
        Mask tops = 0;
        for (int i : members(d)) tops |= bit(primes[i].top);
        return game.consistent(tops);
      },
      budget, dmask);
  std::vector<std::string> classes;
  std::vector<Polarity> pol;
  std::vector<int> map;
  for (int i = 0; i < m; ++i) {
    classes.push_back(game.name(primes[i].top));
    pol.push_back(game.pol(primes[i].top));
    map.push_back(primes[i].top);
  }
  Structure inner = Structure::make(Kind::kEdc, names, causality, {}, {false, conflicts},
                                    classes, pol);
  return make_strategy(game, inner, map);
}

std::optional<ProbStrategy> deterministic_prob(const Strategy& s, const Budget& budget) {
  if (!is_deterministic(s.inner(), budget)) return std::nullopt;
  return ProbStrategy{s, constant_one(s.inner(), budget)};
}

}  // namespace esg
