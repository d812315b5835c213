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

#include "esg/realisation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "esg/errors.hpp"
#include "esg/kernels.hpp"

namespace esg {

namespace {

// Reflexive-transitive closure of a relation given as (below, above) pairs.
// Returns nullopt on a cycle.
std::optional<std::vector<Mask>> closure(int n,
                                         const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Mask> down(n);
  for (int e = 0; e < n; ++e) down[e] = bit(e);
  for (auto [a, b] : pairs) down[b] |= bit(a);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < n; ++e) {
      Mask acc = down[e];
      for (int p : members(down[e])) acc |= down[p];
      if (acc != down[e]) {
        down[e] = acc;
        changed = true;
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b : members(down[a] & ~bit(a))) {
      if (has(down[b], a)) return std::nullopt;
    }
  }
  return down;
}

std::vector<Mask> downsets_of(const std::vector<Mask>& down) {
  const int n = static_cast<int>(down.size());
  std::vector<Mask> out{0};
  std::unordered_set<Mask> seen{0};
  std::vector<Mask> frontier{0};
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask x : frontier) {
      for (int e = 0; e < n; ++e) {
        if (has(x, e) || !subset(down[e] & ~bit(e), x)) continue;
        Mask y = x | bit(e);
        if (seen.insert(y).second) {
          next.push_back(y);
          out.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  kernels::sort_canonical(out);
  return out;
}

Mask label_image(const std::vector<int>& labels, Mask x) {
  Mask m = 0;
  for (int e : members(x)) m |= bit(labels[e]);
  return m;
}

bool all_downsets_in(const std::vector<Mask>& down, const std::vector<int>& labels,
                     const Family& f) {
  for (Mask d : downsets_of(down)) {
    if (!f.contains(label_image(labels, d))) return false;
  }
  return true;
}

std::vector<std::pair<int, int>> covers_of(const std::vector<Mask>& down) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(down.size());
  for (int b = 0; b < n; ++b) {
    Mask below = down[b] & ~bit(b);
    for (int a : members(below)) {
      bool immediate = true;
      for (int c : members(below & ~bit(a))) {
        if (has(down[c], a)) immediate = false;
      }
      if (immediate) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::string> generated_names(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Tries to order the blocks of a label-uniform partition so that the
// quotient is a realisation receiving the down-sets of r.
std::optional<std::vector<Mask>> quotient_order(const std::vector<Mask>& downsets,
                                                const std::vector<int>& block,
                                                const std::vector<int>& block_label,
                                                const Family& f) {
  const int k = static_cast<int>(block_label.size());
  auto bimg = [&](Mask x) {
    Mask m = 0;
    for (int e : members(x)) m |= bit(block[e]);
    return m;
  };
  std::set<Mask> ring;
  for (Mask d : downsets) ring.insert(bimg(d));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> cur(ring.begin(), ring.end());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (ring.insert(cur[i] | cur[j]).second) grew = true;
        if (ring.insert(cur[i] & cur[j]).second) grew = true;
      }
    }
  }
  for (Mask m : ring) {
    if (!f.contains(label_image(block_label, m))) return std::nullopt;
  }
  std::vector<Mask> down0(k, full_mask(k));
  for (int c = 0; c < k; ++c) {
    for (Mask m : ring) {
      if (has(m, c)) down0[c] &= m;
    }
  }
  // Blocks the ring cannot separate must be linearly ordered.
  std::vector<Mask> classes;
  Mask done = 0;
  for (int c = 0; c < k; ++c) {
    if (has(done, c)) continue;
    Mask cls = bit(c);
    for (int d = c + 1; d < k; ++d) {
      if (has(down0[c], d) && has(down0[d], c)) cls |= bit(d);
    }
    done |= cls;
    if (popcount(cls) > 1) classes.push_back(cls);
  }
  if (classes.empty()) return down0;
  std::vector<std::vector<int>> perms;
  for (Mask c : classes) perms.push_back(members(c));
  while (true) {
    std::vector<Mask> down = down0;
    for (const auto& p : perms) {
      Mask cls = 0;
      for (int x : p) cls |= bit(x);
      Mask before = 0;
      for (int x : p) {
        before |= bit(x);
        down[x] = (down0[x] & ~cls) | before;
      }
    }
    if (all_downsets_in(down, block_label, f)) return down;
    std::size_t i = 0;
    for (; i < perms.size(); ++i) {
      if (std::next_permutation(perms[i].begin(), perms[i].end())) break;
    }
    if (i == perms.size()) break;
  }
  return std::nullopt;
}

}  // namespace

Realisation Realisation::make(std::vector<std::string> elements,
                              const std::vector<std::pair<int, int>>& order,
                              std::vector<int> labels) {
  const int n = static_cast<int>(elements.size());
  if (n > kMaxEvents) throw ResourceError("realisations are limited to 64 elements");
  if (static_cast<int>(labels.size()) != n) {
    throw FormatError("every realisation element needs a label");
  }
  for (auto [a, b] : order) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw FormatError("realisation order mentions unknown element");
    }
  }
  auto down = closure(n, order);
  if (!down) throw FormatError("realisation order is cyclic");
  return from_down(std::move(elements), std::move(*down), std::move(labels));
}

Realisation Realisation::from_down(std::vector<std::string> elements,
                                   std::vector<Mask> down, std::vector<int> labels) {
  Realisation r;
  r.elements_ = std::move(elements);
  r.down_ = std::move(down);
  r.labels_ = std::move(labels);
  return r;
}

std::vector<std::pair<int, int>> Realisation::covers() const {
  return covers_of(down_);
}

std::optional<int> Realisation::top() const {
  const Mask all = full_mask(size());
  for (int e = 0; e < size(); ++e) {
    if (down_[e] == all) return e;
  }
  return std::nullopt;
}

Mask Realisation::image(Mask x) const { return label_image(labels_, x); }

std::vector<Mask> Realisation::downsets() const { return downsets_of(down_); }

Realisation Realisation::restricted(Mask keep) const {
  std::vector<int> to(size(), -1);
  std::vector<std::string> els;
  std::vector<int> labels;
  for (int e : members(keep)) {
    to[e] = static_cast<int>(els.size());
    els.push_back(elements_[e]);
    labels.push_back(labels_[e]);
  }
  std::vector<Mask> down;
  for (int e : members(keep)) {
    Mask d = 0;
    for (int x : members(down_[e] & keep)) d |= bit(to[x]);
    down.push_back(d);
  }
  return from_down(els, down, labels);
}

bool is_realisation(const Realisation& r, const Family& f) {
  for (int l : r.labels()) {
    if (l < 0 || l >= f.size()) return false;
  }
  return all_downsets_in(r.downs(), r.labels(), f);
}

std::optional<RealisationMap> non_iso_map(const Realisation& r, const Family& f) {
  if (!is_realisation(r, f)) {
    throw UsageError("not a realisation of the family");
  }
  const int n = r.size();
  std::vector<int> ident(n);
  std::iota(ident.begin(), ident.end(), 0);

  // Same carrier, strictly weaker order. Any weaker order lies below the
  // order minus one cover pair, and fewer pairs only add down-sets.
  for (auto [a, b] : r.covers()) {
    std::vector<Mask> down = r.downs();
    down[b] &= ~bit(a);
    if (all_downsets_in(down, r.labels(), f)) {
      return RealisationMap{Realisation::from_down(r.elements(), down, r.labels()),
                            ident};
    }
  }

  // Collapsing label-uniform blocks.
  const auto downsets = r.downsets();
  std::vector<int> block(n, -1);
  std::vector<int> block_label;
  std::optional<RealisationMap> found;
  std::function<void(int)> assign = [&](int i) {
    if (found) return;
    if (i == n) {
      if (static_cast<int>(block_label.size()) == n) return;
      auto order = quotient_order(downsets, block, block_label, f);
      if (order) {
        found = RealisationMap{
            Realisation::from_down(
                generated_names("b", static_cast<int>(block_label.size())),
                *order, block_label),
            block};
      }
      return;
    }
    for (int b = 0; b < static_cast<int>(block_label.size()); ++b) {
      if (block_label[b] != r.label(i)) continue;
      block[i] = b;
      assign(i + 1);
      if (found) return;
    }
    block[i] = static_cast<int>(block_label.size());
    block_label.push_back(r.label(i));
    assign(i + 1);
    block_label.pop_back();
  };
  assign(0);
  return found;
}

bool is_extremal(const Realisation& r, const Family& f) {
  return !non_iso_map(r, f).has_value();
}

namespace {

struct CanonSearch {
  const Realisation& r;
  int n;
  std::vector<std::int64_t> best;
  std::vector<int> best_perm;
  std::vector<int> perm;
  std::vector<int> pos;
  std::vector<std::int64_t> code;

  explicit CanonSearch(const Realisation& rr)
      : r(rr), n(rr.size()), pos(rr.size(), -1) {}

  Mask pred_positions(int e) const {
    Mask m = 0;
    for (int x : members(r.down(e) & ~bit(e))) m |= bit(pos[x]);
    return m;
  }

  void run(Mask used) {
    const int depth = static_cast<int>(perm.size());
    if (!best.empty()) {
      // Prune prefixes that already exceed the best code.
      for (std::size_t i = 0; i < code.size(); ++i) {
        if (code[i] != best[i]) {
          if (code[i] > best[i]) return;
          break;
        }
      }
    }
    if (depth == n) {
      if (best.empty() || code < best) {
        best = code;
        best_perm = perm;
      }
      return;
    }
    std::vector<int> avail;
    std::pair<std::int64_t, std::int64_t> lo{INT64_MAX, INT64_MAX};
    for (int e = 0; e < n; ++e) {
      if (has(used, e) || !subset(r.down(e) & ~bit(e), used)) continue;
      std::pair<std::int64_t, std::int64_t> key{r.label(e),
                                                 static_cast<std::int64_t>(pred_positions(e))};
      if (key < lo) {
        lo = key;
        avail.clear();
      }
      if (key == lo) avail.push_back(e);
    }
    for (int e : avail) {
      pos[e] = depth;
      perm.push_back(e);
      code.push_back(lo.first);
      code.push_back(lo.second);
      run(used | bit(e));
      code.pop_back();
      code.pop_back();
      perm.pop_back();
      pos[e] = -1;
    }
  }
};

}  // namespace

std::string canonical_key(const Realisation& r) {
  CanonSearch s(r);
  s.run(0);
  std::string key = std::to_string(r.size());
  for (auto v : s.best) key += "," + std::to_string(v);
  return key;
}

Realisation canonical_form(const Realisation& r) {
  CanonSearch s(r);
  s.run(0);
  const int n = r.size();
  std::vector<int> at(n);
  for (int i = 0; i < n; ++i) at[s.best_perm[i]] = i;
  std::vector<Mask> down(n);
  std::vector<int> labels(n);
  for (int e = 0; e < n; ++e) {
    Mask d = 0;
    for (int x : members(r.down(e))) d |= bit(at[x]);
    down[at[e]] = d;
    labels[at[e]] = r.label(e);
  }
  return Realisation::from_down(generated_names("r", n), down, labels);
}

bool isomorphic(const Realisation& a, const Realisation& b) {
  return a.size() == b.size() && canonical_key(a) == canonical_key(b);
}

namespace {

// Down-closed sets of primes whose glued realisation is valid.
std::vector<Mask> prime_configs(const std::vector<int>& top_label,
                                const std::vector<Mask>& below, const Family& f,
                                int max_size, const Budget& budget) {
  const int n = static_cast<int>(below.size());
  std::vector<Mask> out{0};
  std::unordered_set<Mask> seen{0};
  std::vector<Mask> frontier{0};
  if (!f.contains(0)) return {};
  for (int k = 0; k < max_size && !frontier.empty(); ++k) {
    std::vector<Mask> next;
    for (Mask x : frontier) {
      for (int p = 0; p < n; ++p) {
        if (has(x, p) || !subset(below[p] & ~bit(p), x)) continue;
        Mask y = x | bit(p);
        if (seen.count(y)) continue;
        if (!f.contains(label_image(top_label, y))) continue;
        bool ok = true;
        for (int q : members(y)) {
          // Removing any maximal element must leave a valid set.
          bool maximal = true;
          for (int o : members(y & ~bit(q))) {
            if (has(below[o], q)) maximal = false;
          }
          if (maximal && !seen.count(y & ~bit(q))) ok = false;
        }
        if (!ok) continue;
        seen.insert(y);
        next.push_back(y);
        out.push_back(y);
      }
    }
    if (out.size() > budget.max_subsets) {
      throw ResourceError("extremal enumeration exceeds budget");
    }
    frontier = std::move(next);
  }
  kernels::sort_canonical(out);
  return out;
}

Realisation glued(const std::vector<int>& top_label, const std::vector<Mask>& below,
                  Mask x) {
  std::vector<int> idx = members(x);
  std::vector<int> at(below.size(), -1);
  for (std::size_t i = 0; i < idx.size(); ++i) at[idx[i]] = static_cast<int>(i);
  std::vector<Mask> down;
  std::vector<int> labels;
  for (int p : idx) {
    Mask d = 0;
    for (int q : members(below[p] & x)) d |= bit(at[q]);
    down.push_back(d);
    labels.push_back(top_label[p]);
  }
  return Realisation::from_down(generated_names("r", static_cast<int>(idx.size())),
                                down, labels);
}

}  // namespace

PrimeExtremals prime_extremals(const Family& f, const Budget& budget) {
  std::vector<Realisation> primes;
  std::vector<std::string> keys;
  std::vector<Mask> below;
  std::vector<int> top_label;
  std::unordered_set<std::string> tried;
  bool changed = true;
  while (changed) {
    changed = false;
    auto xs = prime_configs(top_label, below, f, static_cast<int>(below.size()), budget);
    for (Mask x : xs) {
      Realisation base = glued(top_label, below, x);
      for (int a = 0; a < f.size(); ++a) {
        const int n = base.size();
        std::vector<Mask> down = base.downs();
        down.push_back(full_mask(n + 1));
        std::vector<int> labels = base.labels();
        labels.push_back(a);
        auto cand = Realisation::from_down(generated_names("r", n + 1), down, labels);
        if (!f.contains(cand.image(full_mask(n + 1)))) continue;
        std::string key = canonical_key(cand);
        if (!tried.insert(key).second) continue;
        if (!is_realisation(cand, f) || !is_extremal(cand, f)) continue;
        if (primes.size() >= static_cast<std::size_t>(kMaxEvents) ||
            n + 1 > budget.max_iso_nodes) {
          throw ResourceError("prime extremals exceed the enumeration budget");
        }
        primes.push_back(canonical_form(cand));
        keys.push_back(key);
        top_label.push_back(a);
        below.push_back(x | bit(static_cast<int>(primes.size()) - 1));
        changed = true;
      }
    }
  }
  // Canonical order: by carrier size, then key.
  const int n = static_cast<int>(primes.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (primes[a].size() != primes[b].size()) return primes[a].size() < primes[b].size();
    return keys[a] < keys[b];
  });
  std::vector<int> at(n);
  for (int i = 0; i < n; ++i) at[order[i]] = i;
  PrimeExtremals out;
  for (int i = 0; i < n; ++i) {
    out.primes.push_back(primes[order[i]]);
    Mask m = 0;
    for (int q : members(below[order[i]])) m |= bit(at[q]);
    out.below.push_back(m);
  }
  return out;
}

std::vector<Extremal> enumerate_extremals(const Family& f, int max_size,
                                          const Budget& budget) {
  auto pe = prime_extremals(f, budget);
  std::vector<int> top_label;
  for (const auto& p : pe.primes) top_label.push_back(p.label(*p.top()));
  std::vector<std::pair<std::string, Extremal>> keyed;
  for (Mask x : prime_configs(top_label, pe.below, f, max_size, budget)) {
    if (x == 0) continue;
    Realisation r = glued(top_label, pe.below, x);
    bool prime = r.top().has_value();
    keyed.push_back({canonical_key(r), {canonical_form(r), prime}});
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.second.realisation.size() != b.second.realisation.size()) {
      return a.second.realisation.size() < b.second.realisation.size();
    }
    return a.first < b.first;
  });
  std::vector<Extremal> out;
  for (auto& [k, e] : keyed) out.push_back(std::move(e));
  return out;
}

namespace {

bool antichain_with(const std::vector<Mask>& down, Mask z, int p) {
  if (down[p] & z) return false;
  for (int q : members(z)) {
    if (has(down[q], p)) return false;
  }
  return true;
}

}  // namespace

std::vector<Mask> minimal_inconsistent(int n,
                                       const std::function<bool(Mask)>& consistent,
                                       const Budget& budget,
                                       const std::vector<Mask>& down) {
  std::set<Mask> conflicts;
  if (!consistent(0)) return {0};
  std::unordered_set<Mask> seen{0};
  std::vector<Mask> frontier{0};
  std::size_t total = 1;
  while (!frontier.empty()) {
    std::vector<Mask> next;
    std::unordered_set<Mask> tested;
    for (Mask z : frontier) {
      for (int p = 0; p < n; ++p) {
        Mask y = z | bit(p);
        if (y == z || seen.count(y) || !tested.insert(y).second) continue;
        if (!down.empty() && !antichain_with(down, z, p)) continue;
        if (consistent(y)) {
          seen.insert(y);
          next.push_back(y);
        } else {
          bool minimal = true;
          for (int q : members(y)) {
            if (!seen.count(y & ~bit(q))) minimal = false;
          }
          if (minimal) conflicts.insert(y);
        }
      }
    }
    total += next.size();
    if (total > budget.max_subsets) {
      throw ResourceError("consistency enumeration exceeds budget");
    }
    frontier = std::move(next);
  }
  std::vector<Mask> out(conflicts.begin(), conflicts.end());
  kernels::sort_canonical(out);
  return out;
}

ErResult er(const Family& f, const Budget& budget) {
  ErResult res;
  res.family = f;
  res.primes = prime_extremals(f, budget);
  const auto& ps = res.primes.primes;
  const int n = static_cast<int>(ps.size());
  std::vector<std::string> names, classes;
  std::vector<std::pair<int, int>> causality;
  for (int k = 0; k < n; ++k) {
    int top = ps[k].label(*ps[k].top());
    res.max.push_back(top);
    names.push_back("p" + std::to_string(k) + ":" + f.name(top));
    classes.push_back(f.class_labels()[top]);
    for (int q : members(res.primes.below[k] & ~bit(k))) causality.emplace_back(q, k);
  }
  std::vector<Mask> down(n);
  for (int k = 0; k < n; ++k) down[k] = res.primes.below[k];
  auto conflicts = minimal_inconsistent(
      n,
      [&](Mask x) {
        Mask d = 0;
        for (int p : members(x)) d |= down[p];
        return f.contains(label_image(res.max, d));
      },
      budget, down);
  // Names sort like p10 < p2, so keep the canonical numbering stable by
  // zero-padding when there are ten or more primes.
  if (n >= 10) {
    for (int k = 0; k < n; ++k) {
      std::string num = std::to_string(k);
      while (num.size() < std::to_string(n - 1).size()) num = "0" + num;
      names[k] = "p" + num + ":" + f.name(res.max[k]);
    }
  }
  res.ese = Structure::make(Kind::kEse, names, causality, {}, {false, conflicts},
                            classes);
  return res;
}

ErResult er(const Structure& general, const Budget& budget) {
  if (general.kind() != Kind::kGeneral) {
    throw UsageError("er expects a general event structure");
  }
  return er(family_of(general, budget), budget);
}

Structure ges_of(const Structure& s, const Budget& budget) {
  std::vector<std::string> labels = s.class_labels();
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const int k = static_cast<int>(labels.size());
  std::vector<int> cls(s.size());
  std::vector<Mask> members_of(k, 0);
  for (int e = 0; e < s.size(); ++e) {
    cls[e] = static_cast<int>(std::lower_bound(labels.begin(), labels.end(),
                                               s.class_label(e)) - labels.begin());
    members_of[cls[e]] |= bit(e);
  }
  auto class_image = [&](Mask x) {
    Mask m = 0;
    for (int e : members(x)) m |= bit(cls[e]);
    return m;
  };
  auto consistent = [&](Mask x) {
    // Some transversal of the classes in x is consistent.
    std::vector<int> cs = members(x);
    std::function<bool(std::size_t, Mask)> pick = [&](std::size_t i, Mask acc) {
      if (!s.consistent(acc)) return false;
      if (i == cs.size()) return true;
      for (int e : members(members_of[cs[i]])) {
        if (pick(i + 1, acc | bit(e))) return true;
      }
      return false;
    };
    return pick(0, 0);
  };
  auto conflicts = minimal_inconsistent(k, consistent, budget);
  std::vector<Enabling> en;
  for (int p = 0; p < s.size(); ++p) {
    en.push_back({class_image(s.down(p)) & ~bit(cls[p]), cls[p]});
  }
  std::optional<std::vector<Polarity>> pol;
  if (s.has_polarity()) {
    pol.emplace(k);
    for (int e = 0; e < s.size(); ++e) (*pol)[cls[e]] = s.pol(e);
  }
  return Structure::make(Kind::kGeneral, labels, {}, en, {false, conflicts}, {}, pol);
}

StructMap ges_of_map(const StructMap& f, const Budget& budget) {
  Structure src = ges_of(f.source, budget);
  Structure tgt = ges_of(f.target, budget);
  std::vector<int> m(src.size(), -1);
  for (int e = 0; e < f.source.size(); ++e) {
    if (!f.defined(e)) continue;
    m[src.require_index(f.source.class_label(e))] =
        tgt.require_index(f.target.class_label(f.mapping[e]));
  }
  return {src, tgt, m};
}

StructMap max_map(const ErResult& r, const Structure& general, const Budget& budget) {
  Structure src = ges_of(r.ese, budget);
  std::vector<int> m(src.size());
  for (int c = 0; c < src.size(); ++c) m[c] = general.require_index(src.name(c));
  return {src, general, m};
}

StructMap factor_through_er(const StructMap& f, const Structure& q,
                            const ErResult& er_a, const Budget& budget) {
  const Structure& a = f.target;
  std::unordered_map<std::string, int> by_key;
  for (std::size_t k = 0; k < er_a.primes.primes.size(); ++k) {
    by_key[canonical_key(er_a.primes.primes[k])] = static_cast<int>(k);
  }
  // Family indices coincide with A's indices: both are sorted by name.
  auto label_of = [&](int e) -> int {
    auto c = f.source.index_of(q.class_label(e));
    if (!c) throw UsageError("map source is not ges of the given structure");
    return f.mapping[*c];
  };
  std::vector<int> h(q.size(), -1);
  for (int e = 0; e < q.size(); ++e) {
    if (label_of(e) < 0) continue;
    Mask keep = 0;
    for (int x : members(q.down(e))) {
      if (label_of(x) >= 0) keep |= bit(x);
    }
    std::vector<int> idx = members(keep);
    std::vector<int> at(q.size(), -1);
    for (std::size_t i = 0; i < idx.size(); ++i) at[idx[i]] = static_cast<int>(i);
    std::vector<Mask> down;
    std::vector<int> labels;
    for (int x : idx) {
      Mask d = 0;
      for (int y : members(q.down(x) & keep)) d |= bit(at[y]);
      down.push_back(d);
      labels.push_back(er_a.family.require_index(a.name(label_of(x))));
    }
    Realisation r = Realisation::from_down(
        generated_names("r", static_cast<int>(idx.size())), down, labels);
    while (auto m = non_iso_map(r, er_a.family)) r = m->to;
    auto it = by_key.find(canonical_key(r));
    if (it == by_key.end() || !r.top()) {
      throw InternalError("factorisation through er found no prime extremal");
    }
    h[e] = it->second;
  }
  (void)budget;
  return {q, er_a.ese, h};
}

PrResult pr(const Family& f, const Budget& budget) {
  auto report = validate_family(f);
  if (!report.properties["stable_equivalence_family"].get<bool>()) {
    auto w = report.properties["stable_equivalence_family_witness"];
    throw UsageError("pr needs a stable equivalence family; violated clause: " +
                     w["clause"].get<std::string>());
  }
  std::set<std::pair<Mask, int>> primes;
  for (Mask x : f.configs()) {
    if (!f.unambiguous(x)) continue;
    for (int a : members(x)) {
      Mask p = x;
      for (Mask y : f.configs()) {
        if (has(y, a) && subset(y, x)) p &= y;
      }
      primes.insert({p, a});
    }
  }
  std::vector<std::pair<Mask, int>> ps(primes.begin(), primes.end());
  std::sort(ps.begin(), ps.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return canonical_less(a.first, b.first);
    return a.second < b.second;
  });
  const int n = static_cast<int>(ps.size());
  if (n > kMaxEvents) throw ResourceError("pr yields more than 64 events");
  const int width = static_cast<int>(std::to_string(std::max(n - 1, 0)).size());
  std::vector<std::string> names, classes;
  std::vector<std::pair<int, int>> causality;
  PrResult res;
  std::vector<Mask> prime_down(n, 0);
  for (int k = 0; k < n; ++k) {
    std::string num = std::to_string(k);
    while (static_cast<int>(num.size()) < width) num = "0" + num;
    names.push_back("p" + num + ":" + f.name(ps[k].second));
    classes.push_back(f.class_labels()[ps[k].second]);
    res.top.push_back(ps[k].second);
    for (int j = 0; j < n; ++j) {
      if (subset(ps[j].first, ps[k].first)) prime_down[k] |= bit(j);
      if (j != k && subset(ps[j].first, ps[k].first)) causality.emplace_back(j, k);
    }
  }
  auto conflicts = minimal_inconsistent(
      n,
      [&](Mask z) {
        Mask u = 0;
        for (int p : members(z)) u |= ps[p].first;
        return f.contains(u);
      },
      budget, prime_down);
  res.edc = Structure::make(Kind::kEdc, names, causality, {}, {false, conflicts},
                            classes);
  return res;
}

Structure coreflect_edc(const Structure& s) {
  Mask keep = 0;
  for (int p = 0; p < s.size(); ++p) {
    if (s.unambiguous(s.down(p))) keep |= bit(p);
  }
  return restrict(s, keep).with_kind(Kind::kEdc);
}

Structure forget_equiv(const Structure& s, const Budget& budget) {
  std::vector<Mask> conflicts = s.minimal_conflicts(budget);
  for (int a = 0; a < s.size(); ++a) {
    for (int b = a + 1; b < s.size(); ++b) {
      if (s.equivalent(a, b)) conflicts.push_back(bit(a) | bit(b));
    }
  }
  Structure t = Structure::make(Kind::kPrime, s.names(), s.causality(), {},
                                {false, conflicts}, {},
                                s.has_polarity() ? std::optional(s.polarity())
                                                 : std::nullopt);
  return t.with_consistency({false, t.minimal_conflicts(budget)});
}

}  // namespace esg
