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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "esg/errors.hpp"
#include "esg/family.hpp"
#include "esg/games.hpp"
#include "esg/probability.hpp"
#include "esg/realisation.hpp"
#include "esg/structure.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace {

using namespace esg;
namespace fx = esg::fixtures;

struct Result {
  bool ok = true;
  std::ostringstream detail;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) detail << "; ";
      ok = false;
      detail << what;
    }
  }
};

// Scott order computed directly from the definition.
bool scott_oracle(const Structure& a, Mask x, Mask y) {
  Mask opp = a.polarity_mask(Polarity::kMinus), pl = a.polarity_mask(Polarity::kPlus);
  return subset(x & ~y, opp) && subset(y & ~x, pl);
}

// Inclusion-exclusion over subfamilies, written out independently.
Rational drop_oracle(const Valuation& v, Mask y, const std::vector<Mask>& xs) {
  Rational total = v.at(y);
  const std::size_t n = xs.size();
  for (std::uint64_t sel = 1; sel < (std::uint64_t{1} << n); ++sel) {
    Mask u = y;
    int k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((sel >> i) & 1U) {
        u |= xs[i];
        ++k;
      }
    }
    if (!v.has(u)) continue;
    total += (k % 2 == 1 ? -1 : 1) * v.at(u);
  }
  return total;
}

// Right-hand game of a strategy on A^perp || B, or the whole game if untagged.
Structure right_game(const Strategy& s) {
  const Structure& g = s.game();
  Mask keep = 0;
  bool tagged = g.size() > 0;
  for (int e = 0; e < g.size(); ++e) {
    auto t = split_tag(g.name(e));
    if (!t) tagged = false;
    else if (t->first == 1) keep |= bit(e);
  }
  if (!tagged) return g;
  Structure r = restrict(g, keep);
  std::vector<std::string> stripped;
  for (const auto& n : r.names()) stripped.push_back(split_tag(n)->second);
  return r.renamed(stripped);
}

Structure left_game(const Strategy& s) {
  const Structure& g = s.game();
  Mask keep = 0;
  for (int e = 0; e < g.size(); ++e) {
    auto t = split_tag(g.name(e));
    if (t && t->first == 0) keep |= bit(e);
  }
  Structure r = restrict(g, keep);
  std::vector<std::string> stripped;
  for (const auto& n : r.names()) stripped.push_back(split_tag(n)->second);
  return dual(r.renamed(stripped));
}

void c1(Result& r) {
  auto s = fx::structure("hide_cex.json");
  auto fam = family_of(s);
  auto h = hide_in_family(fam, fam.mask_of({"b"}));
  auto m = [&](std::vector<std::string> n) { return h.mask_of(n); };
  r.expect(h.contains(m({"c"})) && h.contains(m({"c", "e"})) && h.contains(m({"a", "c"})),
           "covering configurations missing");
  r.expect(h.contains(m({"a", "c", "d", "e"})), "upper bound missing");
  r.expect(!h.contains(m({"a", "c", "e"})), "{a,c,e} present");
  auto rep = validate_family(h);
  const Violation* v = rep.find("coverability");
  r.expect(v != nullptr, "no coverability violation");
  if (v) {
    nlohmann::json want = {{"base", {"c"}}, {"left", {"a", "c"}}, {"right", {"c", "e"}},
                           {"bound", {"a", "c", "d", "e"}}, {"missing", {"a", "c", "e"}}};
    r.expect(v->witness == want, "witness " + v->witness.dump());
  }
  r.detail << (r.ok ? "witness {c} -< {c,e},{a,c} <= {a,c,d,e}, {a,c,e} absent" : "");
}

void c2(Result& r) {
  auto f1 = family_of(fx::structure("ex1.json"));
  auto p1 = prime_extremals(f1);
  const Mask all1 = f1.mask_of({"a", "b", "c", "d"});
  int d_primes = 0;
  for (const auto& p : p1.primes) {
    if (f1.name(p.label(*p.top())) == "d") {
      ++d_primes;
      r.expect(p.image(full_mask(p.size())) == all1, "d prime with other image");
    }
  }
  r.expect(d_primes == 2, "EX1 d-primes = " + std::to_string(d_primes));
  // The brute oracle must find the same two.
  int brute_d = 0;
  for (const auto& e : oracle::brute_extremals(f1, 4)) {
    auto t = e.top();
    if (t && f1.name(e.label(*t)) == "d") ++brute_d;
  }
  r.expect(brute_d == 2, "oracle EX1 d-primes = " + std::to_string(brute_d));

  auto f2 = family_of(fx::structure("ex2.json"));
  auto irr = irreducibles(f2);
  int non_irr = 0;
  for (const auto& p : prime_extremals(f2).primes) {
    Mask img = p.image(full_mask(p.size()));
    if (std::find(irr.begin(), irr.end(), img) == irr.end()) ++non_irr;
  }
  r.expect(non_irr > 0, "EX2 every prime image irreducible");

  auto f3 = family_of(fx::structure("ex3.json"));
  auto r7 = fx::realisation("ex3_realisation.json", f3);
  r.expect(r7.size() == 7 && is_realisation(r7, f3), "EX3 realisation malformed");
  r.expect(is_extremal(r7, f3), "EX3 7-element realisation not extremal");
  r.expect(oracle::brute_is_extremal(r7, f3), "oracle rejects EX3 realisation");
  // Its er event sits over two equivalent c's, so the edc coreflection drops it.
  auto e3 = er(f3);
  int found = -1;
  for (std::size_t k = 0; k < e3.primes.primes.size(); ++k) {
    if (isomorphic(e3.primes.primes[k], r7)) found = static_cast<int>(k);
  }
  r.expect(found >= 0, "EX3 realisation is not a prime of er");
  if (found >= 0) {
    const std::string name = e3.ese.name(found);
    auto edc = coreflect_edc(e3.ese);
    r.expect(!edc.index_of(name), "edc coreflection keeps " + name);
    r.expect(!e3.ese.unambiguous(e3.ese.down(found)), "history of " + name + " unambiguous");
  }
  if (r.ok) {
    r.detail << "EX1 d-primes 2 (oracle 2), EX2 non-irreducible primes " << non_irr
             << ", EX3 7-element extremal dropped by edc coreflection";
  }
}

void c3(Result& r) {
  auto e = er(fx::structure("ex1.json"));
  auto want = fx::structure("er_expected.json");
  r.expect(e.ese.size() == 6, "er has " + std::to_string(e.ese.size()) + " events");
  r.expect(validate(e.ese).ok(), "er output invalid");
  r.expect(find_iso(e.ese, want).has_value(), "not isomorphic to the expected ese");
  if (r.ok) r.detail << "6 events, iso found";
}

void c4(Result& r) {
  auto f = fx::map("appb_f.json"), g = fx::map("appb_g.json");
  auto pb = pullback_edc(f, g);
  r.expect(pb.edc.size() == 8, "edc pullback has " + std::to_string(pb.edc.size()) + " events");
  r.expect(find_iso(pb.edc, fx::structure("appb_p.json")).has_value(), "edc pullback is not P");
  auto bp = fx::er_pullback(f, g);
  r.expect(bp.er.ese.size() == 10, "bipullback has " + std::to_string(bp.er.ese.size()));
  r.expect(find_iso(bp.er.ese, fx::structure("appb_bipullback.json")).has_value(),
           "er of ef pullback is not the bipullback");

  auto a = f.source, b = g.source;
  auto d = fx::lettered_cone(fx::structure("appb_d.json"), a, b);
  auto e = fx::lettered_cone(fx::structure("appb_e.json"), a, b);
  auto ff = fx::lettered_cone(fx::structure("appb_f_ese.json"), a, b);
  for (const Cone* c : {&d, &e, &ff}) {
    r.expect(validate_map(c->to_a).ok() && validate_map(c->to_b).ok(), "cone map invalid");
  }
  auto replay = replay_no_pullback(d, e, ff, bp.er.ese, bp.to_a, bp.to_b);
  r.expect(!replay.satisfiable, "replay against bipullback satisfiable");
  auto replay_p = replay_no_pullback(d, e, ff, pb.edc, pb.proj1, pb.proj2);
  r.expect(!replay_p.satisfiable, "replay against P satisfiable");
  if (r.ok) {
    r.detail << "P 8 events, bipullback 10 events, replay unsatisfiable (Q=bipullback: "
             << replay.report.dump() << ")";
  }
}

void c5(Result& r) {
  std::vector<Strategy> good = {
      copycat(fx::structure("cc_game.json")), copycat(fx::structure("intro_game.json")),
      copycat(fx::structure("two_moves_game.json")), fx::strategy("intro_strat.json"),
      fx::strategy("plus_strat.json"), fx::strategy("pf_from.json"),
      duplication(fx::structure("plus_game.json"))};
  int passed = 0;
  for (const auto& s : good) {
    r.expect(is_strategy(s), "fixture fails check_strategy");
    auto c = compose(s, copycat(right_game(s)));
    if (find_strategy_iso(c, s)) ++passed;
  }
  r.expect(passed == static_cast<int>(good.size()),
           "copycat identity " + std::to_string(passed) + "/" + std::to_string(good.size()));
  const std::vector<std::pair<std::string, std::string>> mutants = {
      {"mutant_innocence.json", "innocence"},
      {"mutant_receptivity.json", "exists-receptivity"},
      {"mutant_plus_consistency.json", "plus-consistency"},
      {"mutant_non_redundancy.json", "non-redundancy"},
      {"mutant_saturation.json", "equivalence-saturation"},
      {"intro_strat_v1.json", "equivalence-saturation"}};
  int rejected = 0;
  for (const auto& [file, axiom] : mutants) {
    auto s = fx::strategy(file);
    auto rep = check_strategy(s);
    r.expect(rep.violations.size() == 1 && rep.violates(axiom), file + " not a single " + axiom);
    auto c = compose(s, copycat(right_game(s)));
    if (!find_strategy_iso(c, s)) ++rejected;
  }
  r.expect(rejected == static_cast<int>(mutants.size()),
           "mutants rejected " + std::to_string(rejected) + "/" + std::to_string(mutants.size()));
  if (r.ok) r.detail << passed << " strategies fixed by copycat, " << rejected << " mutants not";
}

void c6(Result& r) {
  int games = 0, checked = 0;
  for (const auto& name : fx::small_games()) {
    auto a = fx::structure(name);
    if (a.size() > 4) continue;
    ++games;
    auto cc = copycat(a);
    const Structure& g = cc.game();
    std::vector<int> left(a.size()), rightv(a.size());
    for (int e = 0; e < a.size(); ++e) {
      left[e] = g.require_index("0." + a.name(e));
      rightv[e] = g.require_index("1." + a.name(e));
    }
    auto in_cc = all_configs(cc.inner());
    std::sort(in_cc.begin(), in_cc.end());
    for (Mask x : oracle::brute_configs(g)) {
      Mask x1 = 0, x2 = 0;
      for (int e = 0; e < a.size(); ++e) {
        if (has(x, left[e])) x1 |= bit(e);
        if (has(x, rightv[e])) x2 |= bit(e);
      }
      bool want = scott_oracle(a, x2, x1);
      bool got = std::binary_search(in_cc.begin(), in_cc.end(), x);
      r.expect(want == got, name + ": config mismatch");
      r.expect(scott_leq(a, x2, x1) == want, name + ": scott_leq disagrees");
      ++checked;
    }
  }
  if (r.ok) r.detail << games << " games, " << checked << " configurations of A^perp||A";
}

void c7(Result& r) {
  int games = 0, races = 0;
  for (const auto& name : fx::small_games()) {
    auto a = fx::structure(name);
    auto cc = copycat(a);
    bool rf = is_race_free(a);
    bool det = is_deterministic(cc.inner());
    r.expect(det == is_deterministic_covers(cc.inner()), name + ": determinism formulations differ");
    r.expect(det == rf, name + ": copycat deterministic " + std::to_string(det));
    ++games;
    if (!rf) ++races;
  }
  r.expect(games >= 6 && races >= 1, "too few games or no race");
  int dups = 0, nondet = 0;
  for (const auto& name : fx::small_games()) {
    auto a = fx::structure(name);
    if (a.size() > 3 || !is_race_free(a)) continue;
    auto d = duplication(a);
    bool det = is_deterministic(d.inner());
    bool want = is_deterministic(dual(a).with_kind(Kind::kEdc));
    r.expect(det == want, name + ": duplication deterministic " + std::to_string(det));
    ++dups;
    if (!want) ++nondet;
  }
  r.expect(dups >= 4 && nondet >= 1, "too few duplication games");
  if (r.ok) {
    r.detail << "copycat on " << games << " games (" << races << " with races), duplication on "
             << dups << " games (" << nondet << " not deterministic for Opponent)";
  }
}

void c8(Result& r) {
  auto s = fx::strategy("intro_strat.json");
  const Structure& in = s.inner();
  for (const char* ok : {"intro_val_good.json", "intro_val_one.json"}) {
    r.expect(validate_valuation(in, fx::valuation(ok, in)).ok(), std::string(ok) + " rejected");
  }
  auto bad = fx::valuation("intro_val_bad.json", in);
  auto rep = validate_valuation(in, bad);
  const Violation* v = rep.find("plus-drop");
  r.expect(v != nullptr, "bad valuation has no drop violation");
  if (v) r.expect(v->witness.at("drop") == "-1/10", "witness drop " + v->witness.dump());
  Mask y = in.mask_of({"1", "2"});
  std::vector<Mask> xs = {in.mask_of({"1", "2", "w1"}), in.mask_of({"1", "2", "w2"})};
  r.expect(drop(bad, y, xs) == Rational(-1, 10), "drop is not -1/10");
  r.expect(drop_oracle(bad, y, xs) == Rational(-1, 10), "oracle drop is not -1/10");
  if (r.ok) r.detail << "(1/2,1/2,1/4) and (1,1,1) accepted, (7/10,7/10,3/10) drop -1/10";
}

void c9(Result& r) {
  struct Pair {
    Strategy s;
    Valuation v;
  };
  auto intro = fx::strategy("intro_strat.json");
  auto plus = fx::strategy("plus_strat.json");
  auto pf = fx::strategy("pf_from.json");
  auto dup = duplication(fx::structure("plus_game.json"));
  std::vector<Pair> pairs = {
      {intro, fx::valuation("intro_val_good.json", intro.inner())},
      {intro, fx::valuation("intro_val_one.json", intro.inner())},
      {intro, fx::valuation("intro_val_lmc.json", intro.inner())},
      {plus, fx::valuation("plus_val_half.json", plus.inner())},
      {pf, fx::valuation("pf_val.json", pf.inner())},
      {dup, constant_one(dup.inner())}};
  int composed = 0;
  for (const auto& [s, v] : pairs) {
    r.expect(validate_valuation(s.inner(), v).ok(), "fixture valuation invalid");
    ProbStrategy ps{s, v};
    auto cb = copycat(right_game(s));
    auto ca = copycat(left_game(s));
    for (int side = 0; side < 2; ++side) {
      ProbComposite c = side == 0 ? compose_valuations(ps, {cb, constant_one(cb.inner())})
                                  : compose_valuations({ca, constant_one(ca.inner())}, ps);
      const auto& res = c.result;
      r.expect(validate_valuation(res.strategy.inner(), res.valuation).ok(),
               "composite valuation invalid");
      auto iso = find_strategy_iso(res.strategy, s);
      r.expect(iso.has_value(), "copycat composite not isomorphic");
      if (!iso) continue;
      for (const auto& [x, q] : res.valuation.values()) {
        r.expect(v.has(iso->image(x)) && v.at(iso->image(x)) == q, "valuation not transported");
      }
      ++composed;
    }
  }
  // Push-forward along the rigid 2-cell fixture and along identities.
  auto to = fx::strategy("pf_to.json");
  auto pushed = push_forward(fx::map("pf_map.json"), pf, to, pairs[4].v);
  r.expect(validate_valuation(to.inner(), pushed).ok(), "pushed valuation invalid");
  Mask ow = to.inner().mask_of({"o", "w"});
  r.expect(pushed.at(ow) == Rational(5, 6), "pushed v({o,w}) = " + to_string(pushed.at(ow)));
  for (const auto& [s, v] : pairs) {
    auto id = push_forward(identity_map(s.inner()), s, s, v);
    r.expect(validate_valuation(s.inner(), id).ok(), "identity push-forward invalid");
  }
  auto sum = prob_sum({{plus, pairs[3].v}, {plus, constant_one(plus.inner())}},
                      {Rational(1, 2), Rational(1, 2)}, plus.game());
  r.expect(validate_valuation(sum.strategy.inner(), sum.valuation).ok(), "probsum invalid");
  if (r.ok) {
    r.detail << composed << " copycat composites valid and isomorphic with transport, "
             << "push-forward v({o,w}) = 5/6";
  }
}

void c10(Result& r) {
  auto dp = duplication(fx::structure("plus_game.json"));
  auto dm = duplication(fx::structure("minus_game.json"));
  r.expect(dp.inner().size() == 3, "delta(+) has " + std::to_string(dp.inner().size()));
  r.expect(dm.inner().size() == 4, "delta(-) has " + std::to_string(dm.inner().size()));
  r.expect(dp.inner().trivial_equivalence(), "delta(+) has equivalent events");
  r.expect(!dm.inner().trivial_equivalence(), "delta(-) has no equivalent events");
  {
    const Structure& in = dp.inner();
    Mask minus = in.polarity_mask(Polarity::kMinus);
    r.expect(popcount(minus) == 1, "delta(+) needs one Opponent event");
    for (int e = 0; e < in.size(); ++e) {
      if (!has(minus, e)) r.expect(subset(minus, in.down(e)), "delta(+) Player event not enabled");
    }
  }
  {
    const Structure& in = dm.inner();
    Mask plus = in.polarity_mask(Polarity::kPlus);
    r.expect(popcount(plus) == 2, "delta(-) needs two Player events");
    auto pm = members(plus);
    if (pm.size() == 2) r.expect(in.equivalent(pm[0], pm[1]), "delta(-) Player events not equivalent");
  }
  int games = 0;
  std::vector<std::string> failed;
  for (const auto& [name, a] : fx::games_upto_two()) {
    auto d = duplication(a);
    auto cc = copycat(a);
    auto left = compose(d, par_strategy(d, cc));
    auto right = compose(d, par_strategy(cc, d));
    if (!find_strategy_iso(left, right, fx::assoc_translation(a))) {
      failed.push_back(name + " associativity (" + std::to_string(left.inner().size()) + " vs " +
                       std::to_string(right.inner().size()) + " events)");
    }
    auto eps = fx::counit(a);
    std::map<std::string, std::string> t1, t2;
    for (const auto& x : a.names()) {
      t1["0." + x] = "0." + x;
      t1["1.1." + x] = "1." + x;
      t2["0." + x] = "0." + x;
      t2["1.0." + x] = "1." + x;
    }
    if (!find_strategy_iso(compose(d, par_strategy(eps, cc)), cc, t1)) {
      failed.push_back(name + " left counit");
    }
    if (!find_strategy_iso(compose(d, par_strategy(cc, eps)), cc, t2)) {
      failed.push_back(name + " right counit");
    }
    ++games;
  }
  for (const auto& f : failed) r.expect(false, f);
  if (r.ok) {
    r.detail << "delta(+) 3 events, delta(-) 4 events, comonoid laws on " << games << " games";
  } else {
    r.detail << " [" << games << " race-free games <= 2 events checked]";
  }
}

void c11(Result& r) {
  std::mt19937 rng(20160705);
  int configs_checked = 0, extremal_checked = 0, classes = 0;
  for (int i = 0; i < 200; ++i) {
    Structure s = i % 2 == 0 ? oracle::random_prime(rng, 7) : oracle::random_general(rng, 7);
    auto fast = all_configs(s);
    auto brute = oracle::brute_configs(s);
    r.expect(fast == brute, "configs differ on structure " + std::to_string(i));
    ++configs_checked;
    if (s.kind() != Kind::kGeneral) continue;
    Family f = family_of(s);
    auto ext = enumerate_extremals(f, 3);
    auto bext = oracle::brute_extremals(f, 3);
    r.expect(ext.size() == bext.size(), "extremal count differs on structure " + std::to_string(i));
    for (const auto& e : ext) {
      bool matched = false;
      for (const auto& b : bext) matched = matched || oracle::brute_isomorphic(e.realisation, b);
      r.expect(matched, "extremal not found by oracle on structure " + std::to_string(i));
      ++classes;
    }
    for (const auto& e : enumerate_extremals(f, 5)) {
      if (e.realisation.size() < 4) continue;
      r.expect(oracle::brute_is_extremal(e.realisation, f), "oracle rejects an extremal");
      ++extremal_checked;
    }
    for (int k = 0; k < 5; ++k) {
      auto cand = oracle::random_realisation(rng, f, 5);
      if (cand.size() == 0) continue;
      r.expect(is_extremal(cand, f) == oracle::brute_is_extremal(cand, f),
               "is_extremal disagrees on structure " + std::to_string(i));
      ++extremal_checked;
    }
  }
  if (r.ok) {
    r.detail << configs_checked << " structures, " << classes << " extremal classes <= 3, "
             << extremal_checked << " extremality checks";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Result&)>>> criteria = {
      {"hiding counterexample", c1},       {"extremal counts", c2},
      {"er example", c3},                  {"pullbacks of ese's", c4},
      {"copycat identity", c5},            {"copycat and Scott order", c6},
      {"determinism", c7},                 {"valuation arithmetic", c8},
      {"probabilistic composition", c9},   {"duplication", c10},
      {"oracle equivalence", c11}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.ok) ++failed;
    std::cout << "criterion " << (i + 1) << " [" << criteria[i].first << "]: "
              << (r.ok ? "PASS" : "FAIL") << " (" << static_cast<int>(secs * 1000) << " ms) "
              << r.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
