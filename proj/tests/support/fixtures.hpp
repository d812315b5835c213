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

// Loads the fixture corpus and builds the derived objects the tests share.

#ifndef ESG_TESTS_FIXTURES_HPP_
#define ESG_TESTS_FIXTURES_HPP_

#include <map>
#include <string>
#include <vector>

#include "esg/family.hpp"
#include "esg/games.hpp"
#include "esg/io.hpp"
#include "esg/probability.hpp"
#include "esg/realisation.hpp"
#include "esg/structure.hpp"

namespace esg::fixtures {

inline std::string path(const std::string& name) {
  return std::string(ESG_FIXTURE_DIR) + "/" + name;
}

inline nlohmann::json raw(const std::string& name) { return io::read_json_file(path(name)); }

inline Structure structure(const std::string& name) {
  return io::structure_from_json(raw(name));
}

inline Strategy strategy(const std::string& name) {
  return io::strategy_from_json(raw(name), ESG_FIXTURE_DIR);
}

inline StructMap map(const std::string& name) {
  return io::map_from_json(raw(name), ESG_FIXTURE_DIR);
}

inline Valuation valuation(const std::string& name, const Structure& s) {
  return io::valuation_from_json(raw(name), s);
}

inline Realisation realisation(const std::string& name, const Family& f) {
  return io::realisation_from_json(raw(name), f);
}

// Games of at most four events used for the copycat sweeps.
inline std::vector<std::string> small_games() {
  return {"cc_game.json",   "intro_game.json",       "two_moves_game.json",
          "race_game.json", "plus_game.json",        "minus_game.json",
          "pf_game.json",   "opp_choice_game.json",  "player_choice_game.json"};
}

// Every race-free game with at most two events, up to isomorphism.
inline std::vector<std::pair<std::string, Structure>> games_upto_two() {
  using P = Polarity;
  auto mk = [](std::vector<std::string> n, std::vector<std::pair<int, int>> c,
               std::vector<Mask> conflicts, std::vector<P> p) {
    return Structure::make(Kind::kPrime, n, c, {}, {false, conflicts}, {}, p);
  };
  auto sym = [](P p) { return std::string(p == P::kPlus ? "+" : "-"); };
  std::vector<std::pair<std::string, Structure>> out;
  out.emplace_back("empty", mk({}, {}, {}, {}));
  for (P p : {P::kPlus, P::kMinus}) out.emplace_back(sym(p), mk({"a"}, {}, {}, {p}));
  for (auto [p, q] : std::vector<std::pair<P, P>>{
           {P::kPlus, P::kPlus}, {P::kPlus, P::kMinus}, {P::kMinus, P::kMinus}}) {
    out.emplace_back(sym(p) + sym(q), mk({"a", "b"}, {}, {}, {p, q}));
    if (p == q) out.emplace_back(sym(p) + "#" + sym(q), mk({"a", "b"}, {}, {3}, {p, q}));
  }
  for (P p : {P::kPlus, P::kMinus}) {
    for (P q : {P::kPlus, P::kMinus}) {
      out.emplace_back(sym(p) + "<" + sym(q), mk({"a", "b"}, {{0, 1}}, {}, {p, q}));
    }
  }
  return out;
}

// A total map by names; every source event must appear.
inline StructMap by_names(const Structure& src, const Structure& tgt,
                          const std::map<std::string, std::string>& m) {
  std::vector<int> mapping(src.size(), -1);
  for (const auto& [a, b] : m) mapping[src.require_index(a)] = tgt.require_index(b);
  return {src, tgt, mapping};
}

// Map to A (same names) and to B (first letter) for the Appendix B cones.
inline Cone lettered_cone(const Structure& apex, const Structure& a, const Structure& b) {
  std::map<std::string, std::string> to_a, to_b;
  for (const auto& n : apex.names()) {
    to_a[n] = n;
    to_b[n] = n.substr(0, 1);
  }
  return {apex, by_names(apex, a, to_a), by_names(apex, b, to_b)};
}

// The er of the ef pseudo pullback of f and g, with projections to A and B.
struct ErPullback {
  ErResult er;
  StructMap to_a;
  StructMap to_b;
};

inline ErPullback er_pullback(const StructMap& f, const StructMap& g) {
  auto pp = pseudo_pullback_ef(family_map_of(f), family_map_of(g));
  ErPullback out{er(pp.family), {}, {}};
  const Structure& q = out.er.ese;
  std::vector<int> ma(q.size()), mb(q.size());
  for (int k = 0; k < q.size(); ++k) {
    ma[k] = pp.proj1.mapping[out.er.max[k]];
    mb[k] = pp.proj2.mapping[out.er.max[k]];
  }
  out.to_a = {q, f.source, ma};
  out.to_b = {q, g.source, mb};
  return out;
}

// Tagged-name translations relating the two sides of the comonoid laws.
inline std::map<std::string, std::string> assoc_translation(const Structure& a) {
  std::map<std::string, std::string> t;
  for (const auto& x : a.names()) {
    t["0." + x] = "0." + x;
    t["1.0.0." + x] = "1.0." + x;
    t["1.0.1." + x] = "1.1.0." + x;
    t["1.1." + x] = "1.1.1." + x;
  }
  return t;
}

// The counit on A, as a strategy A -> empty with game events tagged "0.".
inline Strategy counit(const Structure& a) {
  auto e = bottom(dual(a)).strategy;
  std::vector<std::string> names;
  for (const auto& x : e.game().names()) names.push_back("0." + x);
  return make_strategy(e.game().renamed(names), e.inner(), e.sigma.mapping);
}

}  // namespace esg::fixtures

#endif  // ESG_TESTS_FIXTURES_HPP_
