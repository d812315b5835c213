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

#ifndef ESG_GAMES_HPP_
#define ESG_GAMES_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esg/family.hpp"
#include "esg/structure.hpp"

namespace esg {

// Same events, order, consistency, equivalence and polarity, regardless of
// how consistency is represented.
bool same_structure(const Structure& a, const Structure& b);

// A game is a prime structure with total polarity and identity equivalence.
bool is_game(const Structure& a);
void require_game(const Structure& a);

// A total, polarity-preserving map from an edc into a game.
struct Strategy {
  StructMap sigma;

  const Structure& inner() const { return sigma.source; }
  const Structure& game() const { return sigma.target; }
};

Strategy make_strategy(Structure game, Structure inner, std::vector<int> mapping);

Structure dual(const Structure& a);

// Events of the left and right components are renamed "0.<e>" and "1.<e>".
Structure par(const Structure& a, const Structure& b);
// Tensor of strategies A -> B and C -> D as a strategy A||C -> B||D; game
// events become "0.0.a", "0.1.c", "1.0.b", "1.1.d".
Strategy par_strategy(const Strategy& s, const Strategy& t);

// A strategy whose game has untagged events, read as a strategy from the
// empty game: game events are renamed "1.<e>".
Strategy as_tagged(const Strategy& s);

// Splits a tagged name "k.<rest>" into (k, rest); nullopt when untagged.
std::optional<std::pair<int, std::string>> split_tag(const std::string& name);

Strategy copycat(const Structure& a, const Budget& budget = {});

// x ⊑ y: x loses only Opponent events and y gains only Player events.
bool scott_leq(const Structure& a, Mask x, Mask y);

bool is_race_free(const Structure& a, const Budget& budget = {});

// Projection onto `visible`, which must be closed under equivalence.
Structure hide_events(const Structure& s, Mask visible);

struct Factorisation {
  StructMap projection;    // partial, s -> s restricted to the defined part
  StructMap defined_part;  // total
};
Factorisation factorise_partial(const StructMap& f);
// Given f = g1 . g0 with g1 total, the unique h with g0 = h . projection and
// g1 . h = defined_part. Throws UsageError when (g0, g1) does not factor f.
StructMap mediate(const StructMap& f, const StructMap& g0, const StructMap& g1);

struct Pullback {
  Structure edc;
  StructMap proj1;
  StructMap proj2;
};
// Pr of the stable part of the equivalence-family pseudo pullback. The
// target must have identity equivalence.
Pullback pullback_edc(const StructMap& f, const StructMap& g,
                      const Budget& budget = {});

struct Composite {
  Strategy result;
  Structure interaction;       // pullback before hiding
  StructMap interaction_map;   // into A || B || C, events "0.a" "1.b" "2.c"
  Mask visible = 0;
  StructMap proj_s;            // interaction -> S, partial
  StructMap proj_t;            // interaction -> T, partial
};
// Game events are tagged "0.<a>" (left, already dualised) and "1.<b>"; a
// game without tags is read as the right side of "empty || A".
Composite compose_full(const Strategy& sigma, const Strategy& tau,
                       const Budget& budget = {});
Strategy compose(const Strategy& sigma, const Strategy& tau,
                 const Budget& budget = {});

Strategy conjunction(const Strategy& s, const Strategy& t,
                     const Budget& budget = {});

// Per-axiom results in `properties`; each failure carries a witness.
ValidationReport check_strategy(const Strategy& s, const Budget& budget = {});
bool is_strategy(const Strategy& s, const Budget& budget = {});

bool is_deterministic(const Structure& s, const Budget& budget = {});
bool is_deterministic_covers(const Structure& s, const Budget& budget = {});

// Isomorphism p -> q respecting order, consistency, equivalence, polarity
// and the given per-event colours (empty means uncoloured).
std::optional<StructMap> find_iso(const Structure& p, const Structure& q,
                                  const std::vector<std::string>& colour_p = {},
                                  const std::vector<std::string>& colour_q = {},
                                  const Budget& budget = {});
// Isomorphism of strategies commuting with the maps to the game; game
// events of s are matched to game events of t through `translate` (by name)
// when given, otherwise by equal names. Untagged game events count as the
// right side, as in composition.
std::optional<StructMap> find_strategy_iso(
    const Strategy& s, const Strategy& t,
    const std::map<std::string, std::string>& translate = {},
    const Budget& budget = {});

// Maps from a cone apex into a candidate object over A and B that commute
// with the projections. Used to replay the non-existence argument for
// pullbacks of ese's.
struct Cone {
  Structure apex;
  StructMap to_a;
  StructMap to_b;
};
std::vector<StructMap> mediating_maps(const Cone& cone, const Structure& q,
                                      const StructMap& q_to_a,
                                      const StructMap& q_to_b,
                                      const Budget& budget = {});

struct ReplayResult {
  bool satisfiable = false;
  nlohmann::json report;
};
// Searches for h_D, h_F (cones D, F into candidate Q) agreeing on their
// shared event `shared` as forced by the common subcone E.
ReplayResult replay_no_pullback(const Cone& d, const Cone& e, const Cone& f,
                                const Structure& q, const StructMap& q_to_a,
                                const StructMap& q_to_b, const Budget& budget = {});

}  // namespace esg

#endif  // ESG_GAMES_HPP_
