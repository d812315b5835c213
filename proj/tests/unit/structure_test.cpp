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

#include <random>

#include "doctest.h"
#include "esg/errors.hpp"
#include "esg/family.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace fx = esg::fixtures;
using esg::Kind;
using esg::Mask;
using esg::Structure;

namespace {

std::vector<std::string> prime_fixtures() {
  return {"one_event.json", "er_expected.json", "appb_a.json",  "appb_b.json",
          "appb_c.json",    "appb_p.json",      "appb_bipullback.json", "cc_game.json",
          "intro_game.json", "race_game.json",  "opp_choice_game.json"};
}

// [p) |- p for every event, with the same consistency.
Structure enabled_by_history(const Structure& s) {
  std::vector<esg::Enabling> en;
  for (int e = 0; e < s.size(); ++e) en.push_back({s.down(e) & ~esg::bit(e), e});
  std::vector<std::string> names(s.names().begin(), s.names().end());
  return Structure::make(Kind::kGeneral, names, {}, en, {false, s.minimal_conflicts()});
}

}  // namespace

TEST_CASE("configurations of non-general kinds are down-closed") {
  for (const auto& name : prime_fixtures()) {
    CAPTURE(name);
    Structure s = fx::structure(name);
    for (Mask x : esg::all_configs(s)) CHECK(s.down_closure(x) == x);
  }
}

TEST_CASE("configs agree with the brute oracle on random structures") {
  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    Structure s = (i % 2) ? esg::oracle::random_general(rng, 7) : esg::oracle::random_prime(rng, 7);
    CHECK(esg::all_configs(s) == esg::oracle::brute_configs(s));
    CHECK(esg::all_configs(s) == esg::configs_bruteforce(s, s.size()));
  }
}

TEST_CASE("general structures round-trip through their family") {
  std::mt19937 rng(5);
  int checked = 0;
  for (int i = 0; i < 80; ++i) {
    Structure s = esg::oracle::random_general(rng, 6);
    if (!esg::validate(s).ok()) continue;
    ++checked;
    Structure back = esg::canonical_ges(esg::family_of(s));
    CHECK(esg::all_configs(back) == esg::all_configs(s));
  }
  CHECK(checked > 20);
  Structure cex = fx::structure("hide_cex.json");
  if (cex.kind() == Kind::kGeneral)
    CHECK(esg::all_configs(esg::canonical_ges(esg::family_of(cex))) == esg::all_configs(cex));
}

TEST_CASE("conflict and explicit consistency agree") {
  std::mt19937 rng(3);
  for (int i = 0; i < 40; ++i) {
    Structure s = esg::oracle::random_prime(rng, 7);
    std::vector<Mask> consistent;
    for (Mask x = 0; x < (Mask{1} << s.size()); ++x)
      if (s.consistent(x)) consistent.push_back(x);
    Structure t = s.with_consistency({true, consistent});
    Structure u = t.with_consistency({false, t.minimal_conflicts()});
    for (Mask x = 0; x < (Mask{1} << s.size()); ++x) {
      CHECK(t.consistent(x) == s.consistent(x));
      CHECK(u.consistent(x) == s.consistent(x));
    }
  }
}

TEST_CASE("a prime structure read as general has the same configurations") {
  for (const auto& name : prime_fixtures()) {
    CAPTURE(name);
    Structure s = fx::structure(name);
    if (!s.trivial_equivalence()) continue;
    CHECK(esg::all_configs(enabled_by_history(s)) == esg::all_configs(s));
  }
  std::mt19937 rng(9);
  for (int i = 0; i < 40; ++i) {
    Structure s = esg::oracle::random_prime(rng, 7);
    CHECK(esg::all_configs(enabled_by_history(s)) == esg::all_configs(s));
  }
}

TEST_CASE("map images are configurations and locally injective up to equivalence") {
  for (const auto& name : {"appb_f.json", "appb_g.json", "pf_map.json"}) {
    CAPTURE(name);
    esg::StructMap f = fx::map(name);
    CHECK(esg::validate_map(f).ok());
    for (Mask x : esg::all_configs(f.source)) {
      CHECK(f.target.is_config(f.image(x & f.domain())));
      for (int a = 0; a < f.source.size(); ++a)
        for (int b = a + 1; b < f.source.size(); ++b)
          if (esg::has(x, a) && esg::has(x, b) && f.defined(a) && f.defined(b) &&
              f.target.equivalent(f.mapping[a], f.mapping[b]))
            CHECK(f.source.equivalent(a, b));
    }
  }
}

TEST_CASE("edc with equivalent events in one causal chain fails validation") {
  Structure s = esg::io::structure_from_json(
      esg::io::read_json_file(std::string(ESG_TEST_DATA_DIR) + "/edc_chain.json"));
  auto report = esg::validate(s);
  CHECK_FALSE(report.ok());
  CHECK(report.violates("edc"));
}

TEST_CASE("malformed input is a format error") {
  auto j = esg::io::read_json_file(std::string(ESG_TEST_DATA_DIR) + "/malformed.json");
  CHECK_THROWS_AS(esg::io::structure_from_json(j), esg::FormatError);
}

TEST_CASE("the empty structure is valid in every kind") {
  for (Kind k : {Kind::kPrime, Kind::kGeneral, Kind::kEse, Kind::kEdc}) {
    Structure s = Structure::make(k, {}, {}, {}, {});
    CHECK(esg::validate(s).ok());
    CHECK(esg::all_configs(s) == std::vector<Mask>{0});
  }
}

TEST_CASE("a general event with no enabling is in no configuration") {
  Structure s = Structure::make(Kind::kGeneral, {"a", "b"}, {}, {{0, 0}}, {});
  CHECK(esg::validate(s).ok());
  CHECK(esg::all_configs(s) == std::vector<Mask>{0, 1});
}
