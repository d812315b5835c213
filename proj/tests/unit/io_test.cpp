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

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "esg/errors.hpp"
#include "esg/family.hpp"
#include "support/fixtures.hpp"

namespace fx = esg::fixtures;
namespace io = esg::io;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<std::string> kStructures = {
    "one_event.json",  "hide_cex.json",   "ex1.json",        "ex2.json",
    "ex3.json",        "er_expected.json", "intro_game.json", "appb_a.json",
    "appb_b.json",     "appb_c.json",     "appb_d.json",     "appb_e.json",
    "appb_f_ese.json", "appb_p.json",     "appb_bipullback.json", "race_game.json"};

const std::map<std::string, std::string> kValuationStrategy = {
    {"intro_val_bad.json", "intro_strat.json"}, {"intro_val_good.json", "intro_strat.json"},
    {"intro_val_lmc.json", "intro_strat.json"}, {"intro_val_one.json", "intro_strat.json"},
    {"cc_intro_val.json", "cc_intro.json"},     {"cc_strat_val.json", "cc_strat.json"},
    {"pf_val.json", "pf_from.json"},            {"plus_val.json", "plus_strat.json"},
    {"plus_val_half.json", "plus_strat.json"}};

}  // namespace

TEST_CASE("serialising a parsed structure is a fixed point") {
  for (const auto& name : kStructures) {
    CAPTURE(name);
    const std::string once = io::dump(io::structure_to_json(fx::structure(name)));
    const std::string twice =
        io::dump(io::structure_to_json(io::structure_from_json(json::parse(once))));
    CHECK(once == twice);
  }
}

TEST_CASE("the fixture corpus round-trips byte for byte") {
  for (const auto& entry : std::filesystem::directory_iterator(ESG_FIXTURE_DIR)) {
    const std::string name = entry.path().filename().string();
    CAPTURE(name);
    const std::string text = slurp(entry.path().string());
    const json j = json::parse(text);
    std::string again;
    if (j.contains("sigma")) {
      again = io::dump(io::strategy_to_json(io::strategy_from_json(j, ESG_FIXTURE_DIR)));
    } else if (j.contains("mapping")) {
      again = io::dump(io::map_to_json(io::map_from_json(j, ESG_FIXTURE_DIR)));
    } else if (j.contains("elements")) {
      const auto f = esg::family_of(fx::structure("ex3.json"));
      again = io::dump(io::realisation_to_json(io::realisation_from_json(j, f), f));
    } else if (j.contains("values")) {
      REQUIRE(kValuationStrategy.count(name));
      const auto s = fx::strategy(kValuationStrategy.at(name));
      again = io::dump(io::valuation_to_json(io::valuation_from_json(j, s.inner()), s.inner(),
                                             j.value("complete_by_lmc", false)));
    } else {
      again = io::dump(io::structure_to_json(io::structure_from_json(j)));
    }
    CHECK(again == text);
  }
}

TEST_CASE("canonical files round-trip byte for byte") {
  for (const auto& name : {"cc_intro.json", "cc_strat.json"}) {
    CAPTURE(name);
    CHECK(io::dump(io::strategy_to_json(fx::strategy(name))) == slurp(fx::path(name)));
  }
  const auto cc = fx::strategy("cc_intro.json");
  CHECK(io::dump(io::valuation_to_json(fx::valuation("cc_intro_val.json", cc.inner()),
                                       cc.inner())) == slurp(fx::path("cc_intro_val.json")));
}

TEST_CASE("strategies, maps and valuations are fixed points") {
  for (const auto& name : {"intro_strat.json", "plus_strat.json", "pf_from.json",
                           "mutant_innocence.json"}) {
    CAPTURE(name);
    const std::string once = io::dump(io::strategy_to_json(fx::strategy(name)));
    const auto again = io::strategy_from_json(json::parse(once), ESG_FIXTURE_DIR);
    CHECK(io::dump(io::strategy_to_json(again)) == once);
  }
  for (const auto& name : {"appb_f.json", "appb_g.json", "pf_map.json"}) {
    CAPTURE(name);
    const std::string once = io::dump(io::map_to_json(fx::map(name)));
    CHECK(io::dump(io::map_to_json(io::map_from_json(json::parse(once), ""))) == once);
  }
  const auto s = fx::strategy("intro_strat.json");
  const std::string once =
      io::dump(io::valuation_to_json(fx::valuation("intro_val_lmc.json", s.inner()), s.inner()));
  CHECK(io::dump(io::valuation_to_json(io::valuation_from_json(json::parse(once), s.inner()),
                                       s.inner())) == once);
}

TEST_CASE("families and realisations are fixed points") {
  const auto f = esg::family_of(fx::structure("ex3.json"));
  const std::string fam = io::dump(io::family_to_json(f));
  CHECK(io::dump(io::family_to_json(io::family_from_json(json::parse(fam)))) == fam);
  const auto r = fx::realisation("ex3_realisation.json", f);
  const std::string once = io::dump(io::realisation_to_json(r, f));
  CHECK(io::dump(io::realisation_to_json(io::realisation_from_json(json::parse(once), f), f)) ==
        once);
}

TEST_CASE("rationals parse in reduced form") {
  CHECK(esg::to_string(esg::parse_rational("2/4")) == "1/2");
  CHECK(esg::to_string(esg::parse_rational("3")) == "3/1");
  CHECK_THROWS_AS(esg::parse_rational("1/0"), esg::FormatError);
  CHECK_THROWS_AS(esg::parse_rational("x"), esg::FormatError);
}

TEST_CASE("format errors") {
  CHECK_THROWS_AS(io::structure_from_json(json::parse(R"({"kind":"blob","events":[]})")),
                  esg::FormatError);
  CHECK_THROWS_AS(io::structure_from_json(json::parse(
                      R"({"kind":"prime","events":[{"id":"a"}],"causality":[["a","b"]]})")),
                  esg::FormatError);
  CHECK_THROWS_AS(io::structure_from_json(json::parse(
                      R"({"kind":"prime","events":[{"id":"a","polarity":"+"},{"id":"b"}]})")),
                  esg::FormatError);
}
