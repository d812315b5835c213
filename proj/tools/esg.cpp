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

// Command-line front end. Every verb prints a JSON report on stdout.
// Exit codes: 0 ok, 1 violation or false predicate, 2 usage or format
// error, 3 budget exceeded, 4 internal error.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "esg/errors.hpp"
#include "esg/family.hpp"
#include "esg/games.hpp"
#include "esg/io.hpp"
#include "esg/kernels.hpp"
#include "esg/probability.hpp"
#include "esg/realisation.hpp"
#include "esg/structure.hpp"

namespace {

using esg::io::json;

struct Outcome {
  json report;
  int status = 0;
  std::optional<json> constructed;
};

struct Options {
  esg::Budget budget;
  std::string output;
  std::string golden;
};

// Files may hold a structure, a strategy, a family or a map.
enum class FileKind { kStructure, kStrategy, kFamily, kMap };

FileKind kind_of(const json& j) {
  if (j.is_object() && j.contains("sigma")) return FileKind::kStrategy;
  if (j.is_object() && j.contains("mapping")) return FileKind::kMap;
  if (j.is_object() && j.contains("carrier")) return FileKind::kFamily;
  return FileKind::kStructure;
}

esg::Strategy load_strategy(const std::string& path) {
  json j = esg::io::read_json_file(path);
  if (kind_of(j) != FileKind::kStrategy) {
    throw esg::UsageError("'" + path + "' is not a strategy file");
  }
  return esg::io::strategy_from_json(j, esg::io::dirname(path));
}

esg::StructMap load_map(const std::string& path) {
  json j = esg::io::read_json_file(path);
  if (kind_of(j) != FileKind::kMap) throw esg::UsageError("'" + path + "' is not a map file");
  return esg::io::map_from_json(j, esg::io::dirname(path));
}

// A structure, or the inner structure of a strategy.
esg::Structure load_structure(const std::string& path) {
  json j = esg::io::read_json_file(path);
  switch (kind_of(j)) {
    case FileKind::kStrategy:
      return esg::io::strategy_from_json(j, esg::io::dirname(path)).inner();
    case FileKind::kStructure:
      return esg::io::structure_from_json(j);
    default:
      throw esg::UsageError("'" + path + "' is not a structure file");
  }
}

esg::Structure load_game(const std::string& path) {
  json j = esg::io::read_json_file(path);
  if (kind_of(j) == FileKind::kStrategy) {
    throw esg::UsageError("'" + path + "' is a strategy, expected a game");
  }
  return esg::io::structure_from_json(j);
}

esg::Family load_family(const std::string& path, const esg::Budget& b) {
  json j = esg::io::read_json_file(path);
  if (kind_of(j) == FileKind::kFamily) return esg::io::family_from_json(j);
  return esg::family_of(load_structure(path), b);
}

esg::Valuation load_valuation(const std::string& path, const esg::Structure& s,
                              const esg::Budget& b) {
  return esg::io::valuation_from_json(esg::io::read_json_file(path), s, b);
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

esg::Mask names_in(const esg::Structure& s, const std::vector<std::string>& names) {
  esg::Mask m = 0;
  for (const auto& n : names) m |= esg::bit(s.require_index(n));
  return m;
}

json report_json(const esg::ValidationReport& r) { return r.to_json(); }

json prob_strategy_json(const esg::ProbStrategy& p) {
  return {{"strategy", esg::io::strategy_to_json(p.strategy)},
          {"valuation", esg::io::valuation_to_json(p.valuation, p.strategy.inner())}};
}

json iso_json(const esg::StructMap& m) { return esg::io::mapping_to_json(m); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"event structures with parallel causes"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--max-config-size", opt.budget.max_config_size,
                 "largest configuration enumerated")->capture_default_str();
  app.add_option("--max-subsets", opt.budget.max_subsets,
                 "largest subset sweep")->capture_default_str();
  app.add_option("--max-iso-nodes", opt.budget.max_iso_nodes,
                 "largest prime extremal / isomorphism search size")->capture_default_str();
  app.add_option("--output", opt.output, "write the constructed value here");
  app.add_option("--golden", opt.golden, "compare the report with this file");
  app.fallthrough();

  std::function<Outcome()> run;
  const esg::Budget& b = opt.budget;

  auto one_file = [&](const char* verb, const char* help, std::string& file) {
    auto* sub = app.add_subcommand(verb, help);
    sub->add_option("file", file)->required();
    return sub;
  };
  auto two_files = [&](const char* verb, const char* help, std::string& f1,
                       std::string& f2) {
    auto* sub = app.add_subcommand(verb, help);
    sub->add_option("first", f1)->required();
    sub->add_option("second", f2)->required();
    return sub;
  };

  std::string f1, f2, f3, f4;
  int max_size = -1;
  std::vector<std::string> hide_list, visible_list, x_list, branch_args;
  std::string y_arg, mode = "edc";

  one_file("validate", "validate a structure, map, family or strategy", f1)
      ->callback([&] {
        run = [&] {
          json j = esg::io::read_json_file(f1);
          Outcome o;
          esg::ValidationReport r;
          switch (kind_of(j)) {
            case FileKind::kMap:
              r = esg::validate_map(esg::io::map_from_json(j, esg::io::dirname(f1)), b);
              o.report["subject"] = "map";
              break;
            case FileKind::kFamily:
              r = esg::validate_family(esg::io::family_from_json(j));
              o.report["subject"] = "family";
              break;
            case FileKind::kStrategy: {
              auto s = esg::io::strategy_from_json(j, esg::io::dirname(f1));
              r = esg::validate(s.inner(), b);
              o.report["subject"] = "strategy";
              o.report["kind"] = esg::to_string(s.inner().kind());
              break;
            }
            case FileKind::kStructure: {
              auto s = esg::io::structure_from_json(j);
              r = esg::validate(s, b);
              o.report["subject"] = "structure";
              o.report["kind"] = esg::to_string(s.kind());
              break;
            }
          }
          o.report["report"] = report_json(r);
          o.status = r.ok() ? 0 : 1;
          return o;
        };
      });

  one_file("configs", "list configurations", f1)
      ->callback([&] {
        run = [&] {
          auto s = load_structure(f1);
          int cap = max_size >= 0 ? max_size : std::min(s.size(), b.max_config_size);
          auto xs = esg::configs(s, cap, b);
          Outcome o;
          o.report = {{"configs", esg::io::configs_to_json(s, xs)}, {"count", xs.size()},
                      {"max_size", cap}};
          return o;
        };
      })
      ->add_option("--max-size", max_size, "largest configuration listed");

  auto* fam = one_file("family", "family of configurations, with optional hiding", f1);
  fam->add_option("--hide", hide_list, "events to hide")->delimiter(',');
  fam->callback([&] {
    run = [&] {
      auto f = load_family(f1, b);
      if (!hide_list.empty()) f = esg::hide_in_family(f, f.mask_of(hide_list));
      auto r = esg::validate_family(f);
      Outcome o;
      o.report = {{"family", esg::io::family_to_json(f)}, {"report", report_json(r)}};
      o.constructed = esg::io::family_to_json(f);
      o.status = r.ok() ? 0 : 1;
      return o;
    };
  });

  one_file("irreducibles", "irreducible configurations of a family", f1)->callback([&] {
    run = [&] {
      auto f = load_family(f1, b);
      auto xs = esg::irreducibles(f);
      json out = json::array();
      for (auto x : xs) out.push_back(f.names_of(x));
      Outcome o;
      o.report = {{"irreducibles", out}, {"count", xs.size()}};
      return o;
    };
  });

  auto* ext = one_file("extremals", "extremal causal realisations of a family", f1);
  ext->add_option("--max-size", max_size, "largest realisation enumerated");
  ext->callback([&] {
    run = [&] {
      auto f = load_family(f1, b);
      int cap = max_size >= 0 ? max_size : b.max_iso_nodes;
      auto all = esg::enumerate_extremals(f, cap, b);
      auto primes = esg::prime_extremals(f, b);
      json ex = json::array(), pr = json::array();
      for (const auto& e : all) {
        json r = esg::io::realisation_to_json(e.realisation, f);
        r["prime"] = e.prime;
        ex.push_back(r);
      }
      for (const auto& p : primes.primes) {
        json r = esg::io::realisation_to_json(p, f);
        r["top"] = f.name(p.label(*p.top()));
        r["image"] = f.names_of(p.image(esg::full_mask(p.size())));
        pr.push_back(r);
      }
      Outcome o;
      o.report = {{"extremals", ex}, {"prime_extremals", pr},
                  {"prime_count", primes.primes.size()}, {"max_size", cap}};
      return o;
    };
  });

  one_file("er", "ese of prime extremals of a general structure or family", f1)
      ->callback([&] {
        run = [&] {
          json j = esg::io::read_json_file(f1);
          auto r = kind_of(j) == FileKind::kFamily ? esg::er(esg::io::family_from_json(j), b)
                                                   : esg::er(load_structure(f1), b);
          Outcome o;
          o.report = {{"structure", esg::io::structure_to_json(r.ese)},
                      {"events", r.ese.size()}};
          o.constructed = esg::io::structure_to_json(r.ese);
          return o;
        };
      });

  one_file("ges", "general structure obtained by collapsing equivalence", f1)
      ->callback([&] {
        run = [&] {
          auto g = esg::ges_of(load_structure(f1), b);
          Outcome o;
          o.report = {{"structure", esg::io::structure_to_json(g)}};
          o.constructed = o.report["structure"];
          return o;
        };
      });

  one_file("pr", "edc of prime configurations of a stable family", f1)->callback([&] {
    run = [&] {
      auto r = esg::pr(load_family(f1, b), b);
      Outcome o;
      o.report = {{"structure", esg::io::structure_to_json(r.edc)}, {"events", r.edc.size()}};
      o.constructed = o.report["structure"];
      return o;
    };
  });

  auto* hide = one_file("hide", "project onto visible events", f1);
  hide->add_option("--visible", visible_list, "events kept")->delimiter(',');
  hide->add_option("--hide", hide_list, "events removed")->delimiter(',');
  hide->callback([&] {
    run = [&] {
      auto s = load_structure(f1);
      if (!visible_list.empty() && !hide_list.empty()) {
        throw esg::UsageError("give --visible or --hide, not both");
      }
      esg::Mask keep = !visible_list.empty()
                           ? names_in(s, visible_list)
                           : esg::full_mask(s.size()) & ~names_in(s, hide_list);
      auto h = esg::hide_events(s, keep);
      Outcome o;
      o.report = {{"structure", esg::io::structure_to_json(h)}};
      o.constructed = o.report["structure"];
      return o;
    };
  });

  one_file("dual", "swap polarities", f1)->callback([&] {
    run = [&] {
      Outcome o;
      o.report = {{"structure", esg::io::structure_to_json(esg::dual(load_game(f1)))}};
      o.constructed = o.report["structure"];
      return o;
    };
  });

  two_files("par", "parallel composition of games or strategies", f1, f2)->callback([&] {
    run = [&] {
      Outcome o;
      json a = esg::io::read_json_file(f1), c = esg::io::read_json_file(f2);
      if (kind_of(a) == FileKind::kStrategy && kind_of(c) == FileKind::kStrategy) {
        auto s = esg::par_strategy(load_strategy(f1), load_strategy(f2));
        o.report = {{"strategy", esg::io::strategy_to_json(s)}};
        o.constructed = o.report["strategy"];
      } else {
        auto s = esg::par(load_game(f1), load_game(f2));
        o.report = {{"structure", esg::io::structure_to_json(s)}};
        o.constructed = o.report["structure"];
      }
      return o;
    };
  });

  one_file("copycat", "copycat strategy on a game", f1)->callback([&] {
    run = [&] {
      auto cc = esg::copycat(load_game(f1), b);
      Outcome o;
      o.report = {{"strategy", esg::io::strategy_to_json(cc)}, {"events", cc.inner().size()}};
      o.constructed = o.report["strategy"];
      return o;
    };
  });

  one_file("racefree", "check that a game is race-free", f1)->callback([&] {
    run = [&] {
      bool ok = esg::is_race_free(load_game(f1), b);
      Outcome o;
      o.report = {{"race_free", ok}};
      o.status = ok ? 0 : 1;
      return o;
    };
  });

  auto* pb = two_files("pullback", "pullback of two maps with a common target", f1, f2);
  pb->add_option("--mode", mode, "edc, ef or er")
      ->check(CLI::IsMember({"edc", "ef", "er"}))->capture_default_str();
  pb->callback([&] {
    run = [&] {
      auto f = load_map(f1), g = load_map(f2);
      Outcome o;
      if (mode == "edc") {
        auto p = esg::pullback_edc(f, g, b);
        o.report = {{"structure", esg::io::structure_to_json(p.edc)},
                    {"events", p.edc.size()},
                    {"proj1", esg::io::mapping_to_json(p.proj1)},
                    {"proj2", esg::io::mapping_to_json(p.proj2)}};
        o.constructed = o.report["structure"];
      } else {
        auto pp = esg::pseudo_pullback_ef(esg::family_map_of(f, b), esg::family_map_of(g, b), b);
        if (mode == "ef") {
          o.report = {{"family", esg::io::family_to_json(pp.family)},
                      {"events", pp.family.size()}};
          o.constructed = o.report["family"];
        } else {
          auto r = esg::er(pp.family, b);
          o.report = {{"structure", esg::io::structure_to_json(r.ese)}, {"events", r.ese.size()}};
          o.constructed = o.report["structure"];
        }
      }
      return o;
    };
  });

  two_files("compose", "compose sigma: A -> B with tau: B -> C", f1, f2)->callback([&] {
    run = [&] {
      auto c = esg::compose_full(load_strategy(f1), load_strategy(f2), b);
      Outcome o;
      o.report = {{"strategy", esg::io::strategy_to_json(c.result)},
                  {"interaction_events", c.interaction.size()},
                  {"events", c.result.inner().size()}};
      o.constructed = o.report["strategy"];
      return o;
    };
  });

  one_file("check-strategy", "check the strategy axioms", f1)->callback([&] {
    run = [&] {
      auto r = esg::check_strategy(load_strategy(f1), b);
      Outcome o;
      o.report = {{"report", report_json(r)}};
      o.status = r.ok() ? 0 : 1;
      return o;
    };
  });

  one_file("deterministic", "check determinism of an edc or strategy", f1)->callback([&] {
    run = [&] {
      auto s = load_structure(f1);
      bool sweep = esg::is_deterministic(s, b);
      bool cov = esg::is_deterministic_covers(s, b);
      if (sweep != cov) throw esg::InternalError("determinism formulations disagree");
      Outcome o;
      o.report = {{"deterministic", sweep}};
      o.status = sweep ? 0 : 1;
      return o;
    };
  });

  two_files("iso", "find an isomorphism of structures or strategies", f1, f2)->callback([&] {
    run = [&] {
      json a = esg::io::read_json_file(f1), c = esg::io::read_json_file(f2);
      std::optional<esg::StructMap> m;
      if (kind_of(a) == FileKind::kStrategy && kind_of(c) == FileKind::kStrategy) {
        m = esg::find_strategy_iso(load_strategy(f1), load_strategy(f2), {}, b);
      } else {
        m = esg::find_iso(load_structure(f1), load_structure(f2), {}, {}, b);
      }
      Outcome o;
      o.report = {{"isomorphic", m.has_value()}};
      if (m) o.report["mapping"] = iso_json(*m);
      o.status = m ? 0 : 1;
      return o;
    };
  });

  auto* dr = two_files("drop", "drop function of a valuation", f1, f2);
  dr->add_option("--y", y_arg, "configuration y, comma separated")->required();
  dr->add_option("--x", x_list, "extension x_i, comma separated; repeatable");
  dr->callback([&] {
    run = [&] {
      auto s = load_strategy(f1);
      auto v = load_valuation(f2, s.inner(), b);
      esg::Mask y = names_in(s.inner(), split_names(y_arg));
      std::vector<esg::Mask> xs;
      json xj = json::array();
      for (const auto& x : x_list) {
        xs.push_back(names_in(s.inner(), split_names(x)));
        xj.push_back(s.inner().names_of(xs.back()));
      }
      Outcome o;
      o.report = {{"y", s.inner().names_of(y)}, {"xs", xj},
                  {"drop", esg::to_string(esg::drop(v, y, xs))}};
      return o;
    };
  });

  two_files("check-valuation", "validate a configuration-valuation", f1, f2)->callback([&] {
    run = [&] {
      auto s = load_strategy(f1);
      auto r = esg::validate_valuation(s.inner(), load_valuation(f2, s.inner(), b), b);
      Outcome o;
      o.report = {{"report", report_json(r)}};
      o.status = r.ok() ? 0 : 1;
      return o;
    };
  });

  auto* cp = app.add_subcommand("compose-prob", "compose probabilistic strategies");
  cp->add_option("sigma", f1)->required();
  cp->add_option("sigma_valuation", f2)->required();
  cp->add_option("tau", f3)->required();
  cp->add_option("tau_valuation", f4)->required();
  cp->callback([&] {
    run = [&] {
      auto s = load_strategy(f1), t = load_strategy(f3);
      esg::ProbStrategy ps{s, load_valuation(f2, s.inner(), b)};
      esg::ProbStrategy pt{t, load_valuation(f4, t.inner(), b)};
      auto r = esg::compose_valuations(ps, pt, b);
      Outcome o;
      o.report = prob_strategy_json(r.result);
      o.report["report"] = report_json(
          esg::validate_valuation(r.result.strategy.inner(), r.result.valuation, b));
      o.constructed = o.report;
      return o;
    };
  });

  auto* pf = app.add_subcommand("pushforward", "push a valuation along a rigid 2-cell");
  pf->add_option("map", f1)->required();
  pf->add_option("from", f2)->required();
  pf->add_option("to", f3)->required();
  pf->add_option("valuation", f4)->required();
  pf->callback([&] {
    run = [&] {
      auto m = load_map(f1);
      auto from = load_strategy(f2), to = load_strategy(f3);
      auto v = esg::push_forward(m, from, to, load_valuation(f4, from.inner(), b), b);
      Outcome o;
      o.report = {{"valuation", esg::io::valuation_to_json(v, to.inner())},
                  {"report", report_json(esg::validate_valuation(to.inner(), v, b))}};
      o.constructed = o.report["valuation"];
      return o;
    };
  });

  auto* ps = one_file("probsum", "weighted sum of probabilistic strategies on a game", f1);
  ps->add_option("--branch", branch_args, "strategy valuation weight")
      ->expected(3)->allow_extra_args(false)->take_all();
  ps->callback([&] {
    run = [&] {
      auto game = load_game(f1);
      std::vector<esg::ProbStrategy> branches;
      std::vector<esg::Rational> weights;
      for (std::size_t i = 0; i + 2 < branch_args.size(); i += 3) {
        auto s = load_strategy(branch_args[i]);
        branches.push_back({s, load_valuation(branch_args[i + 1], s.inner(), b)});
        weights.push_back(esg::parse_rational(branch_args[i + 2]));
      }
      auto r = esg::prob_sum(branches, weights, game, b);
      Outcome o;
      o.report = prob_strategy_json(r);
      o.report["report"] = report_json(esg::validate_valuation(r.strategy.inner(), r.valuation, b));
      o.constructed = prob_strategy_json(r);
      return o;
    };
  });

  two_files("conj", "conjunction of two strategies on the same game", f1, f2)->callback([&] {
    run = [&] {
      auto c = esg::conjunction(load_strategy(f1), load_strategy(f2), b);
      Outcome o;
      o.report = {{"strategy", esg::io::strategy_to_json(c)}, {"events", c.inner().size()}};
      o.constructed = o.report["strategy"];
      return o;
    };
  });

  one_file("dup", "duplication strategy on a race-free game", f1)->callback([&] {
    run = [&] {
      auto d = esg::duplication(load_game(f1), b);
      Outcome o;
      o.report = {{"strategy", esg::io::strategy_to_json(d)},
                  {"events", d.inner().size()},
                  {"deterministic", esg::is_deterministic(d.inner(), b)}};
      o.constructed = o.report["strategy"];
      return o;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (branch_args.size() % 3 != 0) {
    std::cerr << "error: --branch takes a strategy, a valuation and a weight\n";
    return 2;
  }

  try {
    Outcome o = run();
    std::string text = esg::io::dump(o.report);
    std::cout << text;
    if (!opt.output.empty() && o.constructed) {
      esg::io::write_file(opt.output, esg::io::dump(*o.constructed));
    }
    if (!opt.golden.empty()) {
      std::ifstream in(opt.golden);
      if (!in) throw esg::UsageError("cannot open golden file '" + opt.golden + "'");
      std::stringstream expected;
      expected << in.rdbuf();
      if (expected.str() != text) {
        std::cerr << "golden mismatch: " << opt.golden << "\n";
        return 1;
      }
    }
    return o.status;
  } catch (const esg::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const esg::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const esg::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const esg::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
