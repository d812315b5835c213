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

#ifndef ESG_PROBABILITY_HPP_
#define ESG_PROBABILITY_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "esg/games.hpp"
#include "esg/structure.hpp"

namespace esg {

using Rational = boost::multiprecision::cpp_rational;

// "num/den" in lowest terms; integers print as "n/1".
std::string to_string(const Rational& q);
// Accepts "num/den", "num" and finite decimals such as "0.25".
Rational parse_rational(const std::string& s);

// A table of values over configurations of some structure.
class Valuation {
 public:
  Valuation() = default;
  void set(Mask x, Rational v) { values_[x] = std::move(v); }
  bool has(Mask x) const { return values_.count(x) > 0; }
  // Throws UsageError when x has no value.
  const Rational& at(Mask x) const;
  const std::map<Mask, Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::map<Mask, Rational> values_;
};

// Fills values for every configuration of s from given ones using
// v(y) = v(x) whenever x ⊆⁻ y. Throws UsageError if some configuration stays
// undetermined or two sources disagree.
Valuation complete_by_lmc(const Structure& s, const Valuation& given,
                          const Budget& budget = {});
Valuation constant_one(const Structure& s, const Budget& budget = {});

// v(y) - sum over nonempty I with a configuration union of
// (-1)^(|I|+1) v(union). Configurations are the keys of the table.
Rational drop(const Valuation& v, Mask y, const std::vector<Mask>& xs);

ValidationReport validate_valuation(const Structure& s, const Valuation& v,
                                    const Budget& budget = {});
// The all-positive form: nonnegative drop for every y ⊆ x1..xn.
ValidationReport validate_valuation_plain(const Structure& s, const Valuation& v,
                                          const Budget& budget = {});

// v(y)/v(x) for x ⊆ y; nullopt when v(x) = 0.
std::optional<Rational> conditional(const Valuation& v, Mask x, Mask y);

struct ProbStrategy {
  Strategy strategy;
  Valuation valuation;
};

struct ProbComposite {
  ProbStrategy result;
  Composite composite;
};
ProbComposite compose_valuations(const ProbStrategy& s, const ProbStrategy& t,
                                 const Budget& budget = {});

// f: s.inner -> to.inner must be total, rigid and satisfy s = to . f.
Valuation push_forward(const StructMap& f, const Strategy& from, const Strategy& to,
                       const Valuation& v, const Budget& budget = {});
bool is_rigid(const StructMap& f);
// (f v)(x') <= v'(x') everywhere.
bool is_2cell(const StructMap& f, const Strategy& from, const Strategy& to,
              const Valuation& v, const Valuation& v_to, const Budget& budget = {});

// Game events whose causal history is purely Opponent, with valuation 1.
ProbStrategy bottom(const Structure& game, const Budget& budget = {});

ProbStrategy prob_sum(const std::vector<ProbStrategy>& branches,
                      const std::vector<Rational>& weights, const Structure& game,
                      const Budget& budget = {});

// δ_A : A -> A || A, game events "0.a", "1.0.a", "1.1.a".
Strategy duplication(const Structure& a, const Budget& budget = {});
// With the constant-1 valuation when the structure is deterministic.
std::optional<ProbStrategy> deterministic_prob(const Strategy& s,
                                               const Budget& budget = {});

}  // namespace esg

#endif  // ESG_PROBABILITY_HPP_
