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

#ifndef ESG_REALISATION_HPP_
#define ESG_REALISATION_HPP_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esg/family.hpp"
#include "esg/structure.hpp"

namespace esg {

// A finite labelled poset: carrier elements with a partial order and a
// labelling into the events of a family.
class Realisation {
 public:
  Realisation() = default;
  // `order` lists pairs (below, above); labels are family event indices.
  // Throws FormatError on a cyclic order or bad indices.
  static Realisation make(std::vector<std::string> elements,
                          const std::vector<std::pair<int, int>>& order,
                          std::vector<int> labels);
  // Builds directly from reflexive down-closures.
  static Realisation from_down(std::vector<std::string> elements,
                               std::vector<Mask> down, std::vector<int> labels);

  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<int>& labels() const { return labels_; }
  int label(int e) const { return labels_[e]; }
  Mask down(int e) const { return down_[e]; }
  const std::vector<Mask>& downs() const { return down_; }
  bool leq(int a, int b) const { return has(down_[b], a); }
  std::vector<std::pair<int, int>> covers() const;
  std::optional<int> top() const;
  // Label image of a set of carrier elements, as a family mask.
  Mask image(Mask x) const;
  // All down-closed subsets of the carrier, canonically ordered.
  std::vector<Mask> downsets() const;
  Realisation restricted(Mask keep) const;

 private:
  std::vector<std::string> elements_;
  std::vector<Mask> down_;
  std::vector<int> labels_;
};

// True iff every down-closed subset is labelled onto a member of f.
bool is_realisation(const Realisation& r, const Family& f);

// A total map of realisations, given by a function on carriers.
struct RealisationMap {
  Realisation to;
  std::vector<int> function;
};

// Searches for a total map out of r that is not an isomorphism; returns it
// if one exists. Throws UsageError when r is not a realisation of f.
std::optional<RealisationMap> non_iso_map(const Realisation& r, const Family& f);
bool is_extremal(const Realisation& r, const Family& f);

// Iso-invariant key, and the representative realising it (elements named
// r0, r1, ... in canonical position order).
std::string canonical_key(const Realisation& r);
Realisation canonical_form(const Realisation& r);
bool isomorphic(const Realisation& a, const Realisation& b);

struct Extremal {
  Realisation realisation;
  bool prime = false;
};

// Prime extremals of f up to isomorphism, canonically ordered, together with
// the order between them: below[k] is the mask of primes under prime k.
struct PrimeExtremals {
  std::vector<Realisation> primes;
  std::vector<Mask> below;
};
PrimeExtremals prime_extremals(const Family& f, const Budget& budget = {});

// All extremal realisations with carrier size <= max_size, one per
// isomorphism class, ordered by (size, canonical key).
std::vector<Extremal> enumerate_extremals(const Family& f, int max_size,
                                          const Budget& budget = {});

struct ErResult {
  Structure ese;         // events p<k>:<top label>
  std::vector<int> max;  // family event under each top
  Family family;
  PrimeExtremals primes;
};

ErResult er(const Family& f, const Budget& budget = {});
ErResult er(const Structure& general, const Budget& budget = {});

// Quotient by the equivalence: one general event per class.
Structure ges_of(const Structure& s, const Budget& budget = {});
StructMap ges_of_map(const StructMap& f, const Budget& budget = {});
// The counit ges(er(A)) -> A for a general event structure A.
StructMap max_map(const ErResult& r, const Structure& general,
                  const Budget& budget = {});
// Given f : ges(Q) -> A, the map h : Q -> er(A) with max o ges(h) = f.
StructMap factor_through_er(const StructMap& f, const Structure& q,
                            const ErResult& er_a, const Budget& budget = {});

struct PrResult {
  Structure edc;         // events p<k>:<top>
  std::vector<int> top;  // family event on top of each prime configuration
};
// Prime configurations of a stable equivalence family.
PrResult pr(const Family& f, const Budget& budget = {});

Structure coreflect_edc(const Structure& s);
Structure forget_equiv(const Structure& s, const Budget& budget = {});

// Minimal inconsistent sets of a subset-closed predicate on n elements,
// found by growing consistent sets one element at a time.
// Minimal sets failing `consistent`. When `down` (reflexive down-closures) is
// given, consistency must depend only on down-closure, so minimal
// inconsistent sets are antichains and only antichains are explored.
std::vector<Mask> minimal_inconsistent(int n,
                                       const std::function<bool(Mask)>& consistent,
                                       const Budget& budget = {},
                                       const std::vector<Mask>& down = {});

}  // namespace esg

#endif  // ESG_REALISATION_HPP_
