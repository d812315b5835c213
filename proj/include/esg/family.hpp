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

#ifndef ESG_FAMILY_HPP_
#define ESG_FAMILY_HPP_

#include <string>
#include <vector>

#include "esg/structure.hpp"

namespace esg {

// An explicit finite family of configurations over a carrier, optionally
// with an equivalence (class labels, as for Structure).
class Family {
 public:
  Family() = default;
  // Sorts the carrier by name; `configs` refer to the given carrier order.
  static Family make(std::vector<std::string> carrier, std::vector<Mask> configs,
                     std::vector<std::string> classes = {});

  int size() const { return static_cast<int>(carrier_.size()); }
  const std::vector<std::string>& carrier() const { return carrier_; }
  const std::string& name(int e) const { return carrier_[e]; }
  int require_index(const std::string& name) const;
  const std::vector<Mask>& configs() const { return configs_; }
  const std::vector<std::string>& class_labels() const { return classes_; }
  bool contains(Mask x) const;
  bool equivalent(int a, int b) const { return classes_[a] == classes_[b]; }
  bool trivial_equivalence() const;
  bool unambiguous(Mask x) const;
  std::vector<std::string> names_of(Mask m) const;
  Mask mask_of(const std::vector<std::string>& names) const;

  friend bool operator==(const Family&, const Family&) = default;

 private:
  std::vector<std::string> carrier_;
  std::vector<Mask> configs_;   // canonical order
  std::vector<Mask> sorted_;    // numeric order, for lookup
  std::vector<std::string> classes_;
};

Family family_of(const Structure& s, const Budget& budget = {});

// Union-closure, securing and (as properties) stability checks.
ValidationReport validate_family(const Family& f);

std::vector<Mask> irreducibles(const Family& f);

// The replete general event structure whose configurations are f.
Structure canonical_ges(const Family& f, const Budget& budget = {});

// Removes the events in `hidden` from every configuration.
Family hide_in_family(const Family& f, Mask hidden);

// Configurations that are unions of unambiguous configurations.
Family stable_restriction(const Family& f);

// A partial map between equivalence families; -1 marks undefined.
struct FamilyMap {
  Family source;
  Family target;
  std::vector<int> mapping;

  bool total() const;
  Mask image(Mask x) const;
};

FamilyMap family_map_of(const StructMap& f, const Budget& budget = {});
ValidationReport validate_family_map(const FamilyMap& f);

struct PseudoPullback {
  Family family;
  FamilyMap proj1;
  FamilyMap proj2;
};

// Pairs (a, b) with f(a) equivalent to g(b), named "a|b"; configurations are
// the sets secured through prefixes whose projections are configurations.
PseudoPullback pseudo_pullback_ef(const FamilyMap& f, const FamilyMap& g,
                                  const Budget& budget = {});

}  // namespace esg

#endif  // ESG_FAMILY_HPP_
