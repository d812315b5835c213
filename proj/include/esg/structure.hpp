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

#ifndef ESG_STRUCTURE_HPP_
#define ESG_STRUCTURE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esg/mask.hpp"
#include "json.hpp"

namespace esg {

enum class Kind { kPrime, kGeneral, kEse, kEdc };

std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

enum class Polarity : std::int8_t { kMinus = -1, kPlus = 1 };

inline Polarity flip(Polarity p) {
  return p == Polarity::kPlus ? Polarity::kMinus : Polarity::kPlus;
}

struct Enabling {
  Mask set = 0;
  int event = 0;
  friend bool operator==(const Enabling&, const Enabling&) = default;
};

// Either minimal inconsistent sets (`conflicts`) or the full list of
// consistent sets (`explicit`).
struct Consistency {
  bool explicit_form = false;
  std::vector<Mask> sets;
};

struct Budget {
  int max_config_size = 8;
  std::uint64_t max_subsets = std::uint64_t{1} << 20;
  int max_iso_nodes = 12;
};

// A finite event structure of any flavour. Events are kept sorted by name;
// all masks and indices refer to that order. Equivalence is carried by a
// class label per event: equal labels mean equivalent events.
class Structure {
 public:
  Structure() = default;

  // Builds from unsorted data (indices refer to `names` as given), sorts the
  // events by name and derives the causal order. Throws FormatError on
  // duplicate or empty names and out-of-range indices.
  static Structure make(Kind kind, std::vector<std::string> names,
                        std::vector<std::pair<int, int>> causality,
                        std::vector<Enabling> enablings, Consistency consistency,
                        std::vector<std::string> classes = {},
                        std::optional<std::vector<Polarity>> polarity = {});

  Kind kind() const { return kind_; }
  int size() const { return static_cast<int>(names_.size()); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int e) const { return names_[e]; }
  std::optional<int> index_of(const std::string& name) const;
  int require_index(const std::string& name) const;

  const std::vector<std::pair<int, int>>& causality() const { return causality_; }
  const std::vector<Enabling>& enablings() const { return enablings_; }
  const Consistency& consistency() const { return consistency_; }
  const std::vector<std::string>& class_labels() const { return classes_; }
  const std::string& class_label(int e) const { return classes_[e]; }
  bool has_polarity() const { return polarity_.has_value(); }
  const std::vector<Polarity>& polarity() const { return *polarity_; }
  Polarity pol(int e) const { return (*polarity_)[e]; }

  // [e] including e, and {e' : e <= e'}.
  Mask down(int e) const { return down_[e]; }
  Mask up(int e) const { return up_[e]; }
  Mask down_closure(Mask x) const;
  bool leq(int a, int b) const { return has(down_[b], a); }
  bool order_is_partial() const { return acyclic_; }
  // Immediate dependencies of the reflexive-transitive closure.
  std::vector<std::pair<int, int>> covers() const;

  bool equivalent(int a, int b) const { return classes_[a] == classes_[b]; }
  bool trivial_equivalence() const;
  // The equivalence class of e as a mask.
  Mask class_mask(int e) const;
  Mask polarity_mask(Polarity p) const;

  bool consistent(Mask x) const;
  bool is_config(Mask x) const;
  // Events that may extend configuration x by one step.
  Mask enabled_at(Mask x) const;
  bool unambiguous(Mask x) const;

  // Minimal inconsistent subsets, canonically ordered.
  std::vector<Mask> minimal_conflicts(const Budget& budget = {}) const;

  std::vector<std::string> names_of(Mask m) const;
  Mask mask_of(const std::vector<std::string>& names) const;

  // Variants with one field replaced; derived data is recomputed.
  Structure with_kind(Kind k) const;
  Structure with_polarity(std::optional<std::vector<Polarity>> p) const;
  Structure with_classes(std::vector<std::string> classes) const;
  Structure with_consistency(Consistency c) const;
  Structure renamed(const std::vector<std::string>& new_names) const;

  friend bool operator==(const Structure& a, const Structure& b);

 private:
  void derive();

  Kind kind_ = Kind::kPrime;
  std::vector<std::string> names_;
  std::vector<std::pair<int, int>> causality_;
  std::vector<Enabling> enablings_;
  Consistency consistency_;
  std::vector<std::string> classes_;
  std::optional<std::vector<Polarity>> polarity_;

  std::vector<Mask> down_, up_;
  bool acyclic_ = true;
};

// Restricts a structure to the events in `keep` (no closure requirement).
Structure restrict(const Structure& s, Mask keep);

// A partial function between event sets; -1 marks undefined.
struct StructMap {
  Structure source;
  Structure target;
  std::vector<int> mapping;

  bool defined(int e) const { return mapping[e] >= 0; }
  Mask domain() const;
  Mask image(Mask x) const;
  bool total() const;
};

StructMap identity_map(const Structure& s);
StructMap compose_maps(const StructMap& g, const StructMap& f);  // g after f

struct Violation {
  std::string axiom;
  nlohmann::json witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  nlohmann::ordered_json properties = nlohmann::ordered_json::object();
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  bool violates(const std::string& axiom) const;
  const Violation* find(const std::string& axiom) const;
  nlohmann::json to_json() const;
};

ValidationReport validate(const Structure& s, const Budget& budget = {});

// Configurations of size <= max_size in canonical order.
std::vector<Mask> configs(const Structure& s, int max_size,
                          const Budget& budget = {});
inline std::vector<Mask> all_configs(const Structure& s,
                                     const Budget& budget = {}) {
  return configs(s, s.size(), budget);
}
// Independent oracle: every subset filtered by the configuration predicate.
std::vector<Mask> configs_bruteforce(const Structure& s, int max_size,
                                     const Budget& budget = {});

ValidationReport validate_map(const StructMap& f, const Budget& budget = {});
bool maps_equivalent(const StructMap& f, const StructMap& g);

// Prime-style structure viewed as a general event structure.
Structure as_general(const Structure& prime);

// Conflicts <-> explicit consistency.
Consistency to_explicit(const Structure& s, const Budget& budget = {});
Consistency to_conflicts(const Structure& s, const Budget& budget = {});

}  // namespace esg

#endif  // ESG_STRUCTURE_HPP_
