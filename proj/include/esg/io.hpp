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

#ifndef ESG_IO_HPP_
#define ESG_IO_HPP_

#include <string>

#include "esg/family.hpp"
#include "esg/games.hpp"
#include "esg/probability.hpp"
#include "esg/realisation.hpp"
#include "esg/structure.hpp"
#include "json.hpp"

namespace esg::io {

using nlohmann::json;

// Parse errors become FormatError naming the file and position.
json read_json_file(const std::string& path);
// Key-sorted, two-space indented, newline-terminated.
std::string dump(const json& j);
void write_file(const std::string& path, const std::string& text);

Structure structure_from_json(const json& j);
json structure_to_json(const Structure& s);

// `source`/`target` are inline objects or paths relative to `base_dir`.
StructMap map_from_json(const json& j, const std::string& base_dir);
json map_to_json(const StructMap& f);
json mapping_to_json(const StructMap& f);

Family family_from_json(const json& j);
json family_to_json(const Family& f);

Realisation realisation_from_json(const json& j, const Family& f);
json realisation_to_json(const Realisation& r, const Family& f);

Strategy strategy_from_json(const json& j, const std::string& base_dir);
json strategy_to_json(const Strategy& s);

Valuation valuation_from_json(const json& j, const Structure& s, const Budget& budget = {});
// With by_lmc, only the entries not implied by lmc completion are written.
json valuation_to_json(const Valuation& v, const Structure& s, bool by_lmc = false);

json configs_to_json(const Structure& s, const std::vector<Mask>& xs);
json names_to_json(const std::vector<std::string>& names);

// Directory part of a path, "." when there is none.
std::string dirname(const std::string& path);

}  // namespace esg::io

#endif  // ESG_IO_HPP_
