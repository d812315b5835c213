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

#ifndef ESG_ERRORS_HPP_
#define ESG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace esg {

// Malformed input: unresolved ids, bad JSON, unknown kinds.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input used outside an operation's precondition.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration budget was exceeded. Results are never truncated.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A postcondition the theory guarantees did not hold.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace esg

#endif  // ESG_ERRORS_HPP_
