// Copyright 2026 The smti-mech Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Instance text format:
//
//   # comment
//   men 4
//   women 4
//   m1: w2 w1
//   m2: ( w2 w3 )        parentheses may also touch tokens: (w2 w3)
//   m4:                  empty list
//   w1: m1
//   ...
//
// Every declared person needs exactly one line. Blank lines and text after
// '#' are ignored. Matching files hold one "m<i> w<j>" pair per line.

#include <string>
#include <string_view>

#include "smti/core_model.hpp"

namespace smti {

/// Throws ParseError on syntax errors and PreconditionError when the parsed
/// instance fails validate_instance.
Instance parse_instance(std::string_view text);

/// Canonical text: persons in ascending order, one space between tokens,
/// ties as "(w1 w4)", trailing newline.
std::string serialize_instance(const Instance& inst);

Matching parse_matching(std::string_view text);
std::string serialize_matching(const Matching& m);

std::string serialize_list(const PreferenceList& list, Side listed);

}  // namespace smti
