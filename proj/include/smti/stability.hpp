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

// Weak stability: a pair blocks only when both sides strictly prefer each
// other (or are single). Indifference never blocks.

#include <vector>

#include "smti/core_model.hpp"

namespace smti {

enum class BlockReason { Single, PrefersOverPartner };

struct BlockingPair {
  int man = 0;
  int woman = 0;
  BlockReason man_reason = BlockReason::Single;
  BlockReason woman_reason = BlockReason::Single;

  friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

/// Every pair mutually acceptable, indices in range, nobody repeated.
bool is_valid_matching(const Instance& inst, const Matching& m);

/// All blocking pairs sorted by (man, woman). Throws PreconditionError if
/// `m` is not a valid matching for `inst`.
std::vector<BlockingPair> blocking_pairs(const Instance& inst, const Matching& m);

bool is_stable(const Instance& inst, const Matching& m);

/// Same predicate as is_stable, reusing a prebuilt rank table and skipping
/// the validity check. For search loops over candidate matchings.
bool is_stable_unchecked(const RankTable& ranks, int num_men, int num_women, const std::vector<int>& man_partner,
                         const std::vector<int>& woman_partner);

}  // namespace smti
