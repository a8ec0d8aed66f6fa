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

#include "smti/stability.hpp"

#include "smti/errors.hpp"

namespace smti {

bool is_valid_matching(const Instance& inst, const Matching& m) {
  std::vector<bool> man_used(static_cast<std::size_t>(inst.num_men()) + 1, false);
  std::vector<bool> woman_used(static_cast<std::size_t>(inst.num_women()) + 1, false);
  for (const auto& [man, woman] : m.pairs()) {
    if (!inst.mutually_acceptable(man, woman)) return false;
    if (man_used[static_cast<std::size_t>(man)] || woman_used[static_cast<std::size_t>(woman)]) return false;
    man_used[static_cast<std::size_t>(man)] = true;
    woman_used[static_cast<std::size_t>(woman)] = true;
  }
  return true;
}

namespace {

// Reason p would leave their current partner for q, or nothing if they would not.
std::optional<BlockReason> would_switch(int rank_of_candidate, int rank_of_partner, bool single) {
  if (rank_of_candidate == RankTable::kUnacceptable) return std::nullopt;
  if (single) return BlockReason::Single;
  if (rank_of_candidate < rank_of_partner) return BlockReason::PrefersOverPartner;
  return std::nullopt;
}

}  // namespace

std::vector<BlockingPair> blocking_pairs(const Instance& inst, const Matching& m) {
  if (!is_valid_matching(inst, m)) throw PreconditionError("blocking_pairs: not a valid matching for the instance");
  const RankTable ranks(inst);
  const auto man_partner = m.man_partners(inst.num_men());
  const auto woman_partner = m.woman_partners(inst.num_women());

  std::vector<BlockingPair> out;
  for (int i = 1; i <= inst.num_men(); ++i) {
    const int wi = man_partner[static_cast<std::size_t>(i)];
    for (int j = 1; j <= inst.num_women(); ++j) {
      if (!ranks.mutual(i, j) || wi == j) continue;
      const int mj = woman_partner[static_cast<std::size_t>(j)];
      const auto man_reason = would_switch(ranks.man_rank(i, j), wi ? ranks.man_rank(i, wi) : 0, wi == 0);
      if (!man_reason) continue;
      const auto woman_reason = would_switch(ranks.woman_rank(j, i), mj ? ranks.woman_rank(j, mj) : 0, mj == 0);
      if (!woman_reason) continue;
      out.push_back({i, j, *man_reason, *woman_reason});
    }
  }
  return out;
}

bool is_stable(const Instance& inst, const Matching& m) { return blocking_pairs(inst, m).empty(); }

bool is_stable_unchecked(const RankTable& ranks, int num_men, int num_women, const std::vector<int>& man_partner,
                         const std::vector<int>& woman_partner) {
  for (int i = 1; i <= num_men; ++i) {
    const int wi = man_partner[static_cast<std::size_t>(i)];
    for (int j = 1; j <= num_women; ++j) {
      if (wi == j || !ranks.mutual(i, j)) continue;
      if (wi != 0 && ranks.man_rank(i, j) >= ranks.man_rank(i, wi)) continue;
      const int mj = woman_partner[static_cast<std::size_t>(j)];
      if (mj != 0 && ranks.woman_rank(j, i) >= ranks.woman_rank(j, mj)) continue;
      return false;
    }
  }
  return true;
}

}  // namespace smti
