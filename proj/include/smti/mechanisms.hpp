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

// Deterministic matching mechanisms.
//
//   mgs / wgs          deferred acceptance with men / women proposing; strict
//                      lists only.
//   tiebreak_mechanism break ties by ascending index, then mgs (or the
//                      role-swapped variant). Stable in the tied instance,
//                      2-approximate, strategy-proof for the proposing side.
//   onetm_mechanism    for instances where only men's lists have ties:
//                      translate into a strict instance with two copies of
//                      each woman plus a dummy man per woman, run mgs there,
//                      read the matching back. Stable, 1.5-approximate and
//                      man-strategy-proof.
//   kiraly_na          Kiraly's "New Algorithm" restricted to men proposing
//                      once, with smallest-index tie resolution. Shipped as a
//                      manipulation subject; no ratio is claimed for it.

#include <optional>
#include <string_view>
#include <vector>

#include "smti/core_model.hpp"

namespace smti {

enum class MechanismId { MgsMan, MgsWoman, TiebreakMan, TiebreakWoman, OneTmFifteen, KiralyNa };

inline constexpr MechanismId kAllMechanisms[] = {MechanismId::MgsMan,        MechanismId::MgsWoman,
                                                 MechanismId::TiebreakMan,   MechanismId::TiebreakWoman,
                                                 MechanismId::OneTmFifteen, MechanismId::KiralyNa};

/// CLI names: mgs-man, mgs-woman, tiebreak-man, tiebreak-woman, onetm-15, kiraly-na.
std::string_view to_string(MechanismId id);
std::optional<MechanismId> parse_mechanism_id(std::string_view name);

/// Whether `id` accepts `inst` (valid, and no ties where the mechanism
/// forbids them).
bool is_admissible(MechanismId id, const Instance& inst);

/// Throws PreconditionError when !is_admissible(id, inst).
Matching run_mechanism(MechanismId id, const Instance& inst);

/// Men-proposing deferred acceptance. The smallest-index free man with a
/// non-empty remaining list proposes next. Throws PreconditionError on ties.
Matching mgs(const Instance& inst);
/// Women-proposing deferred acceptance.
Matching wgs(const Instance& inst);

/// Each tie-group flattened into ascending index order.
Instance break_ties_by_index(const Instance& inst);

/// Proposing side picks the orientation.
Matching tiebreak_mechanism(const Instance& inst, Side proposing);

/// Index bookkeeping between an instance with n men and k women and its
/// translation, which has n + k men (a_1..a_n, b_1..b_k) and 2k women
/// (s_1..s_k, t_1..t_k). Vectors are indexed by original 1-based index; slot
/// 0 is unused.
struct TranslationMap {
  std::vector<int> a_of_man;
  std::vector<int> b_of_woman;
  std::vector<int> s_of_woman;
  std::vector<int> t_of_woman;

  int original_men() const { return static_cast<int>(a_of_man.size()) - 1; }
  int original_women() const { return static_cast<int>(s_of_woman.size()) - 1; }
  int translated_men() const { return original_men() + original_women(); }
  int translated_women() const { return 2 * original_women(); }

  /// Original man behind an a-man, if `translated_man` is one.
  std::optional<int> man_of_a(int translated_man) const;
  /// Original woman behind an s- or t-woman.
  int woman_of_copy(int translated_woman) const;
};

struct Translation {
  Instance instance;
  TranslationMap map;
};

/// Throws PreconditionError if any woman's list has a tie.
Translation translate_1tm(const Instance& inst);

/// Intermediate state of onetm_mechanism, exposed for invariant checks.
struct OneTmTrace {
  Translation translation;
  Matching translated_matching;
  Matching result;
};

OneTmTrace onetm_trace(const Instance& inst);
Matching onetm_mechanism(const Instance& inst);

Matching kiraly_na(const Instance& inst);

}  // namespace smti
