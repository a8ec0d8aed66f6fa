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

#include <cstdint>

#include "smti/core_model.hpp"

namespace smti {

struct GenParams {
  int num_men = 3;
  int num_women = 3;
  double acceptance_probability = 0.5;
  double tie_probability_men = 0.0;
  double tie_probability_women = 0.0;
  /// Forces tie_probability_women to 0.
  bool one_tm = false;
  std::uint64_t seed = 0;
};

/// Seeded random instance. Generation order, all draws from one
/// std::mt19937_64 seeded with `seed`:
///   1. for man i = 1..n, woman j = 1..k: pair acceptable iff u < p_accept;
///      acceptability is mutual by construction.
///   2. for man i = 1..n: Fisher-Yates shuffle of his acceptable women (in
///      ascending index order before shuffling), then for each position
///      2..len: merge into the previous tie-group iff u < tie_probability_men.
///   3. the same for woman j = 1..k with tie_probability_women.
/// u is the top 53 bits of a draw scaled to [0, 1); bounded integers use
/// rejection sampling, so results do not depend on the standard library's
/// distribution implementations.
/// Throws PreconditionError for probabilities outside [0, 1] or negative counts.
Instance gen_instance(const GenParams& params);

enum class PaperInstance { I1, I2, I3, NaTrue, NaManip };

/// The fixed gadget instances:
///   I1       3x3, w2 ties m1 and m2, m3 lists nobody.
///   I2       role-swapped I1.
///   I3       4x4, ties only on the men's side.
///   NaTrue   4x4 instance on which kiraly_na is manipulable by m1.
///   NaManip  NaTrue with m1's list reversed.
Instance paper_instance(PaperInstance id);

}  // namespace smti
