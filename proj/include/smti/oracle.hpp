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

// Exhaustive ground truth for small instances: every stable matching, the
// largest stable size, exact approximation ratios, and brute-force searches
// for profitable misreports by one person or a same-side coalition.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "smti/core_model.hpp"
#include "smti/mechanisms.hpp"

namespace smti {

using Ratio = boost::rational<std::int64_t>;

struct OracleLimits {
  /// Cap on the product over men of (mutually acceptable partners + 1),
  /// the number of leaves of the unpruned search tree.
  std::uint64_t max_search_space = 50'000'000;
};

/// Search-space measure compared against OracleLimits::max_search_space.
std::uint64_t oracle_search_space(const Instance& inst);

/// All stable matchings, sorted and deduplicated. Throws SearchLimitError
/// when the instance exceeds `limits`.
std::vector<Matching> enumerate_stable_matchings(const Instance& inst, const OracleLimits& limits = {});

struct MaxStable {
  std::size_t size = 0;
  /// First maximum-size stable matching in sorted order.
  Matching witness;
};

MaxStable max_stable_size(const Instance& inst, const OracleLimits& limits = {});

/// |M_opt| / |m| exactly; 1 when both are empty. Throws PreconditionError
/// if `m` is not a stable matching of `inst`.
Ratio approx_ratio(const Instance& inst, const Matching& m, const OracleLimits& limits = {});

/// Mechanism as a pair of callbacks, so searches and audits can run against
/// mechanisms that are not in MechanismId.
struct Mechanism {
  std::string name;
  std::function<Matching(const Instance&)> run;
  std::function<bool(const Instance&)> admissible;

  static Mechanism from_id(MechanismId id);
};

/// Returns the first maximum stable matching in sorted order. Stable and
/// exact, but not strategy-proof; used as a planted subject for audits.
Mechanism lexicographic_max_stable_mechanism(const OracleLimits& limits = {});

enum class StrategyKind { ExhaustiveStrict, ExhaustiveWithTies, Truncate, Permute };

std::string_view to_string(StrategyKind k);
std::optional<StrategyKind> parse_strategy_kind(std::string_view name);

struct StrategySpace {
  StrategyKind kind = StrategyKind::ExhaustiveStrict;
  /// Largest opposite side for ExhaustiveStrict.
  std::size_t max_strict_opposite = 5;
  /// Largest opposite side for ExhaustiveWithTies.
  std::size_t max_tie_opposite = 3;
  /// Truncate only: shortest prefix, counted in tie-groups.
  std::size_t min_truncate_groups = 0;
  /// Cap on candidate lists (coalitions: on joint candidates).
  std::size_t max_candidates = 1'000'000;
};

/// Candidate lists for `p` in deterministic order:
///   ExhaustiveStrict    every strict order of every subset of the opposite
///                       side; subsets by ascending size then
///                       lexicographically, orders lexicographically.
///   ExhaustiveWithTies  every ordered partition of every subset, same subset
///                       order, partitions lexicographic over their sorted
///                       tie-groups.
///   Truncate            prefixes of the true list by whole tie-groups,
///                       shortest first.
///   Permute             strict reorderings of the true list's members,
///                       lexicographic.
/// Throws SearchLimitError when the space exceeds its caps.
std::vector<PreferenceList> strategy_candidates(const Instance& inst, PersonId p, const StrategySpace& space);

struct ManipulationWitness {
  std::vector<PersonId> manipulators;
  /// Parallel to `manipulators`.
  std::vector<PreferenceList> falsified_lists;
  Matching honest;
  Matching manipulated;
};

/// First candidate in `space` with which `p` obtains an outcome they prefer
/// under their true list. Candidates the mechanism does not admit are
/// skipped. With jobs > 1, candidates are evaluated on worker threads; the
/// returned witness is the same as with jobs == 1.
/// Throws PreconditionError if the mechanism does not admit `inst`.
std::optional<ManipulationWitness> find_manipulation(const Instance& inst, const Mechanism& mech, PersonId p,
                                                     const StrategySpace& space, unsigned jobs = 1);
std::optional<ManipulationWitness> find_manipulation(const Instance& inst, MechanismId mech, PersonId p,
                                                     const StrategySpace& space, unsigned jobs = 1);

/// Joint misreports in which every member improves. Each member may also
/// keep their true list. Joint candidates are visited with the first member
/// varying slowest. Members must be distinct and on one side.
std::optional<ManipulationWitness> find_coalition_manipulation(const Instance& inst, const Mechanism& mech,
                                                               std::span<const PersonId> coalition,
                                                               const StrategySpace& space, unsigned jobs = 1);
std::optional<ManipulationWitness> find_coalition_manipulation(const Instance& inst, MechanismId mech,
                                                               std::span<const PersonId> coalition,
                                                               const StrategySpace& space, unsigned jobs = 1);

struct RuralHospitalsReport {
  std::size_t stable_matchings = 0;
  bool equal_cardinality = true;
  bool same_matched_persons = true;
};

/// Requires strict lists (PreconditionError otherwise).
RuralHospitalsReport rural_hospitals_report(const Instance& inst, const OracleLimits& limits = {});
bool rural_hospitals_check(const Instance& inst, const OracleLimits& limits = {});

/// A connected component m_i - w_j - m_k - w_l of the union of `output` and
/// `reference` where (m_i, w_j) and (m_k, w_l) come from `reference` and
/// (m_k, w_j) from `output`. Returns {m_i, w_j, m_k, w_l}.
std::optional<std::array<int, 4>> find_forbidden_path(const Matching& output, const Matching& reference);

enum class Gadget { I1, I2, I3 };
enum class AuditVerdict { RatioViolated, ManipulationFound, Consistent };

std::string_view to_string(Gadget g);
std::string_view to_string(AuditVerdict v);

struct AuditResult {
  Gadget gadget = Gadget::I1;
  /// Output on the gadget, then on the deletion branch if one was run.
  std::vector<Matching> outputs;
  AuditVerdict verdict = AuditVerdict::Consistent;
  std::string detail;
  std::optional<ManipulationWitness> witness;
};

/// Replays the lower-bound argument for `gadget` against `mech`: an unstable
/// or too-small output violates the ratio; otherwise the person named by the
/// gadget for that output drops one entry and the mechanism is rerun to see
/// whether they gain. Throws PreconditionError when the mechanism does not
/// admit the gadget or returns something that is not a matching.
AuditResult gadget_audit(const Mechanism& mech, Gadget gadget, const OracleLimits& limits = {});
AuditResult gadget_audit(MechanismId mech, Gadget gadget, const OracleLimits& limits = {});

}  // namespace smti
