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

// Two-sided preference instances with ties and incomplete lists, and the
// matchings defined over them.
//
// Persons are addressed by 1-based index within their side. A preference
// list is a sequence of tie-groups; persons inside one group are equally
// preferred, earlier groups are strictly preferred to later ones, and anyone
// not listed is unacceptable. Acceptability need not be symmetric in the raw
// data: every stability and matching check uses mutual acceptability.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace smti {

enum class Side { Man, Woman };

constexpr Side opposite(Side s) { return s == Side::Man ? Side::Woman : Side::Man; }

struct PersonId {
  Side side = Side::Man;
  int index = 1;

  static constexpr PersonId man(int i) { return {Side::Man, i}; }
  static constexpr PersonId woman(int j) { return {Side::Woman, j}; }

  friend bool operator==(const PersonId&, const PersonId&) = default;
  friend auto operator<=>(const PersonId&, const PersonId&) = default;
};

/// "m3" / "w1".
std::string to_string(PersonId p);

using TieGroup = std::vector<int>;

class PreferenceList {
 public:
  PreferenceList() = default;
  explicit PreferenceList(std::vector<TieGroup> groups) : groups_(std::move(groups)) {}

  /// Strict list: one singleton group per entry.
  static PreferenceList strict(const std::vector<int>& order);

  const std::vector<TieGroup>& groups() const { return groups_; }
  bool empty() const { return groups_.empty(); }
  /// Number of listed persons (not groups).
  std::size_t length() const;
  bool has_ties() const;

  /// Position of the tie-group containing `index`, if listed.
  std::optional<std::size_t> group_of(int index) const;
  bool accepts(int index) const { return group_of(index).has_value(); }

  /// Listed persons in list order, ties flattened as stored.
  std::vector<int> entries() const;

  friend bool operator==(const PreferenceList&, const PreferenceList&) = default;
  friend auto operator<=>(const PreferenceList&, const PreferenceList&) = default;

 private:
  std::vector<TieGroup> groups_;
};

class Instance {
 public:
  Instance() = default;
  /// No validation happens here; use validate_instance().
  Instance(int num_men, int num_women, std::vector<PreferenceList> men_lists,
           std::vector<PreferenceList> women_lists);

  int num_men() const { return num_men_; }
  int num_women() const { return num_women_; }
  int count(Side s) const { return s == Side::Man ? num_men_ : num_women_; }

  const std::vector<PreferenceList>& men_lists() const { return men_; }
  const std::vector<PreferenceList>& women_lists() const { return women_; }

  const PreferenceList& man_list(int i) const { return men_.at(static_cast<std::size_t>(i - 1)); }
  const PreferenceList& woman_list(int j) const { return women_.at(static_cast<std::size_t>(j - 1)); }
  const PreferenceList& list_of(PersonId p) const;

  /// Copy with p's list replaced.
  Instance with_list(PersonId p, PreferenceList list) const;

  bool mutually_acceptable(int man, int woman) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int num_men_ = 0;
  int num_women_ = 0;
  std::vector<PreferenceList> men_;
  std::vector<PreferenceList> women_;
};

enum class ViolationKind { CountMismatch, OutOfRange, DuplicateEntry, EmptyTieGroup };

struct Violation {
  ViolationKind kind;
  std::optional<PersonId> owner;
  int entry = 0;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate_instance(const Instance& inst);
/// Throws PreconditionError carrying the first violation.
void require_valid(const Instance& inst);

enum class ProblemKind { SM, SMI, SMT, SMTI };

struct InstanceClass {
  ProblemKind kind = ProblemKind::SM;
  bool men_have_ties = false;
  bool women_have_ties = false;
  bool lists_complete = true;

  /// Ties, if any, appear only in men's lists.
  bool one_tm() const { return !women_have_ties; }
  bool has_ties() const { return men_have_ties || women_have_ties; }
};

InstanceClass classify_instance(const Instance& inst);
std::string to_string(ProblemKind k);

struct Rank {
  std::size_t group_position = 0;

  friend bool operator==(const Rank&, const Rank&) = default;
  friend auto operator<=>(const Rank&, const Rank&) = default;
};

/// Rank of `target` in `owner`'s list; empty when target is unacceptable.
/// Lower is better. Throws PreconditionError for a same-side query.
std::optional<Rank> rank(const Instance& inst, PersonId owner, PersonId target);

/// Dense rank lookup for hot loops. kUnacceptable marks unlisted persons.
class RankTable {
 public:
  static constexpr int kUnacceptable = -1;

  explicit RankTable(const Instance& inst);

  int man_rank(int man, int woman) const {
    return men_[static_cast<std::size_t>(man - 1) * stride_w_ + static_cast<std::size_t>(woman - 1)];
  }
  int woman_rank(int woman, int man) const {
    return women_[static_cast<std::size_t>(woman - 1) * stride_m_ + static_cast<std::size_t>(man - 1)];
  }
  bool mutual(int man, int woman) const {
    return man_rank(man, woman) != kUnacceptable && woman_rank(woman, man) != kUnacceptable;
  }

 private:
  std::size_t stride_w_;
  std::size_t stride_m_;
  std::vector<int> men_;
  std::vector<int> women_;
};

/// A set of (man, woman) pairs, stored sorted by man then woman. Validity
/// against an instance is checked by is_valid_matching, not here.
class Matching {
 public:
  using Pair = std::pair<int, int>;

  Matching() = default;
  explicit Matching(std::vector<Pair> pairs);

  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  std::optional<int> partner_of_man(int man) const;
  std::optional<int> partner_of_woman(int woman) const;
  std::optional<int> partner_of(PersonId p) const;
  bool contains(int man, int woman) const;

  /// Partner per person, 0 for single. Index 0 unused.
  std::vector<int> man_partners(int num_men) const;
  std::vector<int> woman_partners(int num_women) const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<Pair> pairs_;
};

/// p prefers m_new to m_old: strictly better tie-group in both, or single in
/// m_old and matched in m_new to someone p lists.
bool prefers_matching(const Instance& inst, PersonId p, const Matching& m_new, const Matching& m_old);

/// Men become women and vice versa; list contents are unchanged.
Instance swap_roles(const Instance& inst);
Matching swap_roles(const Matching& m);

}  // namespace smti
