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

#include "smti/core_model.hpp"

#include <algorithm>
#include <set>

#include "smti/errors.hpp"

namespace smti {

std::string to_string(PersonId p) {
  return (p.side == Side::Man ? "m" : "w") + std::to_string(p.index);
}

PreferenceList PreferenceList::strict(const std::vector<int>& order) {
  std::vector<TieGroup> groups;
  groups.reserve(order.size());
  for (int x : order) groups.push_back({x});
  return PreferenceList(std::move(groups));
}

std::size_t PreferenceList::length() const {
  std::size_t n = 0;
  for (const auto& g : groups_) n += g.size();
  return n;
}

bool PreferenceList::has_ties() const {
  return std::any_of(groups_.begin(), groups_.end(), [](const TieGroup& g) { return g.size() > 1; });
}

std::optional<std::size_t> PreferenceList::group_of(int index) const {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (std::find(groups_[g].begin(), groups_[g].end(), index) != groups_[g].end()) return g;
  }
  return std::nullopt;
}

std::vector<int> PreferenceList::entries() const {
  std::vector<int> out;
  for (const auto& g : groups_) out.insert(out.end(), g.begin(), g.end());
  return out;
}

Instance::Instance(int num_men, int num_women, std::vector<PreferenceList> men_lists,
                   std::vector<PreferenceList> women_lists)
    : num_men_(num_men), num_women_(num_women), men_(std::move(men_lists)), women_(std::move(women_lists)) {}

const PreferenceList& Instance::list_of(PersonId p) const {
  return p.side == Side::Man ? man_list(p.index) : woman_list(p.index);
}

Instance Instance::with_list(PersonId p, PreferenceList list) const {
  Instance copy = *this;
  auto& lists = p.side == Side::Man ? copy.men_ : copy.women_;
  lists.at(static_cast<std::size_t>(p.index - 1)) = std::move(list);
  return copy;
}

bool Instance::mutually_acceptable(int man, int woman) const {
  if (man < 1 || man > num_men_ || woman < 1 || woman > num_women_) return false;
  return man_list(man).accepts(woman) && woman_list(woman).accepts(man);
}

namespace {

void check_lists(const std::vector<PreferenceList>& lists, Side side, int opposite_count,
                 ValidationReport& report) {
  for (std::size_t k = 0; k < lists.size(); ++k) {
    const PersonId owner{side, static_cast<int>(k + 1)};
    std::set<int> seen;
    for (const auto& group : lists[k].groups()) {
      if (group.empty()) {
        report.push_back({ViolationKind::EmptyTieGroup, owner, 0, to_string(owner) + ": empty tie-group"});
      }
      for (int x : group) {
        const PersonId target{opposite(side), x};
        if (x < 1 || x > opposite_count) {
          report.push_back({ViolationKind::OutOfRange, owner, x,
                            to_string(owner) + ": " + to_string(target) + " is out of range"});
        } else if (!seen.insert(x).second) {
          report.push_back({ViolationKind::DuplicateEntry, owner, x,
                            to_string(owner) + ": " + to_string(target) + " listed more than once"});
        }
      }
    }
  }
}

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  if (inst.num_men() < 0 || inst.num_women() < 0) {
    report.push_back({ViolationKind::CountMismatch, std::nullopt, 0, "negative person count"});
    return report;
  }
  if (inst.men_lists().size() != static_cast<std::size_t>(inst.num_men())) {
    report.push_back({ViolationKind::CountMismatch, std::nullopt, 0,
                      "declared " + std::to_string(inst.num_men()) + " men but got " +
                          std::to_string(inst.men_lists().size()) + " lists"});
  }
  if (inst.women_lists().size() != static_cast<std::size_t>(inst.num_women())) {
    report.push_back({ViolationKind::CountMismatch, std::nullopt, 0,
                      "declared " + std::to_string(inst.num_women()) + " women but got " +
                          std::to_string(inst.women_lists().size()) + " lists"});
  }
  check_lists(inst.men_lists(), Side::Man, inst.num_women(), report);
  check_lists(inst.women_lists(), Side::Woman, inst.num_men(), report);
  return report;
}

void require_valid(const Instance& inst) {
  const auto report = validate_instance(inst);
  if (!report.empty()) throw PreconditionError("invalid instance: " + report.front().message);
}

InstanceClass classify_instance(const Instance& inst) {
  InstanceClass c;
  for (const auto& l : inst.men_lists()) {
    c.men_have_ties |= l.has_ties();
    c.lists_complete &= l.length() == static_cast<std::size_t>(inst.num_women());
  }
  for (const auto& l : inst.women_lists()) {
    c.women_have_ties |= l.has_ties();
    c.lists_complete &= l.length() == static_cast<std::size_t>(inst.num_men());
  }
  if (c.has_ties()) {
    c.kind = c.lists_complete ? ProblemKind::SMT : ProblemKind::SMTI;
  } else {
    c.kind = c.lists_complete ? ProblemKind::SM : ProblemKind::SMI;
  }
  return c;
}

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::SM: return "SM";
    case ProblemKind::SMI: return "SMI";
    case ProblemKind::SMT: return "SMT";
    case ProblemKind::SMTI: return "SMTI";
  }
  return "?";
}

std::optional<Rank> rank(const Instance& inst, PersonId owner, PersonId target) {
  if (owner.side == target.side) {
    throw PreconditionError("rank: " + to_string(owner) + " and " + to_string(target) + " are on the same side");
  }
  if (const auto g = inst.list_of(owner).group_of(target.index)) return Rank{*g};
  return std::nullopt;
}

RankTable::RankTable(const Instance& inst)
    : stride_w_(static_cast<std::size_t>(inst.num_women())),
      stride_m_(static_cast<std::size_t>(inst.num_men())),
      men_(stride_m_ * stride_w_, kUnacceptable),
      women_(stride_m_ * stride_w_, kUnacceptable) {
  for (int i = 1; i <= inst.num_men(); ++i) {
    const auto& groups = inst.man_list(i).groups();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (int w : groups[g]) {
        if (w >= 1 && w <= inst.num_women()) {
          men_[static_cast<std::size_t>(i - 1) * stride_w_ + static_cast<std::size_t>(w - 1)] = static_cast<int>(g);
        }
      }
    }
  }
  for (int j = 1; j <= inst.num_women(); ++j) {
    const auto& groups = inst.woman_list(j).groups();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (int m : groups[g]) {
        if (m >= 1 && m <= inst.num_men()) {
          women_[static_cast<std::size_t>(j - 1) * stride_m_ + static_cast<std::size_t>(m - 1)] = static_cast<int>(g);
        }
      }
    }
  }
}

Matching::Matching(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
}

std::optional<int> Matching::partner_of_man(int man) const {
  for (const auto& [m, w] : pairs_) {
    if (m == man) return w;
  }
  return std::nullopt;
}

std::optional<int> Matching::partner_of_woman(int woman) const {
  for (const auto& [m, w] : pairs_) {
    if (w == woman) return m;
  }
  return std::nullopt;
}

std::optional<int> Matching::partner_of(PersonId p) const {
  return p.side == Side::Man ? partner_of_man(p.index) : partner_of_woman(p.index);
}

bool Matching::contains(int man, int woman) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), Pair{man, woman});
}

std::vector<int> Matching::man_partners(int num_men) const {
  std::vector<int> out(static_cast<std::size_t>(num_men) + 1, 0);
  for (const auto& [m, w] : pairs_) {
    if (m >= 1 && m <= num_men) out[static_cast<std::size_t>(m)] = w;
  }
  return out;
}

std::vector<int> Matching::woman_partners(int num_women) const {
  std::vector<int> out(static_cast<std::size_t>(num_women) + 1, 0);
  for (const auto& [m, w] : pairs_) {
    if (w >= 1 && w <= num_women) out[static_cast<std::size_t>(w)] = m;
  }
  return out;
}

bool prefers_matching(const Instance& inst, PersonId p, const Matching& m_new, const Matching& m_old) {
  const auto new_partner = m_new.partner_of(p);
  if (!new_partner) return false;
  const PersonId np{opposite(p.side), *new_partner};
  const auto new_rank = rank(inst, p, np);
  if (!new_rank) return false;

  const auto old_partner = m_old.partner_of(p);
  if (!old_partner) return true;
  const auto old_rank = rank(inst, p, PersonId{opposite(p.side), *old_partner});
  // An unacceptable old partner cannot arise from a valid matching; treat it
  // as worse than any listed person.
  if (!old_rank) return true;
  return *new_rank < *old_rank;
}

Instance swap_roles(const Instance& inst) {
  return Instance(inst.num_women(), inst.num_men(), inst.women_lists(), inst.men_lists());
}

Matching swap_roles(const Matching& m) {
  std::vector<Matching::Pair> pairs;
  pairs.reserve(m.size());
  for (const auto& [man, woman] : m.pairs()) pairs.emplace_back(woman, man);
  return Matching(std::move(pairs));
}

}  // namespace smti
