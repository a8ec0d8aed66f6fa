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

#include "smti/oracle.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <set>
#include <thread>

#include "smti/errors.hpp"
#include "smti/instance_gen.hpp"
#include "smti/stability.hpp"

namespace smti {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

class StableEnumerator {
 public:
  explicit StableEnumerator(const Instance& inst)
      : inst_(inst),
        ranks_(inst),
        man_partner_(static_cast<std::size_t>(inst.num_men()) + 1, 0),
        woman_partner_(static_cast<std::size_t>(inst.num_women()) + 1, 0) {}

  std::vector<Matching> run() {
    descend(1);
    std::sort(found_.begin(), found_.end());
    found_.erase(std::unique(found_.begin(), found_.end()), found_.end());
    return std::move(found_);
  }

 private:
  // (man, woman) blocks given both partners as currently assigned.
  bool blocks(int man, int woman) const {
    if (!ranks_.mutual(man, woman)) return false;
    const int wm = man_partner_[static_cast<std::size_t>(man)];
    if (wm == woman) return false;
    if (wm != 0 && ranks_.man_rank(man, woman) >= ranks_.man_rank(man, wm)) return false;
    const int mw = woman_partner_[static_cast<std::size_t>(woman)];
    if (mw != 0 && ranks_.woman_rank(woman, man) >= ranks_.woman_rank(woman, mw)) return false;
    return true;
  }

  // Men 1..man are final, and so is every matched woman. A pair made only of
  // final persons that blocks now blocks every completion.
  bool settled_pairs_block(int man) const {
    for (int j = 1; j <= inst_.num_women(); ++j) {
      if (woman_partner_[static_cast<std::size_t>(j)] != 0 && blocks(man, j)) return true;
    }
    const int w = man_partner_[static_cast<std::size_t>(man)];
    if (w != 0) {
      for (int k = 1; k < man; ++k) {
        if (blocks(k, w)) return true;
      }
    }
    return false;
  }

  void descend(int man) {
    if (man > inst_.num_men()) {
      if (is_stable_unchecked(ranks_, inst_.num_men(), inst_.num_women(), man_partner_, woman_partner_)) {
        std::vector<Matching::Pair> pairs;
        for (int i = 1; i <= inst_.num_men(); ++i) {
          if (const int w = man_partner_[static_cast<std::size_t>(i)]) pairs.emplace_back(i, w);
        }
        found_.emplace_back(std::move(pairs));
      }
      return;
    }
    const auto mi = static_cast<std::size_t>(man);
    for (int w = 1; w <= inst_.num_women(); ++w) {
      const auto wi = static_cast<std::size_t>(w);
      if (woman_partner_[wi] != 0 || !ranks_.mutual(man, w)) continue;
      man_partner_[mi] = w;
      woman_partner_[wi] = man;
      if (!settled_pairs_block(man)) descend(man + 1);
      man_partner_[mi] = 0;
      woman_partner_[wi] = 0;
    }
    if (!settled_pairs_block(man)) descend(man + 1);
  }

  const Instance& inst_;
  RankTable ranks_;
  std::vector<int> man_partner_;
  std::vector<int> woman_partner_;
  std::vector<Matching> found_;
};

PreferenceList canonical(const PreferenceList& l) {
  auto groups = l.groups();
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return PreferenceList(std::move(groups));
}

// Subsets of {1..k} by ascending size, then lexicographically.
std::vector<std::vector<int>> ordered_subsets(int k) {
  std::vector<std::vector<int>> out;
  for (int size = 0; size <= k; ++size) {
    std::vector<bool> pick(static_cast<std::size_t>(k), false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<int> subset;
      for (int x = 0; x < k; ++x) {
        if (pick[static_cast<std::size_t>(x)]) subset.push_back(x + 1);
      }
      out.push_back(std::move(subset));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

void ordered_partitions(const std::vector<int>& rest, std::vector<TieGroup>& prefix,
                        std::vector<std::vector<TieGroup>>& out) {
  if (rest.empty()) {
    out.push_back(prefix);
    return;
  }
  const std::size_t n = rest.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    TieGroup group;
    std::vector<int> remaining;
    for (std::size_t b = 0; b < n; ++b) {
      ((mask >> b) & 1u ? group : remaining).push_back(rest[b]);
    }
    prefix.push_back(std::move(group));
    ordered_partitions(remaining, prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f = saturating_mul(f, k);
  return f;
}

std::vector<int> partners_of(const Matching& m, Side side, int count) {
  return side == Side::Man ? m.man_partners(count) : m.woman_partners(count);
}

// Evaluates `evaluate(k)` for k in [0, count) and returns the smallest k for
// which it yields a value. With jobs > 1 blocks of candidates run on worker
// threads; the minimum index is still the one returned.
template <typename T, typename F>
std::optional<std::pair<std::size_t, T>> first_hit(std::size_t count, unsigned jobs, F evaluate) {
  if (jobs <= 1) {
    for (std::size_t k = 0; k < count; ++k) {
      if (auto v = evaluate(k)) return std::pair{k, std::move(*v)};
    }
    return std::nullopt;
  }
  const std::size_t block = static_cast<std::size_t>(jobs) * 16;
  for (std::size_t begin = 0; begin < count; begin += block) {
    const std::size_t end = std::min(count, begin + block);
    std::vector<std::optional<T>> results(end - begin);
    std::atomic<std::size_t> next{begin};
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&] {
        for (std::size_t k = next++; k < end; k = next++) results[k - begin] = evaluate(k);
      });
    }
    for (auto& w : workers) w.join();
    for (std::size_t k = begin; k < end; ++k) {
      if (results[k - begin]) return std::pair{k, std::move(*results[k - begin])};
    }
  }
  return std::nullopt;
}

struct GadgetBranch {
  Matching output;
  PersonId manipulator;
  int dropped;
};

struct GadgetSpec {
  Instance instance;
  std::string ratio_label;
  std::vector<GadgetBranch> branches;
};

GadgetSpec gadget_spec(Gadget g) {
  using P = Matching::Pair;
  switch (g) {
    case Gadget::I1:
      return {paper_instance(PaperInstance::I1),
              "2",
              {{Matching({P{1, 1}, P{2, 2}}), PersonId::man(1), 1},
               {Matching({P{1, 2}, P{2, 3}}), PersonId::man(2), 3}}};
    case Gadget::I2:
      return {paper_instance(PaperInstance::I2),
              "2",
              {{Matching({P{1, 1}, P{2, 2}}), PersonId::woman(1), 1},
               {Matching({P{2, 1}, P{3, 2}}), PersonId::woman(2), 3}}};
    case Gadget::I3:
      return {paper_instance(PaperInstance::I3),
              "1.5",
              {{Matching({P{1, 1}, P{2, 2}, P{3, 3}}), PersonId::man(1), 1},
               {Matching({P{1, 2}, P{2, 3}, P{3, 4}}), PersonId::man(3), 4}}};
  }
  throw PreconditionError("unknown gadget");
}

PreferenceList without(const PreferenceList& l, int dropped) {
  std::vector<TieGroup> groups;
  for (auto g : l.groups()) {
    std::erase(g, dropped);
    if (!g.empty()) groups.push_back(std::move(g));
  }
  return PreferenceList(std::move(groups));
}

std::string describe(const Matching& m) {
  std::string s = "{";
  for (const auto& [man, woman] : m.pairs()) {
    if (s.size() > 1) s += ", ";
    s += "(m" + std::to_string(man) + ",w" + std::to_string(woman) + ")";
  }
  return s + "}";
}

}  // namespace

std::uint64_t oracle_search_space(const Instance& inst) {
  std::uint64_t total = 1;
  for (int i = 1; i <= inst.num_men(); ++i) {
    std::uint64_t options = 1;
    for (int w : inst.man_list(i).entries()) {
      if (inst.mutually_acceptable(i, w)) ++options;
    }
    total = saturating_mul(total, options);
  }
  return total;
}

std::vector<Matching> enumerate_stable_matchings(const Instance& inst, const OracleLimits& limits) {
  require_valid(inst);
  const auto space = oracle_search_space(inst);
  if (space > limits.max_search_space) {
    throw SearchLimitError("instance too large for oracle: search space " + std::to_string(space) + " exceeds cap " +
                           std::to_string(limits.max_search_space));
  }
  return StableEnumerator(inst).run();
}

MaxStable max_stable_size(const Instance& inst, const OracleLimits& limits) {
  const auto all = enumerate_stable_matchings(inst, limits);
  MaxStable best{0, Matching{}};
  bool first = true;
  for (const auto& m : all) {
    if (first || m.size() > best.size) {
      best = {m.size(), m};
      first = false;
    }
  }
  return best;
}

Ratio approx_ratio(const Instance& inst, const Matching& m, const OracleLimits& limits) {
  if (!is_valid_matching(inst, m) || !is_stable(inst, m)) {
    throw PreconditionError("approx_ratio: matching is not stable for the instance");
  }
  const auto opt = static_cast<std::int64_t>(max_stable_size(inst, limits).size);
  const auto got = static_cast<std::int64_t>(m.size());
  if (got == 0) {
    if (opt == 0) return Ratio(1);
    throw PreconditionError("approx_ratio: empty matching with a non-empty optimum");
  }
  return Ratio(opt, got);
}

Mechanism Mechanism::from_id(MechanismId id) {
  return {std::string(to_string(id)), [id](const Instance& inst) { return run_mechanism(id, inst); },
          [id](const Instance& inst) { return is_admissible(id, inst); }};
}

Mechanism lexicographic_max_stable_mechanism(const OracleLimits& limits) {
  return {"lex-max-stable", [limits](const Instance& inst) { return max_stable_size(inst, limits).witness; },
          [](const Instance& inst) { return validate_instance(inst).empty(); }};
}

std::string_view to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::ExhaustiveStrict: return "exhaustive-strict";
    case StrategyKind::ExhaustiveWithTies: return "exhaustive-ties";
    case StrategyKind::Truncate: return "truncate";
    case StrategyKind::Permute: return "permute";
  }
  return "?";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view name) {
  for (auto k : {StrategyKind::ExhaustiveStrict, StrategyKind::ExhaustiveWithTies, StrategyKind::Truncate,
                 StrategyKind::Permute}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<PreferenceList> strategy_candidates(const Instance& inst, PersonId p, const StrategySpace& space) {
  const int k = inst.count(opposite(p.side));
  const auto& truth = inst.list_of(p);
  std::vector<PreferenceList> out;

  const auto check_count = [&](std::uint64_t n) {
    if (n > space.max_candidates) {
      throw SearchLimitError("strategy space for " + to_string(p) + " has " + std::to_string(n) +
                             " candidates, cap is " + std::to_string(space.max_candidates));
    }
  };

  switch (space.kind) {
    case StrategyKind::ExhaustiveStrict: {
      if (static_cast<std::size_t>(k) > space.max_strict_opposite) {
        throw SearchLimitError("exhaustive strict space: " + std::to_string(k) + " opposite persons exceeds cap " +
                               std::to_string(space.max_strict_opposite));
      }
      for (auto subset : ordered_subsets(k)) {
        do {
          out.push_back(PreferenceList::strict(subset));
          check_count(out.size());
        } while (std::next_permutation(subset.begin(), subset.end()));
      }
      break;
    }
    case StrategyKind::ExhaustiveWithTies: {
      if (static_cast<std::size_t>(k) > space.max_tie_opposite) {
        throw SearchLimitError("exhaustive tie space: " + std::to_string(k) + " opposite persons exceeds cap " +
                               std::to_string(space.max_tie_opposite));
      }
      for (const auto& subset : ordered_subsets(k)) {
        std::vector<std::vector<TieGroup>> partitions;
        std::vector<TieGroup> prefix;
        ordered_partitions(subset, prefix, partitions);
        std::sort(partitions.begin(), partitions.end());
        for (auto& groups : partitions) out.emplace_back(std::move(groups));
        check_count(out.size());
      }
      break;
    }
    case StrategyKind::Truncate: {
      const auto& groups = truth.groups();
      for (std::size_t len = space.min_truncate_groups; len <= groups.size(); ++len) {
        out.emplace_back(std::vector<TieGroup>(groups.begin(), groups.begin() + static_cast<std::ptrdiff_t>(len)));
      }
      check_count(out.size());
      break;
    }
    case StrategyKind::Permute: {
      auto members = truth.entries();
      std::sort(members.begin(), members.end());
      check_count(factorial(members.size()));
      do {
        out.push_back(PreferenceList::strict(members));
      } while (std::next_permutation(members.begin(), members.end()));
      break;
    }
  }
  return out;
}

std::optional<ManipulationWitness> find_manipulation(const Instance& inst, const Mechanism& mech, PersonId p,
                                                     const StrategySpace& space, unsigned jobs) {
  if (!mech.admissible(inst)) {
    throw PreconditionError("mechanism " + mech.name + " does not admit the instance");
  }
  const Matching honest = mech.run(inst);
  const auto candidates = strategy_candidates(inst, p, space);
  const auto truth = canonical(inst.list_of(p));

  auto hit = first_hit<Matching>(candidates.size(), jobs, [&](std::size_t k) -> std::optional<Matching> {
    if (canonical(candidates[k]) == truth) return std::nullopt;
    const Instance lie = inst.with_list(p, candidates[k]);
    if (!mech.admissible(lie)) return std::nullopt;
    Matching out = mech.run(lie);
    if (prefers_matching(inst, p, out, honest)) return out;
    return std::nullopt;
  });
  if (!hit) return std::nullopt;
  return ManipulationWitness{{p}, {candidates[hit->first]}, honest, std::move(hit->second)};
}

std::optional<ManipulationWitness> find_manipulation(const Instance& inst, MechanismId mech, PersonId p,
                                                     const StrategySpace& space, unsigned jobs) {
  return find_manipulation(inst, Mechanism::from_id(mech), p, space, jobs);
}

std::optional<ManipulationWitness> find_coalition_manipulation(const Instance& inst, const Mechanism& mech,
                                                               std::span<const PersonId> coalition,
                                                               const StrategySpace& space, unsigned jobs) {
  if (coalition.empty()) throw PreconditionError("coalition is empty");
  std::set<PersonId> distinct(coalition.begin(), coalition.end());
  if (distinct.size() != coalition.size()) throw PreconditionError("coalition lists a person twice");
  for (const auto& p : coalition) {
    if (p.side != coalition.front().side) throw PreconditionError("coalition members must be on one side");
    if (p.index < 1 || p.index > inst.count(p.side)) throw PreconditionError(to_string(p) + " is out of range");
  }
  if (!mech.admissible(inst)) {
    throw PreconditionError("mechanism " + mech.name + " does not admit the instance");
  }

  // Per member: the true list first if the space lacks it, then the space.
  std::vector<std::vector<PreferenceList>> options;
  std::vector<std::size_t> honest_index;
  std::uint64_t joint = 1;
  for (const auto& p : coalition) {
    auto cands = strategy_candidates(inst, p, space);
    const auto truth = canonical(inst.list_of(p));
    const auto it = std::find_if(cands.begin(), cands.end(), [&](const auto& c) { return canonical(c) == truth; });
    if (it == cands.end()) {
      cands.insert(cands.begin(), inst.list_of(p));
      honest_index.push_back(0);
    } else {
      honest_index.push_back(static_cast<std::size_t>(it - cands.begin()));
    }
    joint = saturating_mul(joint, cands.size());
    options.push_back(std::move(cands));
  }
  if (joint > space.max_candidates) {
    throw SearchLimitError("coalition strategy space has " + std::to_string(joint) + " joint candidates, cap is " +
                           std::to_string(space.max_candidates));
  }

  const Matching honest = mech.run(inst);
  const auto choice_of = [&](std::size_t flat) {
    std::vector<std::size_t> choice(coalition.size());
    for (std::size_t m = coalition.size(); m-- > 0;) {
      choice[m] = flat % options[m].size();
      flat /= options[m].size();
    }
    return choice;
  };

  auto hit = first_hit<Matching>(static_cast<std::size_t>(joint), jobs, [&](std::size_t flat) -> std::optional<Matching> {
    const auto choice = choice_of(flat);
    if (choice == honest_index) return std::nullopt;
    Instance lie = inst;
    for (std::size_t m = 0; m < coalition.size(); ++m) lie = lie.with_list(coalition[m], options[m][choice[m]]);
    if (!mech.admissible(lie)) return std::nullopt;
    Matching out = mech.run(lie);
    for (const auto& p : coalition) {
      if (!prefers_matching(inst, p, out, honest)) return std::nullopt;
    }
    return out;
  });
  if (!hit) return std::nullopt;

  ManipulationWitness w;
  w.manipulators.assign(coalition.begin(), coalition.end());
  const auto choice = choice_of(hit->first);
  for (std::size_t m = 0; m < coalition.size(); ++m) w.falsified_lists.push_back(options[m][choice[m]]);
  w.honest = honest;
  w.manipulated = std::move(hit->second);
  return w;
}

std::optional<ManipulationWitness> find_coalition_manipulation(const Instance& inst, MechanismId mech,
                                                               std::span<const PersonId> coalition,
                                                               const StrategySpace& space, unsigned jobs) {
  return find_coalition_manipulation(inst, Mechanism::from_id(mech), coalition, space, jobs);
}

RuralHospitalsReport rural_hospitals_report(const Instance& inst, const OracleLimits& limits) {
  if (classify_instance(inst).has_ties()) throw PreconditionError("rural_hospitals_check: instance has ties");
  const auto all = enumerate_stable_matchings(inst, limits);
  RuralHospitalsReport report;
  report.stable_matchings = all.size();
  if (all.empty()) return report;

  const auto matched = [&](const Matching& m) {
    auto men = partners_of(m, Side::Man, inst.num_men());
    auto women = partners_of(m, Side::Woman, inst.num_women());
    std::vector<bool> flags;
    for (int x : men) flags.push_back(x != 0);
    for (int x : women) flags.push_back(x != 0);
    return flags;
  };
  const auto reference = matched(all.front());
  for (const auto& m : all) {
    report.equal_cardinality &= m.size() == all.front().size();
    report.same_matched_persons &= matched(m) == reference;
  }
  return report;
}

bool rural_hospitals_check(const Instance& inst, const OracleLimits& limits) {
  return rural_hospitals_report(inst, limits).equal_cardinality;
}

std::optional<std::array<int, 4>> find_forbidden_path(const Matching& output, const Matching& reference) {
  for (const auto& [mk, wj] : output.pairs()) {
    if (reference.contains(mk, wj)) continue;
    const auto mi = reference.partner_of_woman(wj);
    const auto wl = reference.partner_of_man(mk);
    if (!mi || !wl) continue;
    if (output.partner_of_man(*mi) || output.partner_of_woman(*wl)) continue;
    return std::array<int, 4>{*mi, wj, mk, *wl};
  }
  return std::nullopt;
}

std::string_view to_string(Gadget g) {
  switch (g) {
    case Gadget::I1: return "i1";
    case Gadget::I2: return "i2";
    case Gadget::I3: return "i3";
  }
  return "?";
}

std::string_view to_string(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::RatioViolated: return "RatioViolated";
    case AuditVerdict::ManipulationFound: return "ManipulationFound";
    case AuditVerdict::Consistent: return "Consistent";
  }
  return "?";
}

AuditResult gadget_audit(const Mechanism& mech, Gadget gadget, const OracleLimits& limits) {
  const GadgetSpec spec = gadget_spec(gadget);
  if (!mech.admissible(spec.instance)) {
    throw PreconditionError("mechanism " + mech.name + " does not admit gadget " + std::string(to_string(gadget)));
  }
  const auto valid_output = [&](const Instance& inst) {
    Matching out = mech.run(inst);
    if (!is_valid_matching(inst, out)) {
      throw PreconditionError("mechanism " + mech.name + " returned an invalid matching");
    }
    return out;
  };
  const std::string not_approx = "not (" + spec.ratio_label + "-ε)-approximate";

  AuditResult result;
  result.gadget = gadget;
  // An unstable output is not an approximate solution of any ratio.
  const auto unstable = [&](const Matching& out, const std::string& where) {
    result.verdict = AuditVerdict::RatioViolated;
    result.detail = "output " + describe(out) + where + " is not stable: " + not_approx;
  };

  const Matching out = valid_output(spec.instance);
  result.outputs.push_back(out);
  if (!is_stable(spec.instance, out)) {
    unstable(out, "");
    return result;
  }

  const auto opt = max_stable_size(spec.instance, limits).size;
  if (out.size() < opt) {
    result.verdict = AuditVerdict::RatioViolated;
    result.detail = "output size " + std::to_string(out.size()) + " of maximum " + std::to_string(opt) + ": " +
                    not_approx;
    return result;
  }

  const auto branch = std::find_if(spec.branches.begin(), spec.branches.end(),
                                   [&](const GadgetBranch& b) { return b.output == out; });
  if (branch == spec.branches.end()) {
    result.verdict = AuditVerdict::Consistent;
    result.detail = "output " + describe(out) + " matches no case of the gadget";
    return result;
  }

  const PersonId who = branch->manipulator;
  const PreferenceList lie = without(spec.instance.list_of(who), branch->dropped);
  const Instance deleted = spec.instance.with_list(who, lie);
  if (!mech.admissible(deleted)) {
    throw PreconditionError("mechanism " + mech.name + " does not admit the deletion branch");
  }
  const Matching after = valid_output(deleted);
  result.outputs.push_back(after);
  if (!is_stable(deleted, after)) {
    unstable(after, " on deletion branch");
    return result;
  }

  if (prefers_matching(spec.instance, who, after, out)) {
    result.verdict = AuditVerdict::ManipulationFound;
    result.detail = to_string(who) + " gains by deleting " + to_string(PersonId{opposite(who.side), branch->dropped});
    result.witness = ManipulationWitness{{who}, {lie}, out, after};
    return result;
  }

  result.verdict = AuditVerdict::Consistent;
  const auto opt_after = max_stable_size(deleted, limits).size;
  result.detail = "output size " + std::to_string(after.size()) + " on deletion branch: ";
  result.detail += after.size() < opt_after ? not_approx : to_string(who) + " does not improve";
  return result;
}

AuditResult gadget_audit(MechanismId mech, Gadget gadget, const OracleLimits& limits) {
  return gadget_audit(Mechanism::from_id(mech), gadget, limits);
}

}  // namespace smti
