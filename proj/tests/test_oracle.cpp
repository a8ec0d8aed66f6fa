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

#include <gtest/gtest.h>

#include "smti/errors.hpp"
#include "smti/instance_gen.hpp"
#include "smti/oracle.hpp"
#include "smti/stability.hpp"
#include "smti/text_format.hpp"
#include "support/brute_force.hpp"

namespace smti {
namespace {

using P = Matching::Pair;

const Matching kM1({P{1, 1}, P{2, 2}});
const Matching kM2({P{1, 2}, P{2, 3}});
const Matching kM3({P{1, 1}, P{2, 2}, P{3, 3}});
const Matching kM6({P{1, 2}, P{2, 3}, P{3, 4}});

Instance no_acceptable_pairs() {
  return Instance(2, 2, {PreferenceList::strict({1}), PreferenceList{}},
                  {PreferenceList::strict({2}), PreferenceList{}});
}

// I1 with w3 deleted from m2's list.
Instance i1_double_prime() {
  return paper_instance(PaperInstance::I1).with_list(PersonId::man(2), PreferenceList::strict({2}));
}

TEST(EnumerateStable, I1) {
  EXPECT_EQ(enumerate_stable_matchings(paper_instance(PaperInstance::I1)), (std::vector<Matching>{kM1, kM2}));
}

TEST(EnumerateStable, I3SizeThree) {
  std::vector<Matching> size3;
  for (const auto& m : enumerate_stable_matchings(paper_instance(PaperInstance::I3))) {
    if (m.size() == 3) size3.push_back(m);
  }
  EXPECT_EQ(size3, (std::vector<Matching>{kM3, kM6}));
}

TEST(EnumerateStable, NoAcceptablePairs) {
  EXPECT_EQ(enumerate_stable_matchings(no_acceptable_pairs()), (std::vector<Matching>{Matching{}}));
}

TEST(EnumerateStable, MatchesUnprunedReference) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    GenParams p;
    p.num_men = 1 + static_cast<int>(seed % 4);
    p.num_women = 1 + static_cast<int>((seed / 4) % 4);
    p.acceptance_probability = 0.3 + 0.1 * static_cast<double>(seed % 7);
    p.tie_probability_men = 0.3;
    p.tie_probability_women = (seed % 2) ? 0.3 : 0.0;
    p.seed = seed;
    const auto inst = gen_instance(p);
    ASSERT_EQ(enumerate_stable_matchings(inst), testing::naive_stable_matchings(inst)) << serialize_instance(inst);
  }
}

TEST(EnumerateStable, AsymmetricAcceptability) {
  // w1 lists m1 but m1 does not list w1.
  const Instance inst(1, 1, {PreferenceList{}}, {PreferenceList::strict({1})});
  EXPECT_EQ(enumerate_stable_matchings(inst), (std::vector<Matching>{Matching{}}));
}

TEST(EnumerateStable, CapExceeded) {
  const auto inst = gen_instance({6, 6, 1.0, 0, 0, false, 1});
  EXPECT_EQ(oracle_search_space(inst), 117649u);
  EXPECT_THROW(enumerate_stable_matchings(inst, OracleLimits{1000}), SearchLimitError);
  EXPECT_NO_THROW(enumerate_stable_matchings(inst, OracleLimits{117649}));
}

TEST(MaxStableSize, Examples) {
  EXPECT_EQ(max_stable_size(paper_instance(PaperInstance::I1)).size, 2u);
  EXPECT_EQ(max_stable_size(paper_instance(PaperInstance::I1)).witness, kM1);
  EXPECT_EQ(max_stable_size(paper_instance(PaperInstance::I3)).size, 3u);
  EXPECT_EQ(max_stable_size(no_acceptable_pairs()).size, 0u);
}

TEST(ApproxRatio, Examples) {
  EXPECT_EQ(approx_ratio(paper_instance(PaperInstance::I1), kM2), Ratio(1));
  // Brute force over every matching of I''1 finds a stable matching of
  // size 2, so the lone pair (m1,w2) rates 2/1.
  const auto idp = i1_double_prime();
  ASSERT_EQ(testing::naive_max_stable_size(idp), 2u);
  ASSERT_TRUE(testing::naive_is_stable(idp, Matching({P{1, 2}})));
  EXPECT_EQ(approx_ratio(idp, Matching({P{1, 2}})), Ratio(2));
  EXPECT_EQ(approx_ratio(Instance(0, 0, {}, {}), Matching{}), Ratio(1));
}

TEST(ApproxRatio, UnstableThrows) {
  EXPECT_THROW(approx_ratio(paper_instance(PaperInstance::I1), Matching({P{1, 1}})), PreconditionError);
  EXPECT_THROW(approx_ratio(paper_instance(PaperInstance::I1), Matching({P{3, 1}})), PreconditionError);
}

TEST(StrategyCandidates, Counts) {
  const auto i1 = paper_instance(PaperInstance::I1);
  // sum_k C(3,k) k! and sum_k C(3,k) Fubini(k)
  EXPECT_EQ(strategy_candidates(i1, PersonId::man(1), {StrategyKind::ExhaustiveStrict}).size(), 16u);
  EXPECT_EQ(strategy_candidates(i1, PersonId::man(1), {StrategyKind::ExhaustiveWithTies}).size(), 26u);
  EXPECT_EQ(strategy_candidates(i1, PersonId::man(1), {StrategyKind::Truncate}).size(), 3u);
  EXPECT_EQ(strategy_candidates(i1, PersonId::man(1), {StrategyKind::Permute}).size(), 2u);
  EXPECT_EQ(strategy_candidates(i1, PersonId::man(3), {StrategyKind::Permute}).size(), 1u);
}

TEST(StrategyCandidates, AgreeWithIndependentListEnumeration) {
  const auto i1 = paper_instance(PaperInstance::I1);
  auto got = strategy_candidates(i1, PersonId::woman(1), {StrategyKind::ExhaustiveWithTies});
  auto want = testing::all_lists_with_ties(3);
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(StrategyCandidates, Order) {
  const Instance inst(1, 2, {PreferenceList::strict({2, 1})}, {PreferenceList{}, PreferenceList{}});
  const auto strict = strategy_candidates(inst, PersonId::man(1), {StrategyKind::ExhaustiveStrict});
  const std::vector<PreferenceList> want_strict{PreferenceList{}, PreferenceList::strict({1}),
                                                PreferenceList::strict({2}), PreferenceList::strict({1, 2}),
                                                PreferenceList::strict({2, 1})};
  EXPECT_EQ(strict, want_strict);

  const auto ties = strategy_candidates(inst, PersonId::man(1), {StrategyKind::ExhaustiveWithTies});
  const std::vector<PreferenceList> want_ties{PreferenceList{},
                                              PreferenceList::strict({1}),
                                              PreferenceList::strict({2}),
                                              PreferenceList::strict({1, 2}),
                                              PreferenceList({{1, 2}}),
                                              PreferenceList::strict({2, 1})};
  EXPECT_EQ(ties, want_ties);

  const auto trunc = strategy_candidates(inst, PersonId::man(1), {StrategyKind::Truncate});
  EXPECT_EQ(trunc, (std::vector<PreferenceList>{PreferenceList{}, PreferenceList::strict({2}),
                                                PreferenceList::strict({2, 1})}));
}

TEST(StrategyCandidates, Caps) {
  const auto big = gen_instance({1, 6, 1.0, 0, 0, false, 3});
  EXPECT_THROW(strategy_candidates(big, PersonId::man(1), {StrategyKind::ExhaustiveStrict}), SearchLimitError);
  EXPECT_THROW(strategy_candidates(big, PersonId::man(1), {StrategyKind::ExhaustiveWithTies}), SearchLimitError);
  StrategySpace few{StrategyKind::Permute};
  few.max_candidates = 100;
  EXPECT_THROW(strategy_candidates(big, PersonId::man(1), few), SearchLimitError);
  StrategySpace wide{StrategyKind::ExhaustiveStrict};
  wide.max_strict_opposite = 6;
  EXPECT_EQ(strategy_candidates(big, PersonId::man(1), wide).size(), 1957u);
}

TEST(FindManipulation, KiralyCounterExample) {
  const auto na = paper_instance(PaperInstance::NaTrue);
  const auto w = find_manipulation(na, MechanismId::KiralyNa, PersonId::man(1), {StrategyKind::Permute});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->manipulators, (std::vector<PersonId>{PersonId::man(1)}));
  EXPECT_EQ(w->falsified_lists.front(), PreferenceList::strict({1, 2}));
  EXPECT_EQ(w->honest, Matching({P{2, 1}, P{3, 3}, P{4, 2}}));
  EXPECT_EQ(w->manipulated, Matching({P{1, 2}, P{2, 3}, P{4, 1}}));
  EXPECT_TRUE(prefers_matching(na, PersonId::man(1), w->manipulated, w->honest));
}

TEST(FindManipulation, TiebreakManOnI1) {
  const auto i1 = paper_instance(PaperInstance::I1);
  for (int m = 1; m <= 3; ++m) {
    EXPECT_FALSE(find_manipulation(i1, MechanismId::TiebreakMan, PersonId::man(m),
                                   {StrategyKind::ExhaustiveWithTies})
                     .has_value());
  }
}

TEST(FindManipulation, FullPrefixOnlyFindsNothing) {
  const auto na = paper_instance(PaperInstance::NaTrue);
  StrategySpace space{StrategyKind::Truncate};
  space.min_truncate_groups = na.man_list(1).groups().size();
  EXPECT_EQ(strategy_candidates(na, PersonId::man(1), space).size(), 1u);
  EXPECT_FALSE(find_manipulation(na, MechanismId::KiralyNa, PersonId::man(1), space).has_value());
}

TEST(FindManipulation, SkipsInadmissibleCandidates) {
  // mgs-man rejects ties, so tie candidates are skipped rather than thrown on.
  const auto inst = gen_instance({3, 3, 0.8, 0, 0, false, 4});
  EXPECT_NO_THROW(find_manipulation(inst, MechanismId::MgsMan, PersonId::man(1),
                                    {StrategyKind::ExhaustiveWithTies}));
  EXPECT_THROW(find_manipulation(paper_instance(PaperInstance::I1), MechanismId::OneTmFifteen, PersonId::man(1),
                                 {StrategyKind::Permute}),
               PreconditionError);
}

TEST(FindManipulation, WomenManipulateMgsMan) {
  // 2x2 with two stable matchings; the women's side gains by truncation.
  const Instance inst(2, 2, {PreferenceList::strict({1, 2}), PreferenceList::strict({2, 1})},
                      {PreferenceList::strict({2, 1}), PreferenceList::strict({1, 2})});
  const auto w = find_manipulation(inst, MechanismId::MgsMan, PersonId::woman(1), {StrategyKind::ExhaustiveStrict});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->manipulated, Matching({P{1, 2}, P{2, 1}}));
}

TEST(FindManipulation, JobsDoNotChangeTheWitness) {
  const auto lex = lexicographic_max_stable_mechanism();
  int found = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = gen_instance({3, 3, 0.8, 0.4, 0.4, false, seed});
    for (int m = 1; m <= 3; ++m) {
      const auto one = find_manipulation(inst, lex, PersonId::man(m), {StrategyKind::ExhaustiveStrict}, 1);
      const auto four = find_manipulation(inst, lex, PersonId::man(m), {StrategyKind::ExhaustiveStrict}, 4);
      ASSERT_EQ(one.has_value(), four.has_value());
      if (one) {
        ++found;
        EXPECT_EQ(one->falsified_lists, four->falsified_lists);
        EXPECT_EQ(one->manipulated, four->manipulated);
      }
    }
  }
  EXPECT_GT(found, 0);
}

TEST(FindCoalition, SizeOneReducesToSingle) {
  const auto lex = lexicographic_max_stable_mechanism();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = gen_instance({3, 3, 0.8, 0.4, 0, true, seed});
    for (int m = 1; m <= 3; ++m) {
      const std::vector<PersonId> c{PersonId::man(m)};
      for (auto kind : {StrategyKind::ExhaustiveStrict, StrategyKind::Permute, StrategyKind::Truncate}) {
        const auto single = find_manipulation(inst, lex, PersonId::man(m), {kind});
        const auto joint = find_coalition_manipulation(inst, lex, c, {kind});
        ASSERT_EQ(single.has_value(), joint.has_value());
        if (single) {
          EXPECT_EQ(single->falsified_lists, joint->falsified_lists);
          EXPECT_EQ(single->manipulated, joint->manipulated);
        }
      }
    }
  }
}

TEST(FindCoalition, KiralyCounterExample) {
  const auto na = paper_instance(PaperInstance::NaTrue);
  const std::vector<PersonId> c{PersonId::man(1)};
  const auto w = find_coalition_manipulation(na, MechanismId::KiralyNa, c, {StrategyKind::Permute});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->falsified_lists.front(), PreferenceList::strict({1, 2}));
}

TEST(FindCoalition, OnetmOnI3) {
  const std::vector<PersonId> c{PersonId::man(1), PersonId::man(2)};
  EXPECT_FALSE(find_coalition_manipulation(paper_instance(PaperInstance::I3), MechanismId::OneTmFifteen, c,
                                           {StrategyKind::Truncate})
                   .has_value());
}

TEST(FindCoalition, BadCoalitions) {
  const auto i3 = paper_instance(PaperInstance::I3);
  const std::vector<PersonId> mixed{PersonId::man(1), PersonId::woman(1)};
  const std::vector<PersonId> twice{PersonId::man(1), PersonId::man(1)};
  EXPECT_THROW(find_coalition_manipulation(i3, MechanismId::OneTmFifteen, mixed, {StrategyKind::Truncate}),
               PreconditionError);
  EXPECT_THROW(find_coalition_manipulation(i3, MechanismId::OneTmFifteen, twice, {StrategyKind::Truncate}),
               PreconditionError);
  StrategySpace tiny{StrategyKind::Permute};
  tiny.max_candidates = 3;
  const std::vector<PersonId> pair{PersonId::man(1), PersonId::man(3)};
  EXPECT_THROW(find_coalition_manipulation(i3, MechanismId::OneTmFifteen, pair, tiny), SearchLimitError);
}

TEST(RuralHospitals, Examples) {
  EXPECT_TRUE(rural_hospitals_check(break_ties_by_index(paper_instance(PaperInstance::I1))));
  const Instance one(1, 1, {PreferenceList::strict({1})}, {PreferenceList::strict({1})});
  const auto r = rural_hospitals_report(one);
  EXPECT_EQ(r.stable_matchings, 1u);
  EXPECT_TRUE(r.equal_cardinality);
  EXPECT_TRUE(r.same_matched_persons);
  EXPECT_THROW(rural_hospitals_check(paper_instance(PaperInstance::I1)), PreconditionError);
}

TEST(ForbiddenPath, Detection) {
  // m1 - w1 - m2 - w2 with reference edges (m1,w1), (m2,w2) and output edge (m2,w1).
  const auto path = find_forbidden_path(Matching({P{2, 1}}), Matching({P{1, 1}, P{2, 2}}));
  ASSERT_TRUE(path.has_value());
  EXPECT_EQ(*path, (std::array<int, 4>{1, 1, 2, 2}));
  // Longer component: m1 is matched by the output too.
  EXPECT_FALSE(find_forbidden_path(Matching({P{2, 1}, P{1, 3}}), Matching({P{1, 1}, P{2, 2}})).has_value());
  EXPECT_FALSE(find_forbidden_path(kM1, kM1).has_value());
}

TEST(GadgetAudit, TiebreakManI1) {
  const auto r = gadget_audit(MechanismId::TiebreakMan, Gadget::I1);
  EXPECT_EQ(r.verdict, AuditVerdict::Consistent);
  EXPECT_EQ(r.detail, "output size 1 on deletion branch: not (2-ε)-approximate");
  ASSERT_EQ(r.outputs.size(), 2u);
  EXPECT_EQ(r.outputs[0], kM2);
  EXPECT_EQ(r.outputs[1], Matching({P{1, 2}}));
  EXPECT_FALSE(r.witness.has_value());
}

TEST(GadgetAudit, TiebreakWomanI2) {
  const auto r = gadget_audit(MechanismId::TiebreakWoman, Gadget::I2);
  EXPECT_EQ(r.verdict, AuditVerdict::Consistent);
  ASSERT_EQ(r.outputs.size(), 2u);
  EXPECT_EQ(r.outputs[1], Matching({P{2, 1}}));
}

TEST(GadgetAudit, OnetmI3) {
  const auto r = gadget_audit(MechanismId::OneTmFifteen, Gadget::I3);
  EXPECT_EQ(r.verdict, AuditVerdict::Consistent);
  EXPECT_EQ(r.outputs[0], kM3);
}

TEST(GadgetAudit, PlantedLexicographicMechanism) {
  const auto lex = lexicographic_max_stable_mechanism();
  for (auto g : {Gadget::I1, Gadget::I2, Gadget::I3}) {
    const auto r = gadget_audit(lex, g);
    ASSERT_EQ(r.verdict, AuditVerdict::ManipulationFound) << to_string(g);
    ASSERT_TRUE(r.witness.has_value());
    const auto truth = g == Gadget::I1 ? paper_instance(PaperInstance::I1)
                                       : g == Gadget::I2 ? paper_instance(PaperInstance::I2)
                                                         : paper_instance(PaperInstance::I3);
    EXPECT_TRUE(prefers_matching(truth, r.witness->manipulators.front(), r.witness->manipulated, r.witness->honest));
  }
}

TEST(GadgetAudit, UnstableOutputViolatesRatio) {
  const Mechanism empty{"empty", [](const Instance&) { return Matching{}; }, [](const Instance&) { return true; }};
  EXPECT_EQ(gadget_audit(empty, Gadget::I1).verdict, AuditVerdict::RatioViolated);
}

TEST(GadgetAudit, Inadmissible) {
  EXPECT_THROW(gadget_audit(MechanismId::OneTmFifteen, Gadget::I1), PreconditionError);
  EXPECT_THROW(gadget_audit(MechanismId::MgsMan, Gadget::I3), PreconditionError);
}

}  // namespace
}  // namespace smti
