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

#include "smti/instance_gen.hpp"

#include <random>

#include "smti/errors.hpp"

namespace smti {

namespace {

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
      const std::uint64_t x = engine_();
      if (x < limit) return x % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

PreferenceList shuffle_and_tie(std::vector<int> members, double tie_probability, Draws& draws) {
  for (std::size_t k = members.size(); k > 1; --k) {
    std::swap(members[k - 1], members[draws.below(k)]);
  }
  std::vector<TieGroup> groups;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k > 0 && draws.unit() < tie_probability) {
      groups.back().push_back(members[k]);
    } else {
      groups.push_back({members[k]});
    }
  }
  return PreferenceList(std::move(groups));
}

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

Instance gen_instance(const GenParams& params) {
  if (params.num_men < 0 || params.num_women < 0) throw PreconditionError("gen_instance: negative person count");
  if (!in_unit(params.acceptance_probability) || !in_unit(params.tie_probability_men) ||
      !in_unit(params.tie_probability_women)) {
    throw PreconditionError("gen_instance: probabilities must lie in [0, 1]");
  }
  const double tie_women = params.one_tm ? 0.0 : params.tie_probability_women;
  const auto n = static_cast<std::size_t>(params.num_men);
  const auto k = static_cast<std::size_t>(params.num_women);

  Draws draws(params.seed);
  std::vector<std::vector<int>> men_accept(n), women_accept(k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (draws.unit() < params.acceptance_probability) {
        men_accept[i].push_back(static_cast<int>(j + 1));
        women_accept[j].push_back(static_cast<int>(i + 1));
      }
    }
  }

  std::vector<PreferenceList> men, women;
  men.reserve(n);
  women.reserve(k);
  for (auto& a : men_accept) men.push_back(shuffle_and_tie(std::move(a), params.tie_probability_men, draws));
  for (auto& a : women_accept) women.push_back(shuffle_and_tie(std::move(a), tie_women, draws));
  return Instance(params.num_men, params.num_women, std::move(men), std::move(women));
}

Instance paper_instance(PaperInstance id) {
  using PL = PreferenceList;
  switch (id) {
    case PaperInstance::I1:
      return Instance(3, 3, {PL::strict({2, 1}), PL::strict({2, 3}), PL{}},
                      {PL::strict({1}), PL({{1, 2}}), PL::strict({2})});
    case PaperInstance::I2:
      return Instance(3, 3, {PL::strict({1}), PL({{1, 2}}), PL::strict({2})},
                      {PL::strict({2, 1}), PL::strict({2, 3}), PL{}});
    case PaperInstance::I3:
      return Instance(4, 4, {PL::strict({2, 1}), PL({{2, 3}}), PL::strict({3, 4}), PL{}},
                      {PL::strict({1}), PL::strict({2, 1}), PL::strict({2, 3}), PL::strict({3})});
    case PaperInstance::NaTrue:
      return Instance(4, 4, {PL::strict({2, 1}), PL({{1, 3}}), PL::strict({3}), PL::strict({1, 2})},
                      {PL::strict({2, 4, 1}), PL::strict({4, 1}), PL::strict({2, 3}), PL{}});
    case PaperInstance::NaManip:
      return Instance(4, 4, {PL::strict({1, 2}), PL({{1, 3}}), PL::strict({3}), PL::strict({1, 2})},
                      {PL::strict({2, 4, 1}), PL::strict({4, 1}), PL::strict({2, 3}), PL{}});
  }
  throw PreconditionError("unknown paper instance");
}

}  // namespace smti
