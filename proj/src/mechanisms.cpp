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

#include "smti/mechanisms.hpp"

#include <algorithm>
#include <array>

#include "smti/errors.hpp"

namespace smti {

namespace {

constexpr std::array<std::pair<MechanismId, std::string_view>, 6> kNames{{
    {MechanismId::MgsMan, "mgs-man"},
    {MechanismId::MgsWoman, "mgs-woman"},
    {MechanismId::TiebreakMan, "tiebreak-man"},
    {MechanismId::TiebreakWoman, "tiebreak-woman"},
    {MechanismId::OneTmFifteen, "onetm-15"},
    {MechanismId::KiralyNa, "kiraly-na"},
}};

void require_women_strict(const Instance& inst, std::string_view who) {
  require_valid(inst);
  for (const auto& l : inst.women_lists()) {
    if (l.has_ties()) throw PreconditionError(std::string(who) + ": women's lists must be strict");
  }
}

// Woman-side acceptance shared by mgs and kiraly_na: returns the man she ends
// up holding (0 if none) after receiving a proposal from `man`.
int respond(const RankTable& ranks, int woman, int holder, int man) {
  const int r = ranks.woman_rank(woman, man);
  if (r == RankTable::kUnacceptable) return holder;
  if (holder == 0) return man;
  return r < ranks.woman_rank(woman, holder) ? man : holder;
}

}  // namespace

std::string_view to_string(MechanismId id) {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  return "?";
}

std::optional<MechanismId> parse_mechanism_id(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_admissible(MechanismId id, const Instance& inst) {
  if (!validate_instance(inst).empty()) return false;
  const auto c = classify_instance(inst);
  switch (id) {
    case MechanismId::MgsMan:
    case MechanismId::MgsWoman:
      return !c.has_ties();
    case MechanismId::TiebreakMan:
    case MechanismId::TiebreakWoman:
      return true;
    case MechanismId::OneTmFifteen:
    case MechanismId::KiralyNa:
      return c.one_tm();
  }
  return false;
}

Matching run_mechanism(MechanismId id, const Instance& inst) {
  require_valid(inst);
  switch (id) {
    case MechanismId::MgsMan: return mgs(inst);
    case MechanismId::MgsWoman: return wgs(inst);
    case MechanismId::TiebreakMan: return tiebreak_mechanism(inst, Side::Man);
    case MechanismId::TiebreakWoman: return tiebreak_mechanism(inst, Side::Woman);
    case MechanismId::OneTmFifteen: return onetm_mechanism(inst);
    case MechanismId::KiralyNa: return kiraly_na(inst);
  }
  throw PreconditionError("unknown mechanism");
}

Matching mgs(const Instance& inst) {
  require_valid(inst);
  if (classify_instance(inst).has_ties()) throw PreconditionError("mgs: mechanism requires strict lists");
  const RankTable ranks(inst);
  const auto n = static_cast<std::size_t>(inst.num_men());

  // A rejected man's top entry is always the woman who rejected him, so
  // deleting her from his working list is advancing a cursor.
  std::vector<std::vector<int>> lists(n + 1);
  for (std::size_t i = 1; i <= n; ++i) lists[i] = inst.man_list(static_cast<int>(i)).entries();
  std::vector<std::size_t> next(n + 1, 0);
  std::vector<int> man_partner(n + 1, 0);
  std::vector<int> woman_partner(static_cast<std::size_t>(inst.num_women()) + 1, 0);

  for (;;) {
    std::size_t m = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (man_partner[i] == 0 && next[i] < lists[i].size()) {
        m = i;
        break;
      }
    }
    if (m == 0) break;

    const int w = lists[m][next[m]];
    const auto wi = static_cast<std::size_t>(w);
    const int holder = woman_partner[wi];
    const int kept = respond(ranks, w, holder, static_cast<int>(m));
    if (kept == static_cast<int>(m)) {
      if (holder != 0) {
        man_partner[static_cast<std::size_t>(holder)] = 0;
        ++next[static_cast<std::size_t>(holder)];
      }
      woman_partner[wi] = static_cast<int>(m);
      man_partner[m] = w;
    } else {
      ++next[m];
    }
  }

  std::vector<Matching::Pair> pairs;
  for (std::size_t i = 1; i <= n; ++i) {
    if (man_partner[i] != 0) pairs.emplace_back(static_cast<int>(i), man_partner[i]);
  }
  return Matching(std::move(pairs));
}

Matching wgs(const Instance& inst) {
  if (classify_instance(inst).has_ties()) throw PreconditionError("wgs: mechanism requires strict lists");
  return swap_roles(mgs(swap_roles(inst)));
}

Instance break_ties_by_index(const Instance& inst) {
  auto flatten = [](const std::vector<PreferenceList>& lists) {
    std::vector<PreferenceList> out;
    out.reserve(lists.size());
    for (const auto& l : lists) {
      std::vector<int> order;
      for (auto g : l.groups()) {
        std::sort(g.begin(), g.end());
        order.insert(order.end(), g.begin(), g.end());
      }
      out.push_back(PreferenceList::strict(order));
    }
    return out;
  };
  return Instance(inst.num_men(), inst.num_women(), flatten(inst.men_lists()), flatten(inst.women_lists()));
}

Matching tiebreak_mechanism(const Instance& inst, Side proposing) {
  if (proposing == Side::Man) return mgs(break_ties_by_index(inst));
  return swap_roles(mgs(break_ties_by_index(swap_roles(inst))));
}

std::optional<int> TranslationMap::man_of_a(int translated_man) const {
  if (translated_man >= 1 && translated_man <= original_men()) return translated_man;
  return std::nullopt;
}

int TranslationMap::woman_of_copy(int translated_woman) const {
  const int k = original_women();
  return translated_woman > k ? translated_woman - k : translated_woman;
}

Translation translate_1tm(const Instance& inst) {
  require_women_strict(inst, "translate_1tm");
  const int n = inst.num_men();
  const int k = inst.num_women();

  TranslationMap map;
  map.a_of_man.assign(static_cast<std::size_t>(n) + 1, 0);
  map.b_of_woman.assign(static_cast<std::size_t>(k) + 1, 0);
  map.s_of_woman.assign(static_cast<std::size_t>(k) + 1, 0);
  map.t_of_woman.assign(static_cast<std::size_t>(k) + 1, 0);
  for (int i = 1; i <= n; ++i) map.a_of_man[static_cast<std::size_t>(i)] = i;
  for (int j = 1; j <= k; ++j) {
    map.b_of_woman[static_cast<std::size_t>(j)] = n + j;
    map.s_of_woman[static_cast<std::size_t>(j)] = j;
    map.t_of_woman[static_cast<std::size_t>(j)] = k + j;
  }
  const auto s = [&](int j) { return map.s_of_woman[static_cast<std::size_t>(j)]; };
  const auto t = [&](int j) { return map.t_of_woman[static_cast<std::size_t>(j)]; };

  std::vector<PreferenceList> men;
  men.reserve(static_cast<std::size_t>(n + k));
  for (int i = 1; i <= n; ++i) {
    std::vector<int> order;
    for (auto group : inst.man_list(i).groups()) {
      std::sort(group.begin(), group.end());
      for (int j : group) order.push_back(t(j));
      for (int j : group) order.push_back(s(j));
    }
    men.push_back(PreferenceList::strict(order));
  }
  for (int j = 1; j <= k; ++j) men.push_back(PreferenceList::strict({s(j), t(j)}));

  std::vector<PreferenceList> women(static_cast<std::size_t>(2 * k));
  for (int j = 1; j <= k; ++j) {
    // Q(w_j): w_j's list with each m_i renamed a_i.
    std::vector<int> q;
    for (int i : inst.woman_list(j).entries()) q.push_back(map.a_of_man[static_cast<std::size_t>(i)]);
    const int b = map.b_of_woman[static_cast<std::size_t>(j)];

    std::vector<int> s_list = q;
    s_list.push_back(b);
    std::vector<int> t_list{b};
    t_list.insert(t_list.end(), q.begin(), q.end());
    women[static_cast<std::size_t>(s(j) - 1)] = PreferenceList::strict(s_list);
    women[static_cast<std::size_t>(t(j) - 1)] = PreferenceList::strict(t_list);
  }

  return {Instance(n + k, 2 * k, std::move(men), std::move(women)), std::move(map)};
}

OneTmTrace onetm_trace(const Instance& inst) {
  OneTmTrace trace{translate_1tm(inst), {}, {}};
  trace.translated_matching = mgs(trace.translation.instance);

  std::vector<Matching::Pair> pairs;
  for (const auto& [x, y] : trace.translated_matching.pairs()) {
    if (const auto m = trace.translation.map.man_of_a(x)) {
      pairs.emplace_back(*m, trace.translation.map.woman_of_copy(y));
    }
  }
  trace.result = Matching(std::move(pairs));
  return trace;
}

Matching onetm_mechanism(const Instance& inst) { return onetm_trace(inst).result; }

Matching kiraly_na(const Instance& inst) {
  require_women_strict(inst, "kiraly_na");
  const RankTable ranks(inst);
  const auto n = static_cast<std::size_t>(inst.num_men());

  std::vector<std::vector<TieGroup>> lists(n + 1);
  for (std::size_t i = 1; i <= n; ++i) lists[i] = inst.man_list(static_cast<int>(i)).groups();
  std::vector<int> man_partner(n + 1, 0);
  std::vector<int> woman_partner(static_cast<std::size_t>(inst.num_women()) + 1, 0);

  const auto remove = [&](std::size_t man, int woman) {
    auto& groups = lists[man];
    for (auto it = groups.begin(); it != groups.end(); ++it) {
      const auto pos = std::find(it->begin(), it->end(), woman);
      if (pos == it->end()) continue;
      it->erase(pos);
      if (it->empty()) groups.erase(it);
      return;
    }
  };

  for (;;) {
    std::size_t m = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (man_partner[i] == 0 && !lists[i].empty()) {
        m = i;
        break;
      }
    }
    if (m == 0) break;

    const TieGroup& top = lists[m].front();
    int w = 0;
    if (top.size() == 1) {
      w = top.front();
    } else {
      int smallest_free = 0;
      for (int x : top) {
        if (woman_partner[static_cast<std::size_t>(x)] == 0 && (smallest_free == 0 || x < smallest_free)) {
          smallest_free = x;
        }
      }
      w = smallest_free != 0 ? smallest_free : *std::min_element(top.begin(), top.end());
    }

    const auto wi = static_cast<std::size_t>(w);
    const int holder = woman_partner[wi];
    const int kept = respond(ranks, w, holder, static_cast<int>(m));
    if (kept == static_cast<int>(m)) {
      if (holder != 0) {
        man_partner[static_cast<std::size_t>(holder)] = 0;
        remove(static_cast<std::size_t>(holder), w);
      }
      woman_partner[wi] = static_cast<int>(m);
      man_partner[m] = w;
    } else {
      remove(m, w);
    }
  }

  std::vector<Matching::Pair> pairs;
  for (std::size_t i = 1; i <= n; ++i) {
    if (man_partner[i] != 0) pairs.emplace_back(static_cast<int>(i), man_partner[i]);
  }
  return Matching(std::move(pairs));
}

}  // namespace smti
