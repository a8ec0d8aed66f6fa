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

#include "smti/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "smti/errors.hpp"
#include "smti/instance_gen.hpp"
#include "smti/mechanisms.hpp"
#include "smti/oracle.hpp"
#include "smti/stability.hpp"
#include "smti/text_format.hpp"

namespace smti {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, PaperInstance> kPaperInstances{
    {"i1", PaperInstance::I1},         {"i2", PaperInstance::I2},
    {"i3", PaperInstance::I3},         {"na-true", PaperInstance::NaTrue},
    {"na-manip", PaperInstance::NaManip},
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct InstanceSource {
  std::string file;
  std::string paper;

  void attach(CLI::App* cmd) {
    auto* in = cmd->add_option("--in", file, "instance file");
    auto* p = cmd->add_option("--paper", paper, "built-in instance: i1, i2, i3, na-true, na-manip");
    in->excludes(p);
  }

  Instance load() const {
    if (!paper.empty()) {
      const auto it = kPaperInstances.find(paper);
      if (it == kPaperInstances.end()) throw UsageError("unknown built-in instance '" + paper + "'");
      return paper_instance(it->second);
    }
    if (file.empty()) throw UsageError("one of --in or --paper is required");
    return parse_instance(read_file(file));
  }
};

MechanismId mechanism_from(const std::string& name) {
  const auto id = parse_mechanism_id(name);
  if (!id) {
    throw UsageError("unknown mechanism '" + name +
                     "' (expected mgs-man, mgs-woman, tiebreak-man, tiebreak-woman, onetm-15, kiraly-na)");
  }
  return *id;
}

PersonId person_from(const std::string& token) {
  if (token.size() >= 2 && (token[0] == 'm' || token[0] == 'w')) {
    try {
      std::size_t used = 0;
      const int index = std::stoi(token.substr(1), &used);
      if (used == token.size() - 1 && index >= 1) return {token[0] == 'm' ? Side::Man : Side::Woman, index};
    } catch (const std::exception&) {
    }
  }
  throw UsageError("expected a person like m3 or w1, got '" + token + "'");
}

std::string braces(const Matching& m) {
  std::string s = "{";
  for (const auto& [man, woman] : m.pairs()) {
    if (s.size() > 1) s += ", ";
    s += "(m" + std::to_string(man) + ",w" + std::to_string(woman) + ")";
  }
  return s + "}";
}

void print_witness(std::ostream& out, const ManipulationWitness& w) {
  out << "witness\n";
  for (std::size_t k = 0; k < w.manipulators.size(); ++k) {
    out << "falsified " << to_string(w.manipulators[k]) << ": "
        << serialize_list(w.falsified_lists[k], opposite(w.manipulators[k].side)) << '\n';
  }
  out << "honest " << braces(w.honest) << '\n';
  out << "manipulated " << braces(w.manipulated) << '\n';
}

// One expected/computed line for demo; returns whether they agree.
bool report(std::ostream& out, const std::string& what, const std::string& expected, const std::string& computed) {
  const bool ok = expected == computed;
  out << what << "\n  expected: " << expected << "\n  computed: " << computed << "\n  " << (ok ? "ok" : "MISMATCH")
      << '\n';
  return ok;
}

std::string size_three_stable(const Instance& inst) {
  std::string s;
  for (const auto& m : enumerate_stable_matchings(inst)) {
    if (m.size() != 3) continue;
    if (!s.empty()) s += " ";
    s += braces(m);
  }
  return s;
}

std::string all_stable(const Instance& inst) {
  std::string s;
  for (const auto& m : enumerate_stable_matchings(inst)) {
    if (!s.empty()) s += " ";
    s += braces(m);
  }
  return s;
}

std::string audit_line(const AuditResult& r) { return std::string(to_string(r.verdict)); }

bool demo(const std::string& which, std::ostream& out) {
  using P = Matching::Pair;
  bool ok = true;
  const auto lex = lexicographic_max_stable_mechanism();
  if (which == "i1" || which == "i2") {
    const bool first = which == "i1";
    const Instance inst = paper_instance(first ? PaperInstance::I1 : PaperInstance::I2);
    const Gadget gadget = first ? Gadget::I1 : Gadget::I2;
    const Matching a({P{1, 1}, P{2, 2}});
    const Matching b = first ? Matching({P{1, 2}, P{2, 3}}) : Matching({P{2, 1}, P{3, 2}});
    ok &= report(out, "stable matchings of " + which, braces(a) + " " + braces(b), all_stable(inst));
    ok &= report(out, "maximum stable size", "2", std::to_string(max_stable_size(inst).size));
    const MechanismId mech = first ? MechanismId::TiebreakMan : MechanismId::TiebreakWoman;
    const auto audit = gadget_audit(mech, gadget);
    ok &= report(out, "audit " + std::string(to_string(mech)) + " (" + audit.detail + ")", "Consistent",
                 audit_line(audit));
    const auto planted = gadget_audit(lex, gadget);
    ok &= report(out, "audit lex-max-stable (" + planted.detail + ")", "ManipulationFound", audit_line(planted));
  } else if (which == "i3") {
    const Instance inst = paper_instance(PaperInstance::I3);
    const Matching m3({P{1, 1}, P{2, 2}, P{3, 3}});
    const Matching m6({P{1, 2}, P{2, 3}, P{3, 4}});
    ok &= report(out, "size-3 stable matchings of i3", braces(m3) + " " + braces(m6), size_three_stable(inst));
    ok &= report(out, "maximum stable size", "3", std::to_string(max_stable_size(inst).size));
    const Matching got = onetm_mechanism(inst);
    ok &= report(out, "onetm-15 output size", "3", std::to_string(got.size()));
    out << "  onetm-15 output: " << braces(got) << '\n';
    const auto audit = gadget_audit(MechanismId::OneTmFifteen, Gadget::I3);
    ok &= report(out, "audit onetm-15 (" + audit.detail + ")", "Consistent", audit_line(audit));
    const auto planted = gadget_audit(lex, Gadget::I3);
    ok &= report(out, "audit lex-max-stable (" + planted.detail + ")", "ManipulationFound", audit_line(planted));
  } else if (which == "na-counter") {
    const Instance truth = paper_instance(PaperInstance::NaTrue);
    const Instance lie = paper_instance(PaperInstance::NaManip);
    ok &= report(out, "kiraly-na on true lists", braces(Matching({P{2, 1}, P{3, 3}, P{4, 2}})),
                 braces(kiraly_na(truth)));
    ok &= report(out, "kiraly-na after m1 swaps w1 and w2", braces(Matching({P{1, 2}, P{2, 3}, P{4, 1}})),
                 braces(kiraly_na(lie)));
    const auto w = find_manipulation(truth, MechanismId::KiralyNa, PersonId::man(1), {StrategyKind::Permute});
    ok &= report(out, "m1 manipulation (permute)", "w1 w2",
                 w ? serialize_list(w->falsified_lists.front(), Side::Woman) : "none found");
    const auto sp = find_manipulation(truth, MechanismId::OneTmFifteen, PersonId::man(1), {StrategyKind::Permute});
    ok &= report(out, "m1 manipulation of onetm-15 (permute)", "none found",
                 sp ? serialize_list(sp->falsified_lists.front(), Side::Woman) : "none found");
  } else {
    throw UsageError("unknown demo '" + which + "' (expected i1, i2, i3, na-counter)");
  }
  out << (ok ? "all results match\n" : "MISMATCH\n");
  return ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable matching mechanisms with ties and incomplete lists", "smti"};
  app.require_subcommand(1);

  InstanceSource solve_src, verify_src, oracle_src, manip_src, translate_src;

  auto* solve = app.add_subcommand("solve", "run a mechanism");
  std::string solve_mech, solve_format = "plain";
  solve->add_option("--mechanism", solve_mech, "mechanism id")->required();
  solve->add_option("--format", solve_format, "plain or json")->check(CLI::IsMember({"plain", "json"}));
  solve_src.attach(solve);

  auto* verify = app.add_subcommand("verify", "check a matching for stability");
  std::string verify_matching;
  verify->add_option("--matching", verify_matching, "matching file")->required();
  verify_src.attach(verify);

  auto* oracle = app.add_subcommand("oracle", "exhaustive ground truth");
  bool want_max = false, want_enum = false;
  std::string ratio_file;
  std::uint64_t cap = OracleLimits{}.max_search_space;
  auto* o_max = oracle->add_flag("--max-stable", want_max, "largest stable matching");
  auto* o_enum = oracle->add_flag("--enumerate", want_enum, "all stable matchings");
  auto* o_ratio = oracle->add_option("--ratio", ratio_file, "matching file to rate");
  o_max->excludes(o_enum)->excludes(o_ratio);
  o_enum->excludes(o_ratio);
  oracle->add_option("--cap", cap, "search-space cap");
  oracle_src.attach(oracle);

  auto* manipulate = app.add_subcommand("manipulate", "search for a profitable misreport");
  std::string manip_mech, manip_person, manip_coalition, manip_space = "exhaustive-strict";
  StrategySpace space;
  unsigned jobs = 1;
  manipulate->add_option("--mechanism", manip_mech, "mechanism id")->required();
  auto* mp = manipulate->add_option("--person", manip_person, "manipulating person, e.g. m3");
  auto* mc = manipulate->add_option("--coalition", manip_coalition, "comma-separated coalition, e.g. m1,m2");
  mp->excludes(mc);
  manipulate->add_option("--space", manip_space, "exhaustive-strict, exhaustive-ties, truncate, permute")
      ->check(CLI::IsMember({"exhaustive-strict", "exhaustive-ties", "truncate", "permute"}));
  manipulate->add_option("--max-strict", space.max_strict_opposite, "cap on opposite side for exhaustive-strict");
  manipulate->add_option("--max-ties", space.max_tie_opposite, "cap on opposite side for exhaustive-ties");
  manipulate->add_option("--max-candidates", space.max_candidates, "cap on candidate lists");
  manipulate->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  manip_src.attach(manipulate);

  auto* translate = app.add_subcommand("translate", "print the strict translation of a men-only-ties instance");
  translate_src.attach(translate);

  auto* gen = app.add_subcommand("gen", "seeded random instance");
  GenParams gp;
  gen->add_option("--men", gp.num_men)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--women", gp.num_women)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--accept", gp.acceptance_probability)->required()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--ties-men", gp.tie_probability_men)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--ties-women", gp.tie_probability_women)->check(CLI::Range(0.0, 1.0));
  gen->add_flag("--one-tm", gp.one_tm);
  gen->add_option("--seed", gp.seed)->required();

  auto* demo_cmd = app.add_subcommand("demo", "reproduce a gadget or counter-example");
  std::string demo_which;
  demo_cmd->add_option("--paper", demo_which, "i1, i2, i3 or na-counter")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) {
      const auto id = mechanism_from(solve_mech);
      const Instance inst = solve_src.load();
      const Matching m = run_mechanism(id, inst);
      if (solve_format == "json") {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [man, woman] : m.pairs()) pairs.push_back({{"man", man}, {"woman", woman}});
        const nlohmann::json j{{"mechanism", std::string(to_string(id))},
                               {"matching", pairs},
                               {"size", m.size()},
                               {"stable", is_stable(inst, m)}};
        out << j.dump(2) << '\n';
      } else {
        out << serialize_matching(m) << "size " << m.size() << '\n';
      }
    } else if (verify->parsed()) {
      const Instance inst = verify_src.load();
      const Matching m = parse_matching(read_file(verify_matching));
      if (!is_valid_matching(inst, m)) {
        err << "invalid matching: a pair is not mutually acceptable, out of range, or a person repeats\n";
        return kExitPrecondition;
      }
      const auto bps = blocking_pairs(inst, m);
      out << (bps.empty() ? "stable" : "unstable") << '\n';
      out << "size " << m.size() << '\n';
      for (const auto& bp : bps) {
        const auto reason = [](BlockReason r) { return r == BlockReason::Single ? "single" : "prefers"; };
        out << "blocking m" << bp.man << " w" << bp.woman << " (man " << reason(bp.man_reason) << ", woman "
            << reason(bp.woman_reason) << ")\n";
      }
    } else if (oracle->parsed()) {
      const Instance inst = oracle_src.load();
      const OracleLimits limits{cap};
      if (want_enum) {
        const auto all = enumerate_stable_matchings(inst, limits);
        out << "stable matchings " << all.size() << '\n';
        for (const auto& m : all) out << "size " << m.size() << ' ' << braces(m) << '\n';
      } else if (!ratio_file.empty()) {
        const Matching m = parse_matching(read_file(ratio_file));
        const Ratio r = approx_ratio(inst, m, limits);
        out << "ratio " << r.numerator() << '/' << r.denominator() << '\n';
      } else {
        const auto best = max_stable_size(inst, limits);
        out << serialize_matching(best.witness) << "size " << best.size << '\n';
      }
    } else if (manipulate->parsed()) {
      const auto id = mechanism_from(manip_mech);
      const Instance inst = manip_src.load();
      space.kind = *parse_strategy_kind(manip_space);
      std::optional<ManipulationWitness> w;
      if (!manip_coalition.empty()) {
        std::vector<PersonId> members;
        std::stringstream ss(manip_coalition);
        for (std::string tok; std::getline(ss, tok, ',');) members.push_back(person_from(tok));
        for (const auto& p : members) {
          if (p.index > inst.count(p.side)) throw UsageError(to_string(p) + " is not in the instance");
        }
        w = find_coalition_manipulation(inst, id, members, space, jobs);
      } else {
        if (manip_person.empty()) throw UsageError("one of --person or --coalition is required");
        const PersonId p = person_from(manip_person);
        if (p.index > inst.count(p.side)) throw UsageError(to_string(p) + " is not in the instance");
        w = find_manipulation(inst, id, p, space, jobs);
      }
      if (w) {
        print_witness(out, *w);
      } else {
        out << "none found\n";
      }
    } else if (translate->parsed()) {
      out << serialize_instance(translate_1tm(translate_src.load()).instance);
    } else if (gen->parsed()) {
      out << serialize_instance(gen_instance(gp));
    } else if (demo_cmd->parsed()) {
      return demo(demo_which, out) ? kExitOk : kExitMismatch;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SearchLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitOk;
}

}  // namespace smti
