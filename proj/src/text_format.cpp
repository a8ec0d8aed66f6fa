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

#include "smti/text_format.hpp"

#include <charconv>
#include <optional>
#include <sstream>

#include "smti/errors.hpp"

namespace smti {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Whitespace-separated tokens; parentheses are always tokens of their own.
std::vector<Token> tokenize(std::string_view s, std::size_t column_offset) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < s.size()) {
    if (is_space(s[k])) {
      ++k;
    } else if (s[k] == '(' || s[k] == ')') {
      out.push_back({s.substr(k, 1), column_offset + k + 1});
      ++k;
    } else {
      const std::size_t start = k;
      while (k < s.size() && !is_space(s[k]) && s[k] != '(' && s[k] != ')') ++k;
      out.push_back({s.substr(start, k - start), column_offset + start + 1});
    }
  }
  return out;
}

std::optional<int> parse_positive(std::string_view digits) {
  if (digits.empty()) return std::nullopt;
  int value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || value < 1) return std::nullopt;
  return value;
}

std::optional<int> parse_count(std::string_view digits) {
  if (digits == "0") return 0;
  return parse_positive(digits);
}

std::optional<PersonId> parse_person(std::string_view token) {
  if (token.size() < 2) return std::nullopt;
  Side side;
  if (token[0] == 'm') {
    side = Side::Man;
  } else if (token[0] == 'w') {
    side = Side::Woman;
  } else {
    return std::nullopt;
  }
  const auto index = parse_positive(token.substr(1));
  if (!index) return std::nullopt;
  return PersonId{side, *index};
}

PreferenceList parse_entries(const std::vector<Token>& tokens, Side listed, std::size_t line_no) {
  std::vector<TieGroup> groups;
  std::optional<TieGroup> open_tie;
  std::size_t open_column = 0;
  for (const auto& tok : tokens) {
    if (tok.text == "(") {
      if (open_tie) throw ParseError(line_no, tok.column, "nested '(' inside a tie");
      open_tie.emplace();
      open_column = tok.column;
    } else if (tok.text == ")") {
      if (!open_tie) throw ParseError(line_no, tok.column, "unbalanced parenthesis: ')' without '('");
      if (open_tie->empty()) throw ParseError(line_no, tok.column, "empty tie");
      groups.push_back(std::move(*open_tie));
      open_tie.reset();
    } else {
      const auto p = parse_person(tok.text);
      if (!p) throw ParseError(line_no, tok.column, "expected a person token, got '" + std::string(tok.text) + "'");
      if (p->side != listed) {
        throw ParseError(line_no, tok.column, "'" + std::string(tok.text) + "' is on the wrong side");
      }
      if (open_tie) {
        open_tie->push_back(p->index);
      } else {
        groups.push_back({p->index});
      }
    }
  }
  if (open_tie) throw ParseError(line_no, open_column, "unbalanced parenthesis: '(' is never closed");
  return PreferenceList(std::move(groups));
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::optional<int> num_men, num_women;
  std::vector<std::optional<PreferenceList>> men, women;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const std::string_view line = strip_comment(raw);
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      const auto tokens = tokenize(line, 0);
      if (tokens.empty()) continue;
      if (tokens.size() != 2 || (tokens[0].text != "men" && tokens[0].text != "women")) {
        throw ParseError(line_no, tokens[0].column, "expected 'men N', 'women N' or a person line");
      }
      const auto n = parse_count(tokens[1].text);
      if (!n) throw ParseError(line_no, tokens[1].column, "expected a count, got '" + std::string(tokens[1].text) + "'");
      auto& slot = tokens[0].text == "men" ? num_men : num_women;
      if (slot) throw ParseError(line_no, tokens[0].column, "count declared twice");
      slot = *n;
      (tokens[0].text == "men" ? men : women).assign(static_cast<std::size_t>(*n), std::nullopt);
      continue;
    }

    const auto head = tokenize(line.substr(0, colon), 0);
    if (head.size() != 1) throw ParseError(line_no, 1, "expected a single person before ':'");
    const auto owner = parse_person(head[0].text);
    if (!owner) throw ParseError(line_no, head[0].column, "expected m<i> or w<j>, got '" + std::string(head[0].text) + "'");
    if (!num_men || !num_women) throw ParseError(line_no, head[0].column, "person line before 'men' and 'women' counts");
    auto& lists = owner->side == Side::Man ? men : women;
    if (static_cast<std::size_t>(owner->index) > lists.size()) {
      throw ParseError(line_no, head[0].column, to_string(*owner) + " exceeds the declared count");
    }
    auto& slot = lists[static_cast<std::size_t>(owner->index - 1)];
    if (slot) throw ParseError(line_no, head[0].column, to_string(*owner) + " has more than one line");
    slot = parse_entries(tokenize(line.substr(colon + 1), colon + 1), opposite(owner->side), line_no);
  }

  if (!num_men) throw ParseError(line_no, 1, "missing 'men N'");
  if (!num_women) throw ParseError(line_no, 1, "missing 'women N'");
  const auto collect = [&](std::vector<std::optional<PreferenceList>>& lists, Side side) {
    std::vector<PreferenceList> out;
    for (std::size_t k = 0; k < lists.size(); ++k) {
      if (!lists[k]) {
        throw ParseError(line_no, 1, to_string(PersonId{side, static_cast<int>(k + 1)}) + " has no line");
      }
      out.push_back(std::move(*lists[k]));
    }
    return out;
  };
  Instance inst(*num_men, *num_women, collect(men, Side::Man), collect(women, Side::Woman));
  require_valid(inst);
  return inst;
}

std::string serialize_list(const PreferenceList& list, Side listed) {
  const char prefix = listed == Side::Man ? 'm' : 'w';
  std::string out;
  for (const auto& group : list.groups()) {
    if (!out.empty()) out += ' ';
    if (group.size() > 1) out += '(';
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (k > 0) out += ' ';
      out += prefix + std::to_string(group[k]);
    }
    if (group.size() > 1) out += ')';
  }
  return out;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "men " << inst.num_men() << "\nwomen " << inst.num_women() << '\n';
  const auto emit = [&](Side side, const std::vector<PreferenceList>& lists) {
    for (std::size_t k = 0; k < lists.size(); ++k) {
      const auto body = serialize_list(lists[k], opposite(side));
      os << to_string(PersonId{side, static_cast<int>(k + 1)}) << ':';
      if (!body.empty()) os << ' ' << body;
      os << '\n';
    }
  };
  emit(Side::Man, inst.men_lists());
  emit(Side::Woman, inst.women_lists());
  return os.str();
}

Matching parse_matching(std::string_view text) {
  std::vector<Matching::Pair> pairs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto tokens = tokenize(strip_comment(raw), 0);
    if (tokens.empty()) continue;
    // "size K" trailer from solve output.
    if (tokens[0].text == "size") continue;
    if (tokens.size() != 2) throw ParseError(line_no, tokens[0].column, "expected 'm<i> w<j>'");
    const auto m = parse_person(tokens[0].text);
    const auto w = parse_person(tokens[1].text);
    if (!m || m->side != Side::Man) throw ParseError(line_no, tokens[0].column, "expected m<i>");
    if (!w || w->side != Side::Woman) throw ParseError(line_no, tokens[1].column, "expected w<j>");
    pairs.emplace_back(m->index, w->index);
  }
  return Matching(std::move(pairs));
}

std::string serialize_matching(const Matching& m) {
  std::string out;
  for (const auto& [man, woman] : m.pairs()) {
    out += "m" + std::to_string(man) + " w" + std::to_string(woman) + "\n";
  }
  return out;
}

}  // namespace smti
