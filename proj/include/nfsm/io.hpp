#pragma once

// Text formats. All indices are 1-based on disk and 0-based in memory.
//
//   instance:  first data line "n", then n lines "c_i p_1 ... p_{n-1}"
//   matching:  one "i j" pair per line with i < j
//   gsp:       one cycle per line, "( i j k )"
//
// A line whose first non-blank character is '#' is a comment. Blank lines are skipped.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nfsm/errors.hpp"
#include "nfsm/instance.hpp"

namespace nfsm {

namespace detail {

struct TextLine {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

inline std::vector<TextLine> tokenize(std::string_view text) {
  std::vector<TextLine> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    TextLine tl{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      if (tl.tokens.empty() && line[i] == '#') break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      tl.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!tl.tokens.empty()) out.push_back(std::move(tl));
    if (end == text.size()) break;
  }
  return out;
}

inline long parse_int(std::string_view tok, std::size_t line) {
  long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

inline AgentId parse_agent(std::string_view tok, std::size_t line, int n) {
  const long v = parse_int(tok, line);
  if (v < 1 || v > n) {
    throw ParseError(line, "agent index " + std::string(tok) + " outside 1.." + std::to_string(n));
  }
  return static_cast<AgentId>(v - 1);
}

}  // namespace detail

inline SfInstance parse_instance(std::string_view text) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty instance file");

  const auto& header = lines.front();
  if (header.tokens.size() != 1) throw ParseError(header.number, "header must hold the agent count only");
  const long n_long = detail::parse_int(header.tokens[0], header.number);
  if (n_long < 2 || n_long > 100000) throw ParseError(header.number, "agent count must be at least 2");
  const int n = static_cast<int>(n_long);

  if (lines.size() - 1 != static_cast<std::size_t>(n)) {
    throw ParseError(lines.size() > static_cast<std::size_t>(n) ? lines[n + 1].number : 0,
                     "expected " + std::to_string(n) + " agent lines, found " +
                         std::to_string(lines.size() - 1));
  }

  std::vector<int> caps(n);
  std::vector<std::vector<AgentId>> prefs(n);
  for (int i = 0; i < n; ++i) {
    const auto& ln = lines[i + 1];
    const long c = detail::parse_int(ln.tokens[0], ln.number);
    if (c < 0 || c > n - 1) {
      throw ParseError(ln.number, "capacity of agent " + std::to_string(i + 1) + " outside 0.." +
                                      std::to_string(n - 1));
    }
    caps[i] = static_cast<int>(c);
    std::vector<char> seen(n, 0);
    for (std::size_t t = 1; t < ln.tokens.size(); ++t) {
      const AgentId j = detail::parse_agent(ln.tokens[t], ln.number, n);
      if (j == i) throw ParseError(ln.number, "agent " + std::to_string(i + 1) + " lists itself");
      if (seen[j]) {
        throw ParseError(ln.number, "duplicate preference entry " + std::to_string(j + 1) + ", agent " +
                                        std::to_string(i + 1));
      }
      seen[j] = 1;
      prefs[i].push_back(j);
    }
    if (static_cast<int>(prefs[i].size()) != n - 1) {
      throw ParseError(ln.number, "incomplete preference list, agent " + std::to_string(i + 1));
    }
  }
  return SfInstance(std::move(prefs), std::move(caps));
}

inline std::string serialize_instance(const PreferenceTable& inst) {
  std::string out = std::to_string(inst.size()) + "\n";
  for (AgentId i = 0; i < inst.size(); ++i) {
    out += std::to_string(inst.capacity(i));
    for (AgentId j : inst.list(i)) {
      out += ' ';
      out += std::to_string(j + 1);
    }
    out += '\n';
  }
  return out;
}

inline Matching parse_matching(std::string_view text, int n) {
  Matching m(n);
  for (const auto& ln : detail::tokenize(text)) {
    if (ln.tokens.size() != 2) throw ParseError(ln.number, "expected a pair \"i j\"");
    const AgentId a = detail::parse_agent(ln.tokens[0], ln.number, n);
    const AgentId b = detail::parse_agent(ln.tokens[1], ln.number, n);
    if (a == b) throw ParseError(ln.number, "self-pair");
    if (!m.add(a, b)) throw ParseError(ln.number, "duplicate pair");
  }
  return m;
}

inline std::string serialize_matching(const Matching& m) {
  std::string out;
  for (auto [a, b] : m.pairs()) out += std::to_string(a + 1) + " " + std::to_string(b + 1) + "\n";
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
}

}  // namespace nfsm
