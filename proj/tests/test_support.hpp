#pragma once

// Shared fixtures and independent oracles for the unit suites. The oracles
// restate definitions directly and do not call the library's own checkers.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "nfsm/io.hpp"
#include "nfsm/instance.hpp"

namespace nfsm::testing {

inline std::string data_path(const std::string& name) { return std::string(NFSM_DATA_DIR) + "/" + name; }

inline SfInstance load(const std::string& name) { return parse_instance(read_file(data_path(name))); }

/// Pairs {i, j} (1-based in the literal) turned into a matching on n agents.
inline Matching pairs_1based(int n, std::initializer_list<std::pair<int, int>> pairs) {
  Matching m(n);
  for (auto [a, b] : pairs) m.add(a - 1, b - 1);
  return m;
}

/// Number of partners of a that a strictly prefers to b.
inline int count_better(const Matching& m, const PreferenceTable& t, AgentId a, AgentId b) {
  int k = 0;
  for (AgentId p : m.partners(a)) {
    if (t.rank(a, p) < t.rank(a, b)) ++k;
  }
  return k;
}

/// {i, j} blocks iff it is acceptable, unmatched, and each endpoint either has
/// a free slot or holds a partner it likes less than the other endpoint.
inline bool oracle_blocks(const Matching& m, const PreferenceTable& t, AgentId i, AgentId j) {
  if (i == j || !t.acceptable(i, j) || m.contains(i, j)) return false;
  auto wants = [&](AgentId a, AgentId b) {
    const auto ps = m.partners(a);
    if (static_cast<int>(ps.size()) < t.capacity(a)) return true;
    return std::any_of(ps.begin(), ps.end(), [&](AgentId p) { return t.rank(a, b) < t.rank(a, p); });
  };
  return wants(i, j) && wants(j, i);
}

inline std::vector<AgentPair> oracle_blocking_pairs(const Matching& m, const PreferenceTable& t) {
  std::vector<AgentPair> out;
  for (AgentId i = 0; i < t.size(); ++i) {
    for (AgentId j = i + 1; j < t.size(); ++j) {
      if (oracle_blocks(m, t, i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

inline bool oracle_feasible(const Matching& m, const PreferenceTable& t) {
  for (AgentId i = 0; i < t.size(); ++i) {
    if (static_cast<int>(m.partners(i).size()) > t.capacity(i)) return false;
  }
  return true;
}

/// Visits every capacity-feasible matching by plain bitmask enumeration over
/// acceptable pairs; only for tiny instances (at most 20 pairs).
template <class Visit>
void oracle_each_matching(const PreferenceTable& t, Visit visit) {
  std::vector<AgentPair> pairs;
  for (AgentId i = 0; i < t.size(); ++i) {
    for (AgentId j = i + 1; j < t.size(); ++j) {
      if (t.acceptable(i, j)) pairs.emplace_back(i, j);
    }
  }
  if (pairs.size() > 20) throw std::logic_error("oracle_each_matching: instance too large");
  for (unsigned long mask = 0; mask < (1ul << pairs.size()); ++mask) {
    Matching m(t.size());
    std::vector<int> deg(t.size(), 0);
    bool ok = true;
    for (std::size_t p = 0; p < pairs.size() && ok; ++p) {
      if (mask >> p & 1) {
        m.add(pairs[p].first, pairs[p].second);
        ok = ++deg[pairs[p].first] <= t.capacity(pairs[p].first) && ++deg[pairs[p].second] <= t.capacity(pairs[p].second);
      }
    }
    if (ok) visit(m);
  }
}

inline std::optional<Matching> oracle_stable_matching(const PreferenceTable& t) {
  std::optional<Matching> found;
  oracle_each_matching(t, [&](const Matching& m) {
    if (!found && oracle_blocking_pairs(m, t).empty()) found = m;
  });
  return found;
}

/// Minimum number of blocking pairs and minimum largest per-agent count.
struct OracleMinima {
  int total = 1 << 30;
  int max = 1 << 30;
};

inline OracleMinima oracle_bp_minima(const PreferenceTable& t) {
  OracleMinima out;
  oracle_each_matching(t, [&](const Matching& m) {
    const auto bp = oracle_blocking_pairs(m, t);
    std::vector<int> per(t.size(), 0);
    for (auto [a, b] : bp) {
      ++per[a];
      ++per[b];
    }
    out.total = std::min(out.total, static_cast<int>(bp.size()));
    out.max = std::min(out.max, *std::max_element(per.begin(), per.end()));
  });
  return out;
}

}  // namespace nfsm::testing
