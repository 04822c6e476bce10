#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "nfsm/errors.hpp"
#include "nfsm/instance.hpp"

namespace nfsm {

namespace detail {

inline void check_agents(const Matching& m, const PreferenceTable& inst) {
  if (m.agent_count() != inst.size()) {
    throw ValidationError("matching is over " + std::to_string(m.agent_count()) +
                          " agents but the instance has " + std::to_string(inst.size()));
  }
}

/// Number of partners of a that a ranks strictly above b.
inline int better_partners(const Matching& m, const PreferenceTable& inst, AgentId a, AgentId b) {
  int k = 0;
  for (AgentId r : m.partners(a)) k += inst.rank(a, r) < inst.rank(a, b) ? 1 : 0;
  return k;
}

/// Clause (ii)/(iii) of the blocking-pair definition for one side: a has free
/// capacity, or a prefers b to its worst current partner.
inline bool would_take(const Matching& m, const PreferenceTable& inst, AgentId a, AgentId b) {
  const auto& part = m.partners(a);
  if (static_cast<int>(part.size()) < inst.capacity(a)) return true;
  if (part.empty()) return false;
  int worst = -1;
  for (AgentId r : part) worst = std::max(worst, inst.rank(a, r));
  return inst.rank(a, b) < worst;
}

}  // namespace detail

inline bool is_feasible(const Matching& m, const PreferenceTable& inst) {
  detail::check_agents(m, inst);
  for (AgentId i = 0; i < inst.size(); ++i) {
    if (m.degree(i) > inst.capacity(i)) return false;
  }
  return true;
}

/// Least preferred partner of a, if any.
inline std::optional<AgentId> worst_match(AgentId a, const Matching& m, const PreferenceTable& inst) {
  detail::check_agents(m, inst);
  std::optional<AgentId> worst;
  for (AgentId r : m.partners(a)) {
    if (!worst || inst.rank(a, r) > inst.rank(a, *worst)) worst = r;
  }
  return worst;
}

inline bool is_blocking_pair(const Matching& m, const PreferenceTable& inst, AgentId i, AgentId j) {
  if (i == j || !inst.acceptable(i, j) || m.contains(i, j)) return false;
  return detail::would_take(m, inst, i, j) && detail::would_take(m, inst, j, i);
}

/// All blocking pairs, sorted. Works for matchings that exceed capacities.
inline std::vector<AgentPair> blocking_pairs(const Matching& m, const PreferenceTable& inst) {
  detail::check_agents(m, inst);
  std::vector<AgentPair> out;
  for (AgentId i = 0; i < inst.size(); ++i) {
    for (AgentId j = i + 1; j < inst.size(); ++j) {
      if (is_blocking_pair(m, inst, i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

inline bool is_stable(const Matching& m, const PreferenceTable& inst) {
  return blocking_pairs(m, inst).empty();
}

/// bp_i(M): number of blocking pairs containing each agent.
inline std::vector<int> blocking_pair_counts(const Matching& m, const PreferenceTable& inst) {
  std::vector<int> counts(inst.size(), 0);
  for (auto [a, b] : blocking_pairs(m, inst)) {
    ++counts[a];
    ++counts[b];
  }
  return counts;
}

enum class EntryKind { Overfull, Mutual };

inline const char* to_string(EntryKind k) { return k == EntryKind::Overfull ? "overfull" : "mutual"; }

struct BlockingEntry {
  AgentId source;
  AgentId target;
  EntryKind kind;

  friend bool operator==(const BlockingEntry&, const BlockingEntry&) = default;
  friend auto operator<=>(const BlockingEntry&, const BlockingEntry&) = default;
};

/// Blocking entries of m measured against the capacities of `original`, sorted by (source, target).
inline std::vector<BlockingEntry> blocking_entries(const Matching& m, const PreferenceTable& original) {
  detail::check_agents(m, original);
  std::vector<BlockingEntry> out;
  const int n = original.size();
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = 0; j < n; ++j) {
      if (i == j || !original.acceptable(i, j)) continue;
      const int better_i = detail::better_partners(m, original, i, j);
      if (m.contains(i, j)) {
        if (better_i >= original.capacity(i)) out.push_back({i, j, EntryKind::Overfull});
      } else if (better_i < original.capacity(i) &&
                 detail::better_partners(m, original, j, i) < original.capacity(j)) {
        out.push_back({i, j, EntryKind::Mutual});
      }
    }
  }
  return out;
}

struct BeProfile {
  std::vector<int> per_agent;
  int total = 0;
  int max = 0;
};

inline BeProfile be_profile(const Matching& m, const PreferenceTable& original) {
  BeProfile p;
  p.per_agent.assign(original.size(), 0);
  for (const auto& e : blocking_entries(m, original)) ++p.per_agent[e.source];
  for (int v : p.per_agent) {
    p.total += v;
    p.max = std::max(p.max, v);
  }
  return p;
}

/// CSV with header "source,target,kind"; agents 1-based.
inline std::string blocking_entries_csv(const std::vector<BlockingEntry>& entries) {
  std::string out = "source,target,kind\n";
  for (const auto& e : entries) {
    out += std::to_string(e.source + 1) + "," + std::to_string(e.target + 1) + "," + to_string(e.kind) + "\n";
  }
  return out;
}

}  // namespace nfsm
