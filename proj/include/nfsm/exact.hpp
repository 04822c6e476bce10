#pragma once

// Exhaustive oracles. Everything here is exponential and meant for small instances;
// each routine accepts a node budget (0 = unlimited) and throws BudgetExceeded past it.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "nfsm/errors.hpp"
#include "nfsm/gsp.hpp"
#include "nfsm/instance.hpp"
#include "nfsm/stability.hpp"

namespace nfsm {

namespace detail {

struct Budget {
  std::uint64_t limit = 0;
  std::uint64_t used = 0;
  const char* what = "search";
  void tick() {
    ++used;
    if (limit != 0 && used > limit) throw BudgetExceeded(what, used);
  }
};

/// Acceptable unordered pairs in lexicographic order.
inline std::vector<AgentPair> acceptable_pairs(const PreferenceTable& t) {
  std::vector<AgentPair> out;
  for (AgentId i = 0; i < t.size(); ++i) {
    for (AgentId j = i + 1; j < t.size(); ++j) {
      if (t.acceptable(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace detail

/// Calls visit(m) once for every subset of acceptable pairs that respects the
/// capacities of t. Enumeration stops early when visit returns false.
inline void for_each_matching(const PreferenceTable& t, const std::function<bool(const Matching&)>& visit,
                              std::uint64_t node_budget = 0) {
  const auto pairs = detail::acceptable_pairs(t);
  detail::Budget budget{node_budget, 0, "matching enumeration"};
  Matching m(t.size());
  std::vector<int> deg(t.size(), 0);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (stop) return;
    budget.tick();
    if (p == pairs.size()) {
      if (!visit(m)) stop = true;
      return;
    }
    rec(p + 1);
    auto [a, b] = pairs[p];
    if (!stop && deg[a] < t.capacity(a) && deg[b] < t.capacity(b)) {
      ++deg[a];
      ++deg[b];
      m.add(a, b);
      rec(p + 1);
      m.remove(a, b);
      --deg[a];
      --deg[b];
    }
  };
  rec(0);
}

inline std::vector<Matching> enumerate_matchings(const PreferenceTable& t, std::uint64_t node_budget = 0) {
  std::vector<Matching> out;
  for_each_matching(t, [&](const Matching& m) { out.push_back(m); return true; }, node_budget);
  return out;
}

/// Every subset of acceptable pairs, capacities ignored.
inline void for_each_pair_set(const PreferenceTable& t, const std::function<bool(const Matching&)>& visit,
                              std::uint64_t node_budget = 0) {
  const auto pairs = detail::acceptable_pairs(t);
  if (pairs.size() > 40) throw ValidationError("too many pairs for subset enumeration");
  detail::Budget budget{node_budget, 0, "pair-set enumeration"};
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    budget.tick();
    Matching m(t.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (mask >> p & 1) m.add(pairs[p].first, pairs[p].second);
    }
    if (!visit(m)) return;
  }
}

/// First stable matching found by backtracking over pairs in lexicographic order.
/// Once all pairs of agents 0..i are decided, every unmatched pair among them is
/// final and can be tested for blocking, which prunes most of the tree. Uses the
/// blocking-pair definition only, so it is independent of the partition theory.
inline std::optional<Matching> exhaustive_stable_matching(const PreferenceTable& t,
                                                          std::uint64_t node_budget = 0) {
  const int n = t.size();
  detail::Budget budget{node_budget, 0, "exhaustive stable matching search"};
  Matching m(n);
  std::vector<int> deg(n, 0);
  std::optional<Matching> found;

  // Pairs {a, i} with a < i, evaluated when row i is complete.
  auto row_ok = [&](AgentId i) {
    for (AgentId a = 0; a < i; ++a) {
      if (is_blocking_pair(m, t, a, i)) return false;
    }
    return true;
  };

  std::function<bool(AgentId, AgentId)> rec = [&](AgentId i, AgentId j) -> bool {
    budget.tick();
    if (j == n) {
      if (!row_ok(i)) return false;
      if (i + 1 == n) {
        found = m;
        return true;
      }
      return rec(i + 1, i + 2);
    }
    if (!t.acceptable(i, j)) return rec(i, j + 1);
    if (deg[i] < t.capacity(i) && deg[j] < t.capacity(j)) {
      ++deg[i];
      ++deg[j];
      m.add(i, j);
      if (rec(i, j + 1)) return true;
      m.remove(i, j);
      --deg[i];
      --deg[j];
    }
    return rec(i, j + 1);
  };
  if (n == 0) return Matching(0);
  rec(0, 1);
  return found;
}

// ---------------------------------------------------------------------------
// Minimum number of blocking pairs (pair-deletion brute force)
// ---------------------------------------------------------------------------

enum class SolvabilityOracle { Partition, Enumeration };

struct MinBpOptions {
  SolvabilityOracle oracle = SolvabilityOracle::Partition;
  /// Maximum number of deletion sets tested; 0 means unlimited.
  std::uint64_t node_budget = 0;
  GspSearchOptions partition;
};

struct MinBpResult {
  Matching matching;
  int k = 0;                       // size of the first deletion set that worked
  std::vector<AgentPair> removed;  // that deletion set
  std::uint64_t subsets_tested = 0;
};

/// For k = 0, 1, ... tries every k-set of unordered pairs in lexicographic order,
/// deletes those pairs from both lists, and returns the first stable matching of a
/// restricted instance. Its blocking pairs in `inst` are a subset of the deleted
/// set, and k is the minimum number of blocking pairs over all matchings.
inline MinBpResult min_bp_bruteforce(const SfInstance& inst, const MinBpOptions& opt = {}) {
  const auto pairs = detail::acceptable_pairs(inst);
  const std::size_t np = pairs.size();
  detail::Budget budget{opt.node_budget, 0, "minimum blocking pair brute force"};

  auto solve = [&](const PreferenceTable& restricted) -> std::optional<Matching> {
    if (opt.oracle == SolvabilityOracle::Enumeration) return exhaustive_stable_matching(restricted);
    return find_stable_matching(restricted, opt.partition);
  };

  for (std::size_t k = 0; k <= np; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t q = 0; q < k; ++q) idx[q] = q;
    for (;;) {
      budget.tick();
      std::vector<AgentPair> removed;
      removed.reserve(k);
      for (std::size_t q : idx) removed.push_back(pairs[q]);
      if (auto m = solve(inst.without_pairs(removed))) {
        return MinBpResult{std::move(*m), static_cast<int>(k), std::move(removed), budget.used};
      }
      // Next k-combination in lexicographic order.
      std::size_t q = k;
      while (q > 0 && idx[q - 1] == np - k + (q - 1)) --q;
      if (q == 0) break;
      ++idx[q - 1];
      for (std::size_t r = q; r < k; ++r) idx[r] = idx[r - 1] + 1;
    }
  }
  throw InternalError("deleting every pair must leave a solvable instance");
}

// ---------------------------------------------------------------------------
// Blocking-pair minima over all capacity-feasible matchings
// ---------------------------------------------------------------------------

struct BpMinima {
  int min_total = INT_MAX;     // min |bp(M)|
  int min_max = INT_MAX;       // min max_i |bp_i(M)|
  Matching total_witness;
  Matching max_witness;
  std::uint64_t matchings = 0;
};

inline BpMinima brute_bp_minima(const PreferenceTable& t, std::uint64_t node_budget = 0) {
  BpMinima out;
  for_each_matching(
      t,
      [&](const Matching& m) {
        ++out.matchings;
        const auto counts = blocking_pair_counts(m, t);
        int total = 0;
        int mx = 0;
        for (int c : counts) {
          total += c;
          mx = std::max(mx, c);
        }
        total /= 2;
        if (total < out.min_total) {
          out.min_total = total;
          out.total_witness = m;
        }
        if (mx < out.min_max) {
          out.min_max = mx;
          out.max_witness = m;
        }
        return true;
      },
      node_budget);
  return out;
}

// ---------------------------------------------------------------------------
// Blocking-entry minima
// ---------------------------------------------------------------------------

enum class BeScope { OriginalCapacities, Unrestricted };

struct BeMinima {
  int min_total = INT_MAX;  // min |be(M)|
  int min_max = INT_MAX;    // min max_i |be_i(M)|
  Matching total_witness;
  Matching max_witness;
};

/// Minimum blocking entries over capacity-feasible matchings (OriginalCapacities) or
/// over all pair sets (Unrestricted), always measured against inst's capacities.
inline BeMinima brute_min_be(const SfInstance& inst, BeScope scope, std::uint64_t node_budget = 0) {
  BeMinima out;
  auto visit = [&](const Matching& m) {
    const BeProfile p = be_profile(m, inst);
    if (p.total < out.min_total) {
      out.min_total = p.total;
      out.total_witness = m;
    }
    if (p.max < out.min_max) {
      out.min_max = p.max;
      out.max_witness = m;
    }
    return true;
  };
  if (scope == BeScope::OriginalCapacities) {
    for_each_matching(inst, visit, node_budget);
  } else {
    for_each_pair_set(inst, visit, node_budget);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Minimum total capacity change for solvability
// ---------------------------------------------------------------------------

struct CapacityChangeResult {
  int total = 0;  // min sum |c'_i - c_i|
  CapacityDelta witness;
  std::uint64_t deltas_tested = 0;
};

/// Tries delta vectors in order of increasing sum |delta_i| (each |delta_i| <= max_step,
/// signs restricted by mode, capacities kept in [0, n-1]) and returns the first one
/// whose instance has a stable matching. Solvability is decided by
/// exhaustive_stable_matching, not by the partition search.
inline CapacityChangeResult brute_min_capacity_change(const SfInstance& inst, DeltaMode mode, int max_step = 1,
                                                      std::uint64_t node_budget = 0) {
  const int n = inst.size();
  detail::Budget budget{node_budget, 0, "capacity change brute force"};
  std::vector<int> steps;  // candidate nonzero values per agent
  for (int s = 1; s <= max_step; ++s) {
    if (mode != DeltaMode::DecreaseOnly) steps.push_back(s);
    if (mode != DeltaMode::IncreaseOnly) steps.push_back(-s);
  }

  std::vector<int> d(n, 0);
  std::optional<CapacityChangeResult> best;
  // Fill agents from index `from` on so that sum |d| reaches exactly `left`.
  std::function<bool(int, int)> rec = [&](int from, int left) -> bool {
    if (left == 0) {
      budget.tick();
      std::vector<int> caps = inst.capacities();
      for (int i = 0; i < n; ++i) caps[i] += d[i];
      if (exhaustive_stable_matching(inst.with_capacities(caps))) {
        best = CapacityChangeResult{0, CapacityDelta(d, mode), budget.used};
        return true;
      }
      return false;
    }
    for (int i = from; i < n; ++i) {
      for (int s : steps) {
        const int a = s < 0 ? -s : s;
        const int c = inst.capacity(i) + s;
        if (a > left || c < 0 || c > n - 1) continue;
        d[i] = s;
        if (rec(i + 1, left - a)) return true;
        d[i] = 0;
      }
    }
    return false;
  };
  for (int total = 0; total <= n * max_step; ++total) {
    if (rec(0, total)) {
      best->total = total;
      best->deltas_tested = budget.used;
      return *best;
    }
  }
  throw InternalError("no capacity change within the step bound makes the instance solvable");
}

}  // namespace nfsm
