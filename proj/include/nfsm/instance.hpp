#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nfsm/errors.hpp"

namespace nfsm {

/// Dense 0-based agent index. File formats are 1-based; conversion happens in io.hpp only.
using AgentId = std::int32_t;

/// Unordered pair of distinct agents, stored with first < second.
using AgentPair = std::pair<AgentId, AgentId>;

inline AgentPair make_pair_sorted(AgentId a, AgentId b) {
  return a < b ? AgentPair{a, b} : AgentPair{b, a};
}

/// Strict preference lists with mutual acceptability and a capacity per agent.
///
/// Lists may be incomplete (restricted instances built by the exact solvers make
/// some pairs mutually unacceptable). Ranks are positions in the owner's list;
/// an agent ranks itself right after its last acceptable agent ("free capacity")
/// and every unacceptable agent after that.
class PreferenceTable {
 public:
  PreferenceTable() = default;

  PreferenceTable(std::vector<std::vector<AgentId>> lists, std::vector<int> caps)
      : n_(static_cast<int>(lists.size())), lists_(std::move(lists)), caps_(std::move(caps)) {
    if (static_cast<int>(caps_.size()) != n_) {
      throw ValidationError("capacity vector length differs from agent count");
    }
    rank_.assign(static_cast<std::size_t>(n_) * n_, kUnacceptable);
    for (AgentId i = 0; i < n_; ++i) {
      const auto& li = lists_[i];
      for (std::size_t r = 0; r < li.size(); ++r) {
        const AgentId j = li[r];
        if (j < 0 || j >= n_) {
          throw ValidationError("agent " + std::to_string(i + 1) + " lists unknown agent " +
                                std::to_string(j + 1));
        }
        if (j == i) {
          throw ValidationError("agent " + std::to_string(i + 1) + " lists itself");
        }
        if (rank_[idx(i, j)] != kUnacceptable) {
          throw ValidationError("agent " + std::to_string(i + 1) + " lists agent " +
                                std::to_string(j + 1) + " twice");
        }
        rank_[idx(i, j)] = static_cast<int>(r);
      }
      rank_[idx(i, i)] = static_cast<int>(li.size());
      if (caps_[i] < 0 || caps_[i] > std::max(0, n_ - 1)) {
        throw ValidationError("capacity of agent " + std::to_string(i + 1) + " out of range");
      }
    }
    for (AgentId i = 0; i < n_; ++i) {
      for (AgentId j : lists_[i]) {
        if (rank_[idx(j, i)] == kUnacceptable) {
          throw ValidationError("acceptability of agents " + std::to_string(i + 1) + " and " +
                                std::to_string(j + 1) + " is not mutual");
        }
      }
    }
  }

  int size() const noexcept { return n_; }
  int capacity(AgentId i) const { return caps_[i]; }
  const std::vector<int>& capacities() const noexcept { return caps_; }
  std::span<const AgentId> list(AgentId i) const { return lists_[i]; }
  const std::vector<std::vector<AgentId>>& lists() const noexcept { return lists_; }

  /// Position of j in i's list; i's own rank is its list length; unacceptable agents rank last.
  int rank(AgentId i, AgentId j) const { return rank_[idx(i, j)]; }

  bool acceptable(AgentId i, AgentId j) const {
    return i != j && rank_[idx(i, j)] != kUnacceptable;
  }

  /// True iff i strictly prefers j to k. k == i means "to having free capacity".
  bool prefers(AgentId i, AgentId j, AgentId k) const { return rank(i, j) < rank(i, k); }

  bool contains(AgentId i) const noexcept { return i >= 0 && i < n_; }

  /// Copy in which every given pair is mutually unacceptable.
  PreferenceTable without_pairs(std::span<const AgentPair> removed) const {
    std::vector<char> drop(static_cast<std::size_t>(n_) * n_, 0);
    for (auto [a, b] : removed) {
      drop[idx(a, b)] = 1;
      drop[idx(b, a)] = 1;
    }
    std::vector<std::vector<AgentId>> lists(n_);
    for (AgentId i = 0; i < n_; ++i) {
      for (AgentId j : lists_[i]) {
        if (!drop[idx(i, j)]) lists[i].push_back(j);
      }
    }
    return PreferenceTable(std::move(lists), caps_);
  }

  PreferenceTable with_capacities(std::vector<int> caps) const {
    return PreferenceTable(lists_, std::move(caps));
  }

  bool is_complete() const {
    return std::all_of(lists_.begin(), lists_.end(),
                       [&](const auto& l) { return static_cast<int>(l.size()) == n_ - 1; });
  }

  friend bool operator==(const PreferenceTable& a, const PreferenceTable& b) {
    return a.lists_ == b.lists_ && a.caps_ == b.caps_;
  }

 protected:
  std::size_t idx(AgentId i, AgentId j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  static constexpr int kUnacceptable = 1 << 28;

  int n_ = 0;
  std::vector<std::vector<AgentId>> lists_;
  std::vector<int> caps_;
  std::vector<int> rank_;
};

/// Stable Fixtures instance: complete strict preferences and capacities in [0, n-1].
///
/// Original instances have capacities of at least 1; capacity 0 is admitted so
/// that near-feasible instances produced by capacity decreases are first-class.
class SfInstance : public PreferenceTable {
 public:
  SfInstance() = default;

  SfInstance(std::vector<std::vector<AgentId>> prefs, std::vector<int> caps)
      : PreferenceTable(std::move(prefs), std::move(caps)) {
    if (n_ < 2) throw ValidationError("an instance needs at least 2 agents");
    for (AgentId i = 0; i < n_; ++i) {
      if (static_cast<int>(lists_[i].size()) != n_ - 1) {
        throw ValidationError("incomplete preference list, agent " + std::to_string(i + 1));
      }
    }
  }

  SfInstance with_capacities(std::vector<int> caps) const { return SfInstance(lists_, std::move(caps)); }

  friend bool operator==(const SfInstance& a, const SfInstance& b) {
    return static_cast<const PreferenceTable&>(a) == static_cast<const PreferenceTable&>(b);
  }
};

/// Set of unordered agent pairs with per-agent partner sets.
///
/// Feasibility against a capacity function is checked by is_feasible(), not here:
/// near-feasible matchings deliberately exceed original capacities.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int n) : partners_(static_cast<std::size_t>(n)) {}

  Matching(int n, std::span<const AgentPair> pairs) : Matching(n) {
    for (auto [a, b] : pairs) add(a, b);
  }

  int agent_count() const noexcept { return static_cast<int>(partners_.size()); }

  /// Adds {a, b}; returns false if it was already present.
  bool add(AgentId a, AgentId b) {
    check(a, b);
    const AgentPair p = make_pair_sorted(a, b);
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
    if (it != pairs_.end() && *it == p) return false;
    pairs_.insert(it, p);
    insert_sorted(partners_[a], b);
    insert_sorted(partners_[b], a);
    return true;
  }

  bool remove(AgentId a, AgentId b) {
    check(a, b);
    const AgentPair p = make_pair_sorted(a, b);
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
    if (it == pairs_.end() || *it != p) return false;
    pairs_.erase(it);
    erase_sorted(partners_[a], b);
    erase_sorted(partners_[b], a);
    return true;
  }

  bool contains(AgentId a, AgentId b) const {
    if (a == b || a < 0 || b < 0 || a >= agent_count() || b >= agent_count()) return false;
    return std::binary_search(partners_[a].begin(), partners_[a].end(), b);
  }

  /// M(a): partners of a in ascending id order.
  const std::vector<AgentId>& partners(AgentId a) const { return partners_[a]; }
  int degree(AgentId a) const { return static_cast<int>(partners_[a].size()); }
  const std::vector<AgentPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.partners_.size() == b.partners_.size() && a.pairs_ == b.pairs_;
  }

 private:
  void check(AgentId a, AgentId b) const {
    if (a < 0 || b < 0 || a >= agent_count() || b >= agent_count()) {
      throw ValidationError("matching pair refers to an unknown agent");
    }
    if (a == b) throw ValidationError("matching pair pairs agent " + std::to_string(a + 1) + " with itself");
  }

  static void insert_sorted(std::vector<AgentId>& v, AgentId x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  }
  static void erase_sorted(std::vector<AgentId>& v, AgentId x) {
    v.erase(std::lower_bound(v.begin(), v.end(), x));
  }

  std::vector<AgentPair> pairs_;
  std::vector<std::vector<AgentId>> partners_;
};

enum class DeltaMode { Any, IncreaseOnly, DecreaseOnly };

/// Per-agent signed capacity change c'_i - c_i.
class CapacityDelta {
 public:
  CapacityDelta() = default;
  explicit CapacityDelta(int n, DeltaMode mode = DeltaMode::Any)
      : deltas_(static_cast<std::size_t>(n), 0), mode_(mode) {}

  CapacityDelta(std::vector<int> deltas, DeltaMode mode) : deltas_(std::move(deltas)), mode_(mode) {
    for (std::size_t i = 0; i < deltas_.size(); ++i) check_sign(static_cast<AgentId>(i), deltas_[i]);
  }

  int agent_count() const noexcept { return static_cast<int>(deltas_.size()); }
  DeltaMode mode() const noexcept { return mode_; }
  int operator[](AgentId i) const { return deltas_[i]; }
  const std::vector<int>& values() const noexcept { return deltas_; }

  void set(AgentId i, int d) {
    check_sign(i, d);
    deltas_[i] = d;
  }

  int signed_sum() const {
    int s = 0;
    for (int d : deltas_) s += d;
    return s;
  }
  int total_abs() const {
    int s = 0;
    for (int d : deltas_) s += d < 0 ? -d : d;
    return s;
  }
  int max_abs() const {
    int m = 0;
    for (int d : deltas_) m = std::max(m, d < 0 ? -d : d);
    return m;
  }
  bool is_zero() const {
    return std::all_of(deltas_.begin(), deltas_.end(), [](int d) { return d == 0; });
  }

  friend bool operator==(const CapacityDelta& a, const CapacityDelta& b) {
    return a.deltas_ == b.deltas_ && a.mode_ == b.mode_;
  }

 private:
  void check_sign(AgentId i, int d) const {
    if ((mode_ == DeltaMode::IncreaseOnly && d < 0) || (mode_ == DeltaMode::DecreaseOnly && d > 0)) {
      throw ValidationError("capacity delta of agent " + std::to_string(i + 1) +
                            " contradicts the delta direction");
    }
  }

  std::vector<int> deltas_;
  DeltaMode mode_ = DeltaMode::Any;
};

/// I' = (A, prefs, c + d). Throws if a capacity leaves [0, n-1].
inline SfInstance apply_deltas(const SfInstance& inst, const CapacityDelta& d) {
  if (d.agent_count() != inst.size()) throw ValidationError("capacity delta has the wrong agent count");
  std::vector<int> caps = inst.capacities();
  for (AgentId i = 0; i < inst.size(); ++i) {
    const int c = caps[i] + d[i];
    if (c < 0) throw ValidationError("capacity underflow for agent " + std::to_string(i + 1));
    if (c > inst.size() - 1) throw ValidationError("capacity overflow for agent " + std::to_string(i + 1));
    caps[i] = c;
  }
  return inst.with_capacities(std::move(caps));
}

}  // namespace nfsm
