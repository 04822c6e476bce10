#pragma once

// Generalised stable partitions: representation, verification, search, reduction.
//
// Search structure. In every partition, an arc p -> a of a cycle of length at least 3
// makes p the worst predecessor of a (otherwise p and a would violate F2, or F4 if
// they also formed a transposition). Consequently every agent lies on at most one
// long cycle, an agent on a long cycle has no fixed points, and all of its
// transposition partners rank above its long-cycle predecessor. The search below
// enumerates exactly these structures: each agent walks its list in preference
// order and assigns every pair one of {none, transposition, arc out, arc in}.
// F2 becomes a per-agent threshold: once agent a leaves b unpaired while a still
// has capacity at b's rank, b's predecessors must all rank above a.

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nfsm/errors.hpp"
#include "nfsm/instance.hpp"
#include "nfsm/io.hpp"
#include "nfsm/random.hpp"

namespace nfsm {

/// Collection of cyclic permutations. A cycle (a b c) maps a -> b -> c -> a;
/// a length-1 cycle is a fixed point and counts towards the agent's capacity.
class Gsp {
 public:
  Gsp() = default;
  Gsp(int n, std::vector<std::vector<AgentId>> cycles) : n_(n), cycles_(std::move(cycles)) {
    for (const auto& c : cycles_) {
      if (c.empty()) throw ValidationError("empty cycle");
      for (AgentId a : c) {
        if (a < 0 || a >= n_) throw ValidationError("cycle refers to an unknown agent");
      }
    }
    canonicalize();
  }

  int agent_count() const noexcept { return n_; }
  const std::vector<std::vector<AgentId>>& cycles() const noexcept { return cycles_; }

  /// Number of cycles containing each agent.
  std::vector<int> membership() const {
    std::vector<int> m(n_, 0);
    for (const auto& c : cycles_) {
      for (AgentId a : c) ++m[a];
    }
    return m;
  }

  bool is_reduced() const {
    return std::none_of(cycles_.begin(), cycles_.end(),
                        [](const auto& c) { return c.size() > 2 && c.size() % 2 == 0; });
  }

  std::size_t fixed_point_count() const {
    return static_cast<std::size_t>(
        std::count_if(cycles_.begin(), cycles_.end(), [](const auto& c) { return c.size() == 1; }));
  }

  friend bool operator==(const Gsp&, const Gsp&) = default;

  /// Rotates one cycle so that its smallest agent comes first (orientation kept).
  static std::vector<AgentId> canonical_cycle(std::vector<AgentId> c) {
    if (!c.empty()) std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    return c;
  }

 private:
  void canonicalize() {
    for (auto& c : cycles_) c = canonical_cycle(std::move(c));
    std::sort(cycles_.begin(), cycles_.end());
  }

  int n_ = 0;
  std::vector<std::vector<AgentId>> cycles_;
};

struct GspViolation {
  std::string condition;  // "F1".."F4", or "cycle" for malformed cycles
  std::vector<AgentId> agents;
  std::string detail;
};

struct GspReport {
  std::vector<GspViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool has(std::string_view condition) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const auto& v) { return v.condition == condition; });
  }
  std::string summary() const {
    std::string s;
    for (const auto& v : violations) {
      s += v.condition + ":";
      for (AgentId a : v.agents) s += " " + std::to_string(a + 1);
      s += " (" + v.detail + ")\n";
    }
    return s;
  }
};

inline GspReport verify_gsp(const Gsp& pi, const PreferenceTable& inst) {
  GspReport rep;
  const int n = inst.size();
  if (pi.agent_count() != n) {
    rep.violations.push_back({"cycle", {}, "partition is over a different number of agents"});
    return rep;
  }
  auto add = [&](const char* cond, std::vector<AgentId> agents, std::string detail) {
    rep.violations.push_back({cond, std::move(agents), std::move(detail)});
  };

  std::vector<int> arcs(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> worst_pred(n, -1);  // rank of the worst predecessor, -1 if none
  std::vector<char> transposed(static_cast<std::size_t>(n) * n, 0);
  std::set<std::vector<AgentId>> seen;

  for (const auto& c : pi.cycles()) {
    const std::size_t len = c.size();
    if (std::set<AgentId>(c.begin(), c.end()).size() != len) {
      add("cycle", c, "agent repeated inside a cycle");
      continue;
    }
    if (len >= 2 && !seen.insert(c).second) add("cycle", c, "cycle occurs twice");
    for (std::size_t k = 0; k < len; ++k) {
      const AgentId a = c[k];
      const AgentId succ = c[(k + 1) % len];
      const AgentId pred = c[(k + len - 1) % len];
      if (len >= 2 && !inst.acceptable(a, succ)) {
        add("cycle", {a, succ}, "adjacent agents are mutually unacceptable");
      }
      if (inst.rank(a, succ) > inst.rank(a, pred)) {
        add("F1", {a, succ, pred}, "successor ranked below predecessor");
      }
      worst_pred[a] = std::max(worst_pred[a], inst.rank(a, pred));
      if (len >= 2) ++arcs[static_cast<std::size_t>(a) * n + succ];
    }
    if (len == 2) {
      transposed[static_cast<std::size_t>(c[0]) * n + c[1]] = 1;
      transposed[static_cast<std::size_t>(c[1]) * n + c[0]] = 1;
    }
  }

  const auto member = pi.membership();
  for (AgentId a = 0; a < n; ++a) {
    if (member[a] != inst.capacity(a)) {
      add("F3", {a}, "in " + std::to_string(member[a]) + " cycles, capacity " +
                         std::to_string(inst.capacity(a)));
    }
  }

  for (AgentId a = 0; a < n; ++a) {
    for (AgentId b = a + 1; b < n; ++b) {
      const int mult = arcs[static_cast<std::size_t>(a) * n + b] + arcs[static_cast<std::size_t>(b) * n + a];
      if (mult > 2) add("F4", {a, b}, "adjacent " + std::to_string(mult) + " times");
      if (transposed[static_cast<std::size_t>(a) * n + b] || !inst.acceptable(a, b)) continue;
      if (worst_pred[a] >= 0 && worst_pred[b] >= 0 && inst.rank(a, b) < worst_pred[a] &&
          inst.rank(b, a) < worst_pred[b]) {
        add("F2", {a, b}, "both prefer each other to a predecessor");
      }
    }
  }
  return rep;
}

/// Splits every even cycle (r0 r1 ... r2k-1) longer than 2 into (r0 r1)(r2 r3)...
/// No verification; see reduce_gsp(pi, inst) for the checked form.
inline Gsp reduce_gsp(const Gsp& pi) {
  std::vector<std::vector<AgentId>> out;
  for (const auto& c : pi.cycles()) {
    if (c.size() > 2 && c.size() % 2 == 0) {
      for (std::size_t k = 0; k < c.size(); k += 2) out.push_back({c[k], c[k + 1]});
    } else {
      out.push_back(c);
    }
  }
  return Gsp(pi.agent_count(), std::move(out));
}

inline Gsp reduce_gsp(const Gsp& pi, const PreferenceTable& inst) {
  if (auto rep = verify_gsp(pi, inst); !rep.ok()) {
    throw ValidationError("cannot reduce an invalid partition:\n" + rep.summary());
  }
  Gsp out = reduce_gsp(pi);
  if (auto rep = verify_gsp(out, inst); !rep.ok()) {
    throw InternalError("reduction broke the partition:\n" + rep.summary());
  }
  return out;
}

/// Cycles of odd length at least 3, in canonical order.
inline std::vector<std::vector<AgentId>> odd_cycles(const Gsp& pi) {
  std::vector<std::vector<AgentId>> out;
  for (const auto& c : pi.cycles()) {
    if (c.size() >= 3 && c.size() % 2 == 1) out.push_back(c);
  }
  return out;
}

/// The transpositions as a matching. Requires every cycle to have length at most 2.
inline Matching stable_from_gsp(const Gsp& pi) {
  Matching m(pi.agent_count());
  for (const auto& c : pi.cycles()) {
    if (c.size() > 2) {
      throw ValidationError("partition still contains a cycle of length " + std::to_string(c.size()));
    }
    if (c.size() == 2) m.add(c[0], c[1]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

inline std::string serialize_gsp(const Gsp& pi) {
  std::string out;
  for (const auto& c : pi.cycles()) {
    out += "(";
    for (AgentId a : c) out += " " + std::to_string(a + 1);
    out += " )\n";
  }
  return out;
}

inline Gsp parse_gsp(std::string_view text, int n) {
  std::string spaced;
  spaced.reserve(text.size() + 16);
  for (char ch : text) {
    if (ch == '(' || ch == ')') {
      spaced += ' ';
      spaced += ch;
      spaced += ' ';
    } else {
      spaced += ch;
    }
  }
  std::vector<std::vector<AgentId>> cycles;
  for (const auto& ln : detail::tokenize(spaced)) {
    if (ln.tokens.size() < 3 || ln.tokens.front() != "(" || ln.tokens.back() != ")") {
      throw ParseError(ln.number, "expected a cycle \"( i j ... )\"");
    }
    std::vector<AgentId> c;
    for (std::size_t t = 1; t + 1 < ln.tokens.size(); ++t) {
      c.push_back(detail::parse_agent(ln.tokens[t], ln.number, n));
    }
    cycles.push_back(std::move(c));
  }
  return Gsp(n, std::move(cycles));
}

// ---------------------------------------------------------------------------
// Proposal-based list reduction
// ---------------------------------------------------------------------------

/// Pairs that survive a capacitated proposal round: every agent proposes down its
/// list keeping up to c_i outstanding proposals; a receiver keeps its c_j best
/// proposers, and once it holds c_j proposals it deletes everyone ranked below
/// the worst of them. Agents with capacity 0 lose all pairs. Returns an n*n 0/1
/// table of surviving pairs. No partition uses a deleted pair as an arc or a
/// transposition, so the search may treat deleted pairs as unpaired.
inline std::vector<char> proposal_reduction(const PreferenceTable& t) {
  const int n = t.size();
  std::vector<char> alive(static_cast<std::size_t>(n) * n, 0);
  auto at = [n](AgentId a, AgentId b) { return static_cast<std::size_t>(a) * n + b; };
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j : t.list(i)) alive[at(i, j)] = 1;
  }

  std::vector<std::set<int>> held(n);      // ranks (in the holder's list) of held proposers
  std::vector<std::set<AgentId>> sent(n);  // agents currently holding a proposal from i
  std::vector<std::size_t> next(n, 0);
  std::vector<AgentId> queue;
  std::vector<char> queued(n, 0);

  auto enqueue = [&](AgentId a) {
    if (!queued[a]) {
      queued[a] = 1;
      queue.push_back(a);
    }
  };
  auto kill = [&](AgentId a, AgentId b) {
    if (!alive[at(a, b)]) return;
    alive[at(a, b)] = 0;
    alive[at(b, a)] = 0;
    if (held[a].erase(t.rank(a, b))) {
      sent[b].erase(a);
      enqueue(b);
    }
    if (held[b].erase(t.rank(b, a))) {
      sent[a].erase(b);
      enqueue(a);
    }
  };

  for (AgentId i = 0; i < n; ++i) {
    if (t.capacity(i) == 0) {
      for (AgentId j : t.list(i)) kill(i, j);
    }
  }
  for (AgentId i = 0; i < n; ++i) enqueue(i);

  while (!queue.empty()) {
    const AgentId i = queue.back();
    queue.pop_back();
    queued[i] = 0;
    const auto li = t.list(i);
    while (static_cast<int>(sent[i].size()) < t.capacity(i) && next[i] < li.size()) {
      const AgentId j = li[next[i]++];
      if (!alive[at(i, j)]) continue;
      held[j].insert(t.rank(j, i));
      sent[i].insert(j);
      const int cj = t.capacity(j);
      if (static_cast<int>(held[j].size()) > cj) {
        const AgentId worst = t.list(j)[*held[j].rbegin()];
        kill(j, worst);
      }
      if (static_cast<int>(held[j].size()) == cj && cj > 0) {
        const int cut = *held[j].rbegin();
        const auto lj = t.list(j);
        for (std::size_t r = static_cast<std::size_t>(cut) + 1; r < lj.size(); ++r) kill(j, lj[r]);
      }
    }
  }
  return alive;
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

struct GspSearchOptions {
  /// 0 keeps the natural agent order and a fixed value order; any other value
  /// randomises both, deterministically per seed.
  std::uint64_t seed = 0;
  /// Restrict the search with proposal_reduction first (falls back to the full
  /// lists if the restricted search finds nothing).
  bool use_reduction = true;
  /// Maximum number of search decisions; 0 means unlimited.
  std::uint64_t node_budget = 0;
};

struct GspSearchResult {
  Gsp gsp;
  std::uint64_t nodes = 0;
  bool fell_back = false;
};

namespace detail {

class GspSearch {
 public:
  GspSearch(const PreferenceTable& t, const GspSearchOptions& opt, const std::vector<char>* alive,
            std::uint64_t nodes_so_far)
      : t_(t), n_(t.size()), alive_(alive), rng_(opt.seed), randomise_(opt.seed != 0),
        budget_(opt.node_budget), nodes_(nodes_so_far) {
    order_.resize(n_);
    for (AgentId i = 0; i < n_; ++i) order_[i] = i;
    if (randomise_) shuffle(order_, rng_);
    pair_.assign(static_cast<std::size_t>(n_) * n_, kUndecided);
    st_.assign(n_, AgentState{});
  }

  std::optional<Gsp> run() {
    pick_next(0);
    if (dfs(0, 0)) return result_;
    return std::nullopt;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  enum : std::uint8_t { kUndecided, kNone, kTrans, kOut, kIn };  // kOut: row agent -> column agent
  static constexpr int kNoBound = INT_MAX;

  struct AgentState {
    std::uint64_t pred_mask = 0;  // bit r: the agent at rank r is a predecessor
    int in_used = 0;
    int out_used = 0;
    AgentId pred = -1;  // long-cycle predecessor
    AgentId succ = -1;  // long-cycle successor
    int bound = kNoBound;
  };

  std::size_t at(AgentId a, AgentId b) const { return static_cast<std::size_t>(a) * n_ + b; }

  void set_pair(AgentId i, AgentId j, std::uint8_t s) {
    pair_[at(i, j)] = s;
    pair_[at(j, i)] = s == kOut ? std::uint8_t{kIn} : s == kIn ? std::uint8_t{kOut} : s;
  }

  void tick() {
    ++nodes_;
    if (budget_ != 0 && nodes_ > budget_) throw BudgetExceeded("partition search", nodes_);
  }

  bool open_pair(AgentId x, AgentId y) const {
    return pair_[at(x, y)] == kUndecided && (alive_ == nullptr || (*alive_)[at(x, y)]);
  }

  /// Whether the undecided pair {x, y} can still make y a predecessor of x,
  /// judged from y's side only.
  bool could_precede(AgentId x, AgentId y) const {
    if (!open_pair(x, y)) return false;
    const AgentState& s = st_[y];
    const int ry = t_.rank(y, x);
    const int cy = t_.capacity(y);
    if (s.out_used >= cy) return false;
    if (s.pred >= 0 && t_.rank(y, s.pred) < ry) return false;
    const bool as_trans = s.in_used < cy && ry <= s.bound;
    const bool as_arc = s.succ < 0 && ry < s.bound;
    return as_trans || as_arc;
  }

  /// Cheap look-ahead: an agent on a long cycle or under a bound has no fixed
  /// points, so it needs enough undecided partners ranked high enough to reach
  /// its capacity; an agent with a successor still needs a predecessor below it.
  bool viable(AgentId x) const {
    const AgentState& s = st_[x];
    if (s.pred < 0 && s.succ < 0 && s.bound == kNoBound) return true;
    const auto lx = t_.list(x);
    int limit = std::min<int>(s.bound, static_cast<int>(lx.size()) - 1);
    if (s.pred >= 0) limit = std::min(limit, t_.rank(x, s.pred) - 1);
    int room = 0;
    for (int r = 0; r <= limit; ++r) room += could_precede(x, lx[r]) ? 1 : 0;
    if (s.pred >= 0) return s.in_used + room >= t_.capacity(x);
    if (s.in_used + room < t_.capacity(x)) return false;
    if (s.succ >= 0) {
      int from = t_.rank(x, s.succ);
      if (s.pred_mask != 0) from = std::max(from, 63 - std::countl_zero(s.pred_mask));
      for (int r = from + 1; r <= limit; ++r) {
        if (could_precede(x, lx[r])) return true;
      }
      return false;
    }
    return true;
  }

  /// Moves the most constrained unprocessed agent to order_[k]: agents that can no
  /// longer have fixed points first, then those with the fewest undecided pairs.
  void pick_next(int k) {
    if (k >= n_) return;
    int best = k;
    long best_score = LONG_MAX;
    for (int q = k; q < n_; ++q) {
      const AgentId x = order_[q];
      const AgentState& s = st_[x];
      long undecided = 0;
      for (AgentId y : t_.list(x)) undecided += open_pair(x, y) ? 1 : 0;
      const bool tight = s.pred >= 0 || s.succ >= 0 || s.bound != kNoBound;
      const long score = (tight ? 0 : 1000) + undecided;
      if (score < best_score) {
        best_score = score;
        best = q;
      }
    }
    std::swap(order_[k], order_[best]);
  }

  bool finish_agent(AgentId i) const {
    const AgentState& s = st_[i];
    if ((s.pred >= 0) != (s.succ >= 0)) return false;
    const int fixed = t_.capacity(i) - s.in_used;
    if (fixed < 0) return false;
    if (fixed > 0 && (s.pred >= 0 || s.bound != kNoBound)) return false;
    return true;
  }

  bool dfs(int k, int r) {
    if (k == n_) return leaf();
    const AgentId i = order_[k];
    const auto li = t_.list(i);
    if (r == static_cast<int>(li.size())) {
      if (!finish_agent(i)) return false;
      pick_next(k + 1);
      return dfs(k + 1, 0);
    }

    AgentState& si = st_[i];
    const bool open = std::popcount(si.pred_mask & ((std::uint64_t{1} << r) - 1)) < t_.capacity(i);
    if (open && r > si.bound) return false;

    const AgentId j = li[r];
    if (pair_[at(i, j)] != kUndecided) return dfs(k, r + 1);

    const int rj = t_.rank(j, i);
    const bool usable = open && (alive_ == nullptr || (*alive_)[at(i, j)]);

    std::uint8_t opts[4];
    int count = 0;
    if (usable) {
      opts[count++] = kTrans;
      opts[count++] = kOut;
      opts[count++] = kIn;
    }
    opts[count++] = kNone;
    if (randomise_ && count > 1) {
      for (int a = count - 1; a > 0; --a) std::swap(opts[a], opts[rng_.below(static_cast<std::uint64_t>(a) + 1)]);
    }

    for (int o = 0; o < count; ++o) {
      if (try_option(opts[o], k, r, i, j, rj, open)) return true;
    }
    return false;
  }

  bool try_option(std::uint8_t opt, int k, int r, AgentId i, AgentId j, int rj, bool open) {
    AgentState& si = st_[i];
    AgentState& sj = st_[j];
    const int ci = t_.capacity(i);
    const int cj = t_.capacity(j);
    const std::uint64_t bit_i = std::uint64_t{1} << r;
    const std::uint64_t bit_j = std::uint64_t{1} << rj;

    switch (opt) {
      case kTrans:
        if (si.in_used >= ci || si.out_used >= ci || sj.in_used >= cj || sj.out_used >= cj) return false;
        if (si.pred >= 0 && t_.rank(i, si.pred) < r) return false;
        if (sj.pred >= 0 && t_.rank(j, sj.pred) < rj) return false;
        if (rj > sj.bound) return false;
        break;
      case kOut:
        if (si.succ >= 0 || si.out_used >= ci) return false;
        if (si.pred >= 0 && t_.rank(i, si.pred) < r) return false;
        if (sj.pred >= 0 || sj.in_used >= cj || rj > sj.bound) return false;
        if ((sj.pred_mask >> rj) != 0) return false;
        if (sj.succ >= 0 && t_.rank(j, sj.succ) > rj) return false;
        break;
      case kIn:
        if (si.pred >= 0 || si.succ < 0 || t_.rank(i, si.succ) > r) return false;
        if ((si.pred_mask >> r) != 0 || si.in_used + 1 != ci) return false;
        if (sj.succ >= 0 || sj.out_used >= cj || rj >= sj.bound) return false;
        if (sj.pred >= 0 && t_.rank(j, sj.pred) < rj) return false;
        break;
      default:
        break;
    }

    tick();
    const AgentState save_i = si;
    const AgentState save_j = sj;
    switch (opt) {
      case kTrans:
        si.pred_mask |= bit_i;
        ++si.in_used;
        ++si.out_used;
        sj.pred_mask |= bit_j;
        ++sj.in_used;
        ++sj.out_used;
        break;
      case kOut:
        si.succ = j;
        ++si.out_used;
        sj.pred = i;
        sj.pred_mask |= bit_j;
        ++sj.in_used;
        break;
      case kIn:
        si.pred = j;
        si.pred_mask |= bit_i;
        ++si.in_used;
        sj.succ = i;
        ++sj.out_used;
        break;
      default:
        if (open) {
          // i would accept j, so j must not accept i: every predecessor of j ranks above i.
          sj.bound = std::min(sj.bound, rj);
          if (sj.bound < 63 && (sj.pred_mask >> (sj.bound + 1)) != 0) {
            si = save_i;
            sj = save_j;
            return false;
          }
        }
        break;
    }
    set_pair(i, j, opt);
    const bool found = viable(i) && viable(j) && dfs(k, r + 1);
    if (!found) {
      set_pair(i, j, kUndecided);
      si = save_i;
      sj = save_j;
    }
    return found;
  }

  bool leaf() {
    std::vector<std::vector<AgentId>> cycles;
    for (AgentId a = 0; a < n_; ++a) {
      for (AgentId b = a + 1; b < n_; ++b) {
        if (pair_[at(a, b)] == kTrans) cycles.push_back({a, b});
      }
    }
    std::vector<char> placed(n_, 0);
    for (AgentId a = 0; a < n_; ++a) {
      if (st_[a].succ < 0 || placed[a]) continue;
      std::vector<AgentId> c;
      for (AgentId x = a; !placed[x]; x = st_[x].succ) {
        placed[x] = 1;
        c.push_back(x);
      }
      cycles.push_back(std::move(c));
    }
    for (AgentId a = 0; a < n_; ++a) {
      for (int f = st_[a].in_used; f < t_.capacity(a); ++f) cycles.push_back({a});
    }
    Gsp raw(n_, std::move(cycles));
    Gsp reduced = reduce_gsp(raw);
    if (auto rep = verify_gsp(reduced, t_); !rep.ok()) {
      throw InternalError("partition search produced an invalid partition:\n" + serialize_gsp(raw) +
                          rep.summary());
    }
    result_ = std::move(reduced);
    return true;
  }

  const PreferenceTable& t_;
  int n_;
  const std::vector<char>* alive_;
  SplitMix64 rng_;
  bool randomise_;
  std::uint64_t budget_;
  std::uint64_t nodes_;
  std::vector<AgentId> order_;
  std::vector<std::uint8_t> pair_;
  std::vector<AgentState> st_;
  Gsp result_;
};

}  // namespace detail

/// Reduced partition of t with search statistics. Throws InternalError if no
/// partition exists (impossible for valid inputs) and BudgetExceeded on budget.
inline GspSearchResult search_gsp(const PreferenceTable& t, const GspSearchOptions& opt = {}) {
  if (t.size() > 64) throw ValidationError("partition search supports at most 64 agents");
  GspSearchResult res;
  if (opt.use_reduction) {
    const auto alive = proposal_reduction(t);
    detail::GspSearch s(t, opt, &alive, 0);
    auto g = s.run();
    res.nodes = s.nodes();
    if (g) {
      res.gsp = std::move(*g);
      return res;
    }
    res.fell_back = true;
  }
  detail::GspSearch s(t, opt, nullptr, res.nodes);
  auto g = s.run();
  res.nodes = s.nodes();
  if (!g) {
    throw InternalError("no generalised stable partition found for instance:\n" + serialize_instance(t));
  }
  res.gsp = std::move(*g);
  return res;
}

inline Gsp find_reduced_gsp(const PreferenceTable& t, const GspSearchOptions& opt = {}) {
  return search_gsp(t, opt).gsp;
}

inline bool is_solvable(const PreferenceTable& t, const GspSearchOptions& opt = {}) {
  return odd_cycles(find_reduced_gsp(t, opt)).empty();
}

/// A stable matching of t, or nothing if t is unsolvable.
inline std::optional<Matching> find_stable_matching(const PreferenceTable& t, const GspSearchOptions& opt = {}) {
  Gsp g = find_reduced_gsp(t, opt);
  if (!odd_cycles(g).empty()) return std::nullopt;
  return stable_from_gsp(g);
}

}  // namespace nfsm
