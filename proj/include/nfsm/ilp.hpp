#pragma once

// Integer programs for matchings with few blocking pairs, an exact 0/1
// branch-and-bound solver, and an LP-format writer.
//
// Variables, for every ordered pair (i, j) of distinct agents:
//   x_i_j  i and j are matched               (x_i_j = x_j_i)
//   b_i_j  {i, j} is counted as blocking     (b_i_j = b_j_i)
//   w_i_j  i is full with partners it ranks at least as high as j
// plus r, the largest per-agent blocking count, in the min-max model.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nfsm/errors.hpp"
#include "nfsm/instance.hpp"
#include "nfsm/stability.hpp"

namespace nfsm {

enum class VarType { Binary, Integer };
enum class Sense { Le, Ge, Eq };
enum class RowKind { Capacity, SymmetryX, SymmetryB, Fullness, Coverage, MaxBlocking, Implied };
enum class IlpObjective { MinMaxBlocking, MinTotalBlocking };

/// ChargesMatched: w_ij + w_ji + b_ij >= 1, which also charges matched pairs.
/// Corrected: w_ij + w_ji + b_ij + x_ij >= 1, which exempts them.
enum class CoverageVariant { ChargesMatched, Corrected };

struct IlpVariable {
  std::string name;
  VarType type = VarType::Binary;
  long lo = 0;
  long hi = 1;
};

struct IlpTerm {
  int var;
  long coef;
};

/// A branching preference: the solver branches on the first free variable of
/// the model's branching list, trying value 1 first when one_first is set.
struct BranchRule {
  int var;
  bool one_first;
};

struct IlpRow {
  std::string name;
  RowKind kind;
  std::vector<IlpTerm> terms;
  Sense sense;
  long rhs;
};

class IlpModel {
 public:
  IlpModel(int n, IlpObjective objective, CoverageVariant variant)
      : n_(n), objective_(objective), variant_(variant) {
    const char* prefix[3] = {"x", "b", "w"};
    for (int family = 0; family < 3; ++family) {
      for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = 0; j < n; ++j) {
          if (i == j) continue;
          vars_.push_back({std::string(prefix[family]) + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                           VarType::Binary, 0, 1});
        }
      }
    }
    if (objective == IlpObjective::MinMaxBlocking) {
      vars_.push_back({"r", VarType::Integer, 0, std::max(0, n - 1)});
    }
  }

  int agent_count() const noexcept { return n_; }
  IlpObjective objective() const noexcept { return objective_; }
  CoverageVariant variant() const noexcept { return variant_; }
  const std::vector<IlpVariable>& variables() const noexcept { return vars_; }
  const std::vector<IlpRow>& rows() const noexcept { return rows_; }
  const std::vector<IlpTerm>& objective_terms() const noexcept { return obj_; }

  int x(AgentId i, AgentId j) const { return ordered(i, j); }
  int b(AgentId i, AgentId j) const { return block() + ordered(i, j); }
  int w(AgentId i, AgentId j) const { return 2 * block() + ordered(i, j); }
  int r() const {
    if (objective_ != IlpObjective::MinMaxBlocking) throw ValidationError("model has no variable r");
    return 3 * block();
  }

  void add_row(IlpRow row) {
    for (const auto& t : row.terms) {
      if (t.var < 0 || t.var >= static_cast<int>(vars_.size())) throw InternalError("row refers to an undeclared variable");
    }
    rows_.push_back(std::move(row));
  }
  void set_objective(std::vector<IlpTerm> terms) { obj_ = std::move(terms); }
  const std::vector<BranchRule>& branching() const noexcept { return branching_; }
  const std::vector<IlpRow>& implied_rows() const noexcept { return implied_; }
  void add_implied_row(IlpRow row) { implied_.push_back(std::move(row)); }
  void set_branching(std::vector<BranchRule> rules) { branching_ = std::move(rules); }

  std::size_t count_rows(RowKind k) const {
    return static_cast<std::size_t>(std::count_if(rows_.begin(), rows_.end(), [&](const auto& r) { return r.kind == k; }));
  }

 private:
  int block() const { return n_ * (n_ - 1); }
  int ordered(AgentId i, AgentId j) const {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) throw ValidationError("no variable for this agent pair");
    return i * (n_ - 1) + (j < i ? j : j - 1);
  }

  int n_;
  IlpObjective objective_;
  CoverageVariant variant_;
  std::vector<IlpVariable> vars_;
  std::vector<IlpRow> rows_;
  std::vector<IlpTerm> obj_;
  std::vector<BranchRule> branching_;
  std::vector<IlpRow> implied_;
};

namespace detail {

inline std::string agents_suffix(AgentId i, AgentId j) {
  return std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

inline IlpModel build_common(const SfInstance& inst, IlpObjective objective, CoverageVariant variant) {
  const int n = inst.size();
  IlpModel m(n, objective, variant);
  for (AgentId i = 0; i < n; ++i) {
    IlpRow row{"cap_" + std::to_string(i + 1), RowKind::Capacity, {}, Sense::Le, inst.capacity(i)};
    for (AgentId j : inst.list(i)) row.terms.push_back({m.x(i, j), 1});
    m.add_row(std::move(row));
  }
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = i + 1; j < n; ++j) {
      m.add_row({"symx_" + agents_suffix(i, j), RowKind::SymmetryX, {{m.x(i, j), 1}, {m.x(j, i), -1}}, Sense::Eq, 0});
    }
  }
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = i + 1; j < n; ++j) {
      m.add_row({"symb_" + agents_suffix(i, j), RowKind::SymmetryB, {{m.b(i, j), 1}, {m.b(j, i), -1}}, Sense::Eq, 0});
    }
  }
  // sum over k ranked at least as high as j by i of x_ik - c_i w_ij >= 0
  for (AgentId i = 0; i < n; ++i) {
    const auto li = inst.list(i);
    for (std::size_t rj = 0; rj < li.size(); ++rj) {
      const AgentId j = li[rj];
      IlpRow row{"full_" + agents_suffix(i, j), RowKind::Fullness, {}, Sense::Ge, 0};
      for (std::size_t rk = 0; rk <= rj; ++rk) row.terms.push_back({m.x(i, li[rk]), 1});
      row.terms.push_back({m.w(i, j), -static_cast<long>(inst.capacity(i))});
      m.add_row(std::move(row));
    }
  }
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = i + 1; j < n; ++j) {
      IlpRow row{"cov_" + agents_suffix(i, j), RowKind::Coverage, {{m.w(i, j), 1}, {m.w(j, i), 1}, {m.b(i, j), 1}},
                 Sense::Ge, 1};
      if (variant == CoverageVariant::Corrected) row.terms.push_back({m.x(i, j), 1});
      m.add_row(std::move(row));
    }
  }
  return m;
}

/// Rows implied by the capacity and fullness rows, handed to the solver only.
/// If i is matched with someone it ranks below j, it cannot be full at j:
///   sum over k ranked below j by i of x_ik + c_i w_ij <= c_i.
/// Plain bound propagation cannot derive this until most of i's row is fixed.
inline void add_fullness_implications(const SfInstance& inst, IlpModel& m) {
  for (AgentId i = 0; i < inst.size(); ++i) {
    const auto li = inst.list(i);
    const long c = inst.capacity(i);
    for (std::size_t rj = 0; rj + 1 < li.size(); ++rj) {
      IlpRow row{"implied_" + agents_suffix(i, li[rj]), RowKind::Implied, {}, Sense::Le, c};
      for (std::size_t rk = rj + 1; rk < li.size(); ++rk) row.terms.push_back({m.x(i, li[rk]), 1});
      row.terms.push_back({m.w(i, li[rj]), c});
      m.add_implied_row(std::move(row));
    }
  }
}

/// Branching list for both models. x is fixed agent by agent in preference
/// order, 0 first; w then prefers 1 and b prefers 0, which completes any full x
/// assignment without backtracking. The total-count model first picks which
/// pairs may block, 1 first, in order of combined mutual rank.
inline void set_default_branching(const SfInstance& inst, IlpModel& m) {
  const int n = inst.size();
  std::vector<BranchRule> rules;
  if (m.objective() == IlpObjective::MinTotalBlocking) {
    std::vector<AgentPair> pairs;
    for (AgentId i = 0; i < n; ++i) {
      for (AgentId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    auto weight = [&](const AgentPair& p) { return inst.rank(p.first, p.second) + inst.rank(p.second, p.first); };
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) { return weight(a) < weight(b); });
    for (auto [i, j] : pairs) rules.push_back({m.b(i, j), true});
  }
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j : inst.list(i)) rules.push_back({m.x(i, j), false});
  }
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j : inst.list(i)) rules.push_back({m.w(i, j), true});
  }
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j : inst.list(i)) rules.push_back({m.b(i, j), false});
  }
  m.set_branching(std::move(rules));
}

}  // namespace detail

/// min r subject to the shared rows and sum_j b_ij <= r for every agent.
inline IlpModel build_midi_model(const SfInstance& inst, CoverageVariant variant = CoverageVariant::Corrected) {
  IlpModel m = detail::build_common(inst, IlpObjective::MinMaxBlocking, variant);
  const int n = inst.size();
  for (AgentId i = 0; i < n; ++i) {
    IlpRow row{"maxbp_" + std::to_string(i + 1), RowKind::MaxBlocking, {}, Sense::Le, 0};
    for (AgentId j : inst.list(i)) row.terms.push_back({m.b(i, j), 1});
    row.terms.push_back({m.r(), -1});
    m.add_row(std::move(row));
  }
  m.set_objective({{m.r(), 1}});
  detail::add_fullness_implications(inst, m);
  detail::set_default_branching(inst, m);
  return m;
}

/// min sum_{i != j} b_ij subject to the shared rows. The optimum counts each
/// blocking pair twice.
inline IlpModel build_madi_model(const SfInstance& inst, CoverageVariant variant = CoverageVariant::Corrected) {
  IlpModel m = detail::build_common(inst, IlpObjective::MinTotalBlocking, variant);
  std::vector<IlpTerm> obj;
  for (AgentId i = 0; i < inst.size(); ++i) {
    for (AgentId j : inst.list(i)) obj.push_back({m.b(i, j), 1});
  }
  m.set_objective(std::move(obj));
  detail::add_fullness_implications(inst, m);
  detail::set_default_branching(inst, m);
  return m;
}

// ---------------------------------------------------------------------------
// LP format
// ---------------------------------------------------------------------------

namespace detail {

inline void append_terms(std::string& out, const IlpModel& m, const std::vector<IlpTerm>& terms) {
  bool first = true;
  for (const auto& t : terms) {
    const long a = t.coef < 0 ? -t.coef : t.coef;
    if (first) {
      out += t.coef < 0 ? "-" : "";
    } else {
      out += t.coef < 0 ? " - " : " + ";
    }
    if (a != 1) out += std::to_string(a) + " ";
    out += m.variables()[t.var].name;
    first = false;
  }
  if (first) out += "0";
}

}  // namespace detail

/// CPLEX LP text. One line per constraint; the objective may wrap.
inline std::string export_model(const IlpModel& m) {
  std::string out;
  out += m.objective() == IlpObjective::MinMaxBlocking ? "\\ minimise the largest per-agent blocking count\n"
                                                       : "\\ minimise the total blocking count\n";
  out += "Minimize\n obj:";
  const auto& obj = m.objective_terms();
  for (std::size_t k = 0; k < obj.size(); ++k) {
    if (k > 0 && k % 10 == 0) out += "\n     ";
    out += k == 0 ? " " : " + ";
    if (obj[k].coef != 1) out += std::to_string(obj[k].coef) + " ";
    out += m.variables()[obj[k].var].name;
  }
  out += "\nSubject To\n";
  for (const auto& row : m.rows()) {
    out += " " + row.name + ": ";
    detail::append_terms(out, m, row.terms);
    out += row.sense == Sense::Le ? " <= " : row.sense == Sense::Ge ? " >= " : " = ";
    out += std::to_string(row.rhs) + "\n";
  }
  std::string binaries;
  std::string generals;
  std::string bounds;
  for (const auto& v : m.variables()) {
    if (v.type == VarType::Binary) {
      binaries += " " + v.name + "\n";
    } else {
      generals += " " + v.name + "\n";
      bounds += " " + std::to_string(v.lo) + " <= " + v.name + " <= " + std::to_string(v.hi) + "\n";
    }
  }
  if (!bounds.empty()) out += "Bounds\n" + bounds;
  out += "Binaries\n" + binaries;
  if (!generals.empty()) out += "Generals\n" + generals;
  out += "End\n";
  return out;
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

enum class BranchValueOrder { ZeroFirst, OneFirst };

struct SolveOptions {
  /// Maximum number of branching nodes; 0 means unlimited.
  std::uint64_t node_budget = 0;
  /// Value tried first for variables not covered by the model's branching list.
  BranchValueOrder value_order = BranchValueOrder::ZeroFirst;
  /// A proven lower bound on the optimum. Deepening starts here, and the
  /// incumbent search stops as soon as it reaches it.
  std::optional<long> lower_bound;
  /// Probe objective targets lower_bound, lower_bound + 1, ... with the target
  /// as a hard row; the first feasible target is optimal. When false, a single
  /// search tightens the incumbent bound instead.
  bool deepening = true;
  /// Use the model's branching list and implied rows. When false the solver
  /// branches on the lowest-index free variable and sees only the model rows.
  bool use_model_hints = true;
};

enum class SolveStatus { Optimal, Infeasible };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  long objective = 0;
  std::vector<long> values;
  std::uint64_t nodes = 0;
};

namespace detail {

/// Depth-first branch and bound with bound propagation on rows in the form
/// sum a_k v_k <= rhs. Branches on the first free variable of the branching
/// list, then on the lowest-index free variable. An extra row
/// "objective <= bound" carries either the probed target or the incumbent
/// bound into propagation.
class BranchAndBound {
 public:
  BranchAndBound(const IlpModel& m, const SolveOptions& opt) : opt_(opt) {
    if (opt.use_model_hints) rules_ = m.branching();
    const auto& vars = m.variables();
    nv_ = static_cast<int>(vars.size());
    lo_.resize(nv_);
    hi_.resize(nv_);
    for (int v = 0; v < nv_; ++v) {
      lo_[v] = vars[v].lo;
      hi_[v] = vars[v].hi;
    }
    auto add_row = [&](const IlpRow& row) {
      if (row.sense != Sense::Ge) add_le(row.terms, row.rhs, 1);
      if (row.sense != Sense::Le) add_le(row.terms, row.rhs, -1);
    };
    for (const auto& row : m.rows()) add_row(row);
    if (opt.use_model_hints) {
      for (const auto& row : m.implied_rows()) add_row(row);
    }
    obj_ = m.objective_terms();
    for (const auto& t : obj_) {
      if (t.coef < 0) throw ValidationError("solver expects nonnegative objective coefficients");
    }
    cutoff_row_ = static_cast<int>(rhs_.size());
    add_le(obj_, kNoCutoff, 1);

    // Column view.
    col_start_.assign(nv_ + 1, 0);
    for (const auto& t : terms_) ++col_start_[t.var + 1];
    for (int v = 0; v < nv_; ++v) col_start_[v + 1] += col_start_[v];
    col_.resize(terms_.size());
    std::vector<std::size_t> fill(col_start_.begin(), col_start_.end() - 1);
    for (int r = 0; r < static_cast<int>(rhs_.size()); ++r) {
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
        col_[fill[terms_[k].var]++] = {r, terms_[k].coef};
      }
    }
    // Largest single-term swing per row; a row whose slack is at least this
    // cannot tighten anything.
    max_swing_.assign(rhs_.size(), 0);
    for (int r = 0; r < static_cast<int>(rhs_.size()); ++r) {
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
        const auto& t = terms_[k];
        const long a = t.coef < 0 ? -t.coef : t.coef;
        max_swing_[r] = std::max(max_swing_[r], a * (hi_[t.var] - lo_[t.var]));
      }
    }
    min_act_.assign(rhs_.size(), 0);
    for (int r = 0; r < static_cast<int>(rhs_.size()); ++r) min_act_[r] = compute_min_act(r);
    in_queue_.assign(rhs_.size(), 0);
  }

  SolveResult solve() {
    SolveResult res;
    if (opt_.deepening) {
      // Probe targets lo, lo+1, ...: the first feasible target is the optimum.
      long target = opt_.lower_bound.value_or(0);
      const long top = max_objective();
      for (; target <= top && !best_; ++target) {
        rhs_[cutoff_row_] = target;
        stop_at_ = target;
        for (int r = 0; r < static_cast<int>(rhs_.size()); ++r) enqueue(r);
        if (propagate()) search(0);
        queue_.clear();
        std::fill(in_queue_.begin(), in_queue_.end(), 0);
        undo_to(0);
      }
    } else {
      for (int r = 0; r < static_cast<int>(rhs_.size()); ++r) enqueue(r);
      if (propagate()) search(0);
    }
    res.nodes = nodes_;
    if (best_) {
      res.status = SolveStatus::Optimal;
      res.objective = best_obj_;
      res.values = *best_;
    }
    return res;
  }

 private:
  static constexpr long kNoCutoff = std::numeric_limits<long>::max() / 4;

  struct Col {
    int row;
    long coef;
  };
  struct TrailEntry {
    int var;
    long lo;
    long hi;
  };

  void add_le(const std::vector<IlpTerm>& terms, long rhs, long sign) {
    for (const auto& t : terms) terms_.push_back({t.var, sign * t.coef});
    rhs_.push_back(sign * rhs);
    row_start_.push_back(terms_.size());
  }

  long compute_min_act(int r) const {
    long s = 0;
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      const auto& t = terms_[k];
      s += t.coef > 0 ? t.coef * lo_[t.var] : t.coef * hi_[t.var];
    }
    return s;
  }

  void enqueue(int r) {
    if (!in_queue_[r]) {
      in_queue_[r] = 1;
      queue_.push_back(r);
    }
  }

  /// Tightens v to [lo, hi] (intersected with its current domain).
  bool tighten(int v, long lo, long hi) {
    lo = std::max(lo, lo_[v]);
    hi = std::min(hi, hi_[v]);
    if (lo > hi) return false;
    if (lo == lo_[v] && hi == hi_[v]) return true;
    trail_.push_back({v, lo_[v], hi_[v]});
    for (std::size_t k = col_start_[v]; k < col_start_[v + 1]; ++k) {
      const auto& c = col_[k];
      min_act_[c.row] += c.coef > 0 ? c.coef * (lo - lo_[v]) : c.coef * (hi - hi_[v]);
      enqueue(c.row);
    }
    lo_[v] = lo;
    hi_[v] = hi;
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const TrailEntry e = trail_.back();
      trail_.pop_back();
      const int v = e.var;
      for (std::size_t k = col_start_[v]; k < col_start_[v + 1]; ++k) {
        const auto& c = col_[k];
        min_act_[c.row] += c.coef > 0 ? c.coef * (e.lo - lo_[v]) : c.coef * (e.hi - hi_[v]);
      }
      lo_[v] = e.lo;
      hi_[v] = e.hi;
    }
  }

  bool propagate() {
    bool ok = true;
    while (!queue_.empty()) {
      const int r = queue_.back();
      queue_.pop_back();
      in_queue_[r] = 0;
      if (!ok) continue;
      const long slack = rhs_[r] - min_act_[r];
      if (slack < 0) {
        ok = false;
        continue;
      }
      if (slack >= max_swing_[r]) continue;
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1] && ok; ++k) {
        const auto& t = terms_[k];
        const int v = t.var;
        if (t.coef > 0) {
          if (t.coef * (hi_[v] - lo_[v]) > slack) ok = tighten(v, lo_[v], lo_[v] + slack / t.coef);
        } else if (t.coef < 0) {
          if (-t.coef * (hi_[v] - lo_[v]) > slack) ok = tighten(v, hi_[v] - slack / -t.coef, hi_[v]);
        }
      }
    }
    return ok;
  }

  void set_cutoff(long rhs) {
    rhs_[cutoff_row_] = rhs;
    enqueue(cutoff_row_);
  }

  bool done() const {
    if (!best_) return false;
    if (stop_at_ && best_obj_ <= *stop_at_) return true;
    return opt_.lower_bound && best_obj_ <= *opt_.lower_bound;
  }

  long max_objective() const {
    long s = 0;
    for (const auto& t : obj_) s += t.coef * hi_[t.var];
    return s;
  }

  /// Rules before `from` are fixed in this subtree.
  void search(std::size_t from) {
    if (done()) return;
    int v = -1;
    bool one_first = opt_.value_order == BranchValueOrder::OneFirst;
    while (from < rules_.size() && lo_[rules_[from].var] == hi_[rules_[from].var]) ++from;
    if (from < rules_.size()) {
      v = rules_[from].var;
      one_first = rules_[from].one_first;
    } else {
      v = 0;
      while (v < nv_ && lo_[v] == hi_[v]) ++v;
    }
    if (v == nv_) {
      long obj = 0;
      for (const auto& t : obj_) obj += t.coef * lo_[t.var];
      if (!best_ || obj < best_obj_) {
        best_obj_ = obj;
        best_ = lo_;
        set_cutoff(obj - 1);
      }
      return;
    }
    ++nodes_;
    if (opt_.node_budget != 0 && nodes_ > opt_.node_budget) throw BudgetExceeded("branch and bound", nodes_);

    const long lo = lo_[v];
    const long hi = hi_[v];
    const bool up = one_first && hi - lo == 1;
    for (long step = 0; step <= hi - lo && !done(); ++step) {
      const long val = up ? hi - step : lo + step;
      const std::size_t mark = trail_.size();
      enqueue(cutoff_row_);
      if (tighten(v, val, val) && propagate()) search(from);
      queue_.clear();
      std::fill(in_queue_.begin(), in_queue_.end(), 0);
      undo_to(mark);
    }
  }

  SolveOptions opt_;
  std::vector<BranchRule> rules_;
  int nv_ = 0;
  std::vector<long> lo_, hi_;
  std::vector<IlpTerm> terms_;
  std::vector<std::size_t> row_start_{0};  // row r spans [row_start_[r], row_start_[r+1])
  std::vector<long> rhs_;
  std::vector<long> min_act_;
  std::vector<long> max_swing_;
  std::vector<std::size_t> col_start_;
  std::vector<Col> col_;
  std::vector<IlpTerm> obj_;
  int cutoff_row_ = 0;
  std::vector<int> queue_;
  std::vector<char> in_queue_;
  std::vector<TrailEntry> trail_;
  std::optional<std::vector<long>> best_;
  long best_obj_ = 0;
  std::optional<long> stop_at_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline SolveResult solve_model(const IlpModel& m, const SolveOptions& opt = {}) {
  return detail::BranchAndBound(m, opt).solve();
}

/// Pairs {i, j} with x_ij = 1.
inline Matching extract_matching(const std::vector<long>& values, const IlpModel& m) {
  const int n = m.agent_count();
  if (values.size() != m.variables().size()) throw ValidationError("assignment has the wrong length");
  Matching out(n);
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = i + 1; j < n; ++j) {
      const long a = values[m.x(i, j)];
      const long b = values[m.x(j, i)];
      if (a != b) throw InternalError("assignment has asymmetric x for agents " + std::to_string(i + 1) + " and " + std::to_string(j + 1));
      if (a == 1) out.add(i, j);
    }
  }
  return out;
}

}  // namespace nfsm
