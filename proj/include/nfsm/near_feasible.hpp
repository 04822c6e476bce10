#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "nfsm/errors.hpp"
#include "nfsm/gsp.hpp"
#include "nfsm/instance.hpp"

namespace nfsm {

enum class RepairMode { Alternate, Increase, Decrease };

inline RepairMode parse_repair_mode(std::string_view s) {
  if (s == "alt" || s == "alternate") return RepairMode::Alternate;
  if (s == "plus" || s == "increase") return RepairMode::Increase;
  if (s == "minus" || s == "decrease") return RepairMode::Decrease;
  throw ValidationError("unknown repair mode '" + std::string(s) + "' (expected plus, minus or alt)");
}

struct NearFeasibleResult {
  CapacityDelta delta;
  Matching matching;
  std::vector<AgentId> modified;  // one agent per odd cycle, in processing order
};

/// Picks the agent whose capacity changes: returns an index into the cycle.
using CycleAgentSelector = std::function<std::size_t(const std::vector<AgentId>& cycle)>;

/// Default selector: the first agent of the canonical cycle, i.e. its smallest id.
inline std::size_t select_first(const std::vector<AgentId>&) { return 0; }

/// Turns a partition into a capacity change of at most one per agent and a
/// matching that is stable under the changed capacities.
///
/// Transpositions become matches and even cycles split into consecutive pairs.
/// Each odd cycle longer than 2 is rotated so the selected agent s comes first;
/// increasing pairs it with both cycle neighbours (and pairs the rest two by two),
/// decreasing leaves s out of the cycle's matches. Alternate mode switches between
/// the two, starting with an increase, in canonical cycle order.
inline NearFeasibleResult near_feasible(const SfInstance& inst, const Gsp& pi, RepairMode mode,
                                        const CycleAgentSelector& select = select_first) {
  if (auto rep = verify_gsp(pi, inst); !rep.ok()) {
    throw ValidationError("not a generalised stable partition of the instance:\n" + rep.summary());
  }
  const DeltaMode dm = mode == RepairMode::Increase   ? DeltaMode::IncreaseOnly
                       : mode == RepairMode::Decrease ? DeltaMode::DecreaseOnly
                                                      : DeltaMode::Any;
  NearFeasibleResult res{CapacityDelta(inst.size(), dm), Matching(inst.size()), {}};
  auto add = [&](AgentId a, AgentId b) {
    if (!res.matching.add(a, b)) throw InternalError("partition produced the same match twice");
  };

  int odd_seen = 0;
  for (const auto& cycle : pi.cycles()) {
    const std::size_t m = cycle.size();
    if (m == 2) {
      add(cycle[0], cycle[1]);
    } else if (m > 2 && m % 2 == 0) {
      for (std::size_t k = 0; k < m; k += 2) add(cycle[k], cycle[k + 1]);
    } else if (m > 2) {
      const std::size_t s = select(cycle);
      if (s >= m) throw ValidationError("cycle agent selector returned an index outside the cycle");
      std::vector<AgentId> a(m);
      for (std::size_t k = 0; k < m; ++k) a[k] = cycle[(s + k) % m];

      const bool increase =
          mode == RepairMode::Increase || (mode == RepairMode::Alternate && odd_seen % 2 == 0);
      if (increase) {
        for (std::size_t k = 0; k + 1 < m; k += 2) add(a[k], a[k + 1]);
        add(a[m - 1], a[0]);
        res.delta.set(a[0], +1);
      } else {
        for (std::size_t k = 1; k + 1 < m; k += 2) add(a[k], a[k + 1]);
        res.delta.set(a[0], -1);
      }
      res.modified.push_back(a[0]);
      ++odd_seen;
    }
  }
  return res;
}

/// Computes a reduced partition and repairs it; the delta is zero iff inst is solvable.
inline NearFeasibleResult solve_or_repair(const SfInstance& inst, RepairMode mode,
                                          const GspSearchOptions& opt = {}) {
  return near_feasible(inst, find_reduced_gsp(inst, opt), mode);
}

}  // namespace nfsm
