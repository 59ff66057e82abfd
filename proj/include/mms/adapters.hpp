#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "mms/core.hpp"
#include "mms/driver.hpp"
#include "mms/interval_scheduling.hpp"
#include "mms/set_system.hpp"

namespace mms {

struct CompletionStep {
  Item item = 0;
  Agent agent = 0;
};

struct ConstraintReport {
  SolveResult result;
  std::vector<bool> feasible;                                       // per agent
  std::vector<CompletionStep> completion;                           // conflicts only
  std::vector<std::optional<std::vector<ScheduledJob>>> schedules;  // intervals only
};

namespace detail {

inline void require_kind(const Instance& inst, std::size_t index, const char* what) {
  for (const auto& s : inst.systems)
    if (s->index() != index)
      throw MmsError(ErrorCode::UnsupportedSystem, std::string("this adapter needs ") + what + " systems");
}

inline std::vector<bool> feasibility(const Instance& inst, const std::vector<Bundle>& bundles) {
  std::vector<bool> out;
  for (Agent i = 0; i < inst.n; ++i) out.push_back(is_independent(inst.system_of(i), bundles[i]));
  return out;
}

}  // namespace detail

// Budget constraints. A shared budget runs the 2/5 solver; per-agent budgets
// over common sizes are nested by budget and run the entitled solver with
// agents ordered from smallest to largest budget.
inline ConstraintReport solve_budget_adapter(const Instance& inst, const SolveOptions& opt = {}) {
  detail::require_kind(inst, 2, "budget");
  ConstraintReport rep;
  if (inst.layout == Layout::Shared) {
    rep.result = solve_two_fifths(inst, opt);
  } else {
    const auto& sizes = std::get<BudgetSystem>(inst.system_of(0)).sizes;
    for (Agent i = 0; i < inst.n; ++i)
      if (std::get<BudgetSystem>(inst.system_of(i)).sizes != sizes)
        throw MmsError(ErrorCode::UnsupportedSystem, "per-agent budgets must share item sizes");
    Instance entitled = inst;
    entitled.layout = Layout::Entitled;
    entitled.entitled_order.resize(inst.n);
    std::iota(entitled.entitled_order.begin(), entitled.entitled_order.end(), Agent{0});
    std::stable_sort(entitled.entitled_order.begin(), entitled.entitled_order.end(), [&](Agent a, Agent b) {
      return std::get<BudgetSystem>(inst.system_of(a)).budget < std::get<BudgetSystem>(inst.system_of(b)).budget;
    });
    rep.result = solve_entitled(entitled, opt);
  }
  rep.feasible = detail::feasibility(inst, rep.result.allocation.bundles);
  return rep;
}

// Conflicting items: existence-mode allocation followed by a greedy
// completion that hands each leftover item, in ascending order, to the
// lowest-index agent holding none of its neighbours.
inline ConstraintReport solve_conflicts_adapter(const Instance& inst, const SolveOptions& opt = {}) {
  detail::require_kind(inst, 3, "conflict-graph");
  if (inst.layout != Layout::Shared) throw MmsError(ErrorCode::UnsupportedSystem, "conflict graph must be shared");
  const auto& g = std::get<ConflictGraph>(inst.system_of(0));
  std::size_t max_degree = 0;
  for (const auto& nb : g.adjacency) max_degree = std::max(max_degree, nb.size());
  if (inst.n <= max_degree)
    throw MmsError(ErrorCode::DegreeTooHigh, std::to_string(inst.n) + " agents but maximum degree " +
                                                 std::to_string(max_degree));

  ConstraintReport rep;
  rep.result = solve_existence(inst, opt);
  auto& bundles = rep.result.allocation.bundles;
  Bundle taken = allocated_items(rep.result.allocation);
  for (Item j = 0; j < inst.m; ++j) {
    if (taken.contains(j)) continue;
    for (Agent i = 0; i < inst.n; ++i) {
      bool clash = std::any_of(g.adjacency[j].begin(), g.adjacency[j].end(),
                               [&](Item u) { return bundles[i].contains(u); });
      if (clash) continue;
      bundles[i] = bundles[i].with(j);
      rep.completion.push_back({j, i});
      break;
    }
  }
  rep.result.allocation.complete = true;
  rep.feasible = detail::feasibility(inst, bundles);
  return rep;
}

// Interval scheduling: the alpha solver at error 1/2 with the local-ratio
// oracle, plus a schedule witness for every bundle.
inline ConstraintReport solve_intervals_adapter(const Instance& inst, const SolveOptions& opt = {}) {
  detail::require_kind(inst, 4, "interval");
  ConstraintReport rep;
  rep.result = solve_alpha(inst, Rational(1, 2), opt);
  for (Agent i = 0; i < inst.n; ++i) {
    const auto& jobs = std::get<IntervalJobs>(inst.system_of(i)).jobs;
    auto schedule = schedule_subset(jobs, rep.result.allocation.bundles[i], kDefaultScheduleGate);
    rep.feasible.push_back(schedule.has_value());
    rep.schedules.push_back(std::move(schedule));
  }
  return rep;
}

}  // namespace mms
