#pragma once

#include <cstdint>
#include <vector>

#include "mms/core.hpp"
#include "mms/interval_scheduling.hpp"

namespace mms {

inline constexpr std::size_t kDefaultScheduleGate = 20;

// Membership test S in F. Interval feasibility is exponential in |S| and is
// gated; every other variant is polynomial.
inline bool is_independent(const SetSystem& system, const Bundle& s, std::size_t schedule_gate = kDefaultScheduleGate) {
  struct Visitor {
    const Bundle& s;
    std::size_t gate;
    bool operator()(const FreeSystem&) const { return true; }
    bool operator()(const ExplicitFamily& f) const {
      if (s.empty()) return true;
      for (const Bundle& t : f.maximal_sets)
        if (s.subset_of(t)) return true;
      return false;
    }
    bool operator()(const BudgetSystem& b) const {
      Rational total;
      for (Item j : s) total += b.sizes[j];
      return total <= b.budget;
    }
    bool operator()(const ConflictGraph& g) const {
      for (Item u : s)
        for (Item v : g.adjacency[u])
          if (v > u && s.contains(v)) return false;
      return true;
    }
    bool operator()(const IntervalJobs& ij) const {
      if (s.size() <= 1) return true;
      if (s.size() == 2) return pair_schedulable(ij.jobs[s[0]], ij.jobs[s[1]]);
      return schedule_subset(ij.jobs, s, gate).has_value();
    }
  };
  return std::visit(Visitor{s, schedule_gate}, system);
}

// indep[mask] for every subset of `items` (bit t stands for items[t]).
inline std::vector<char> independence_table(const SetSystem& system, const std::vector<Item>& items) {
  const std::size_t k = items.size();
  if (k > 26) throw MmsError(ErrorCode::BruteForceGateExceeded, "independence table over more than 26 items");
  const std::uint64_t full = std::uint64_t{1} << k;
  std::vector<char> indep(full, 0);

  auto local_mask = [&](const Bundle& b) {
    std::uint64_t mask = 0;
    for (std::size_t t = 0; t < k; ++t)
      if (b.contains(items[t])) mask |= std::uint64_t{1} << t;
    return mask;
  };

  switch (system.index()) {
    case 0:
      std::fill(indep.begin(), indep.end(), 1);
      break;
    case 1: {
      indep[0] = 1;
      for (const Bundle& t : std::get<ExplicitFamily>(system).maximal_sets) indep[local_mask(t)] = 1;
      // Downward closure: a set is independent iff some superset one bit
      // larger is, processed from large masks to small.
      for (std::uint64_t s = full; s-- > 0;) {
        if (indep[s]) continue;
        for (std::size_t t = 0; t < k; ++t) {
          std::uint64_t up = s | (std::uint64_t{1} << t);
          if (up != s && indep[up]) { indep[s] = 1; break; }
        }
      }
      break;
    }
    case 2: {
      const auto& b = std::get<BudgetSystem>(system);
      std::vector<Rational> total(full);
      indep[0] = 1;
      for (std::uint64_t s = 1; s < full; ++s) {
        std::size_t low = static_cast<std::size_t>(__builtin_ctzll(s));
        total[s] = total[s & (s - 1)] + b.sizes[items[low]];
        indep[s] = total[s] <= b.budget;
      }
      break;
    }
    case 3: {
      const auto& g = std::get<ConflictGraph>(system);
      std::vector<std::uint64_t> nbr(k, 0);
      for (std::size_t t = 0; t < k; ++t)
        for (std::size_t u = 0; u < k; ++u)
          if (std::binary_search(g.adjacency[items[t]].begin(), g.adjacency[items[t]].end(), items[u]))
            nbr[t] |= std::uint64_t{1} << u;
      indep[0] = 1;
      for (std::uint64_t s = 1; s < full; ++s) {
        std::size_t low = static_cast<std::size_t>(__builtin_ctzll(s));
        std::uint64_t rest = s & (s - 1);
        indep[s] = indep[rest] && !(nbr[low] & rest);
      }
      break;
    }
    default: {
      std::vector<std::int64_t> next = schedule_frontier(std::get<IntervalJobs>(system).jobs, items);
      for (std::uint64_t s = 0; s < full; ++s) indep[s] = next[s] != kUnschedulable;
      break;
    }
  }
  return indep;
}

// True iff every set independent in `inner` is independent in `outer`.
inline bool families_nested(const SetSystem& inner, const SetSystem& outer, std::size_t m) {
  if (std::holds_alternative<FreeSystem>(outer)) return true;
  if (std::holds_alternative<ExplicitFamily>(inner)) {
    for (const Bundle& s : std::get<ExplicitFamily>(inner).maximal_sets)
      if (!is_independent(outer, s, m)) return false;
    return true;
  }
  if (auto* a = std::get_if<BudgetSystem>(&inner)) {
    if (auto* b = std::get_if<BudgetSystem>(&outer); b && a->sizes == b->sizes) return a->budget <= b->budget;
  }
  if (auto* a = std::get_if<ConflictGraph>(&inner)) {
    if (auto* b = std::get_if<ConflictGraph>(&outer))
      return std::includes(a->edges.begin(), a->edges.end(), b->edges.begin(), b->edges.end());
  }
  if (inner == outer) return true;
  if (m > 20)
    throw MmsError(ErrorCode::NonNestedEntitledFamilies,
                   "cannot decide nesting between '" + std::string(kind_name(inner)) + "' and '" +
                       std::string(kind_name(outer)) + "' families over more than 20 items");
  std::vector<Item> all(m);
  for (std::size_t j = 0; j < m; ++j) all[j] = j;
  std::vector<char> in = independence_table(inner, all), out = independence_table(outer, all);
  for (std::size_t s = 0; s < in.size(); ++s)
    if (in[s] && !out[s]) return false;
  return true;
}

}  // namespace mms
