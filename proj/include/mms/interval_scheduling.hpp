#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "mms/core.hpp"

namespace mms {

struct ScheduledJob {
  Item item = 0;
  std::int64_t start = 0;
  friend bool operator==(const ScheduledJob&, const ScheduledJob&) = default;
};

inline constexpr std::int64_t kUnschedulable = std::numeric_limits<std::int64_t>::max();

// Earliest start of `job` at or after period `free_from`, or kUnschedulable.
inline std::int64_t earliest_start(const Job& job, std::int64_t free_from) {
  std::int64_t s = std::max(free_from, job.release);
  return s + job.processing - 1 <= job.deadline ? s : kUnschedulable;
}

// Tries both orders of the two jobs on the single machine.
inline bool pair_schedulable(const Job& a, const Job& b) {
  auto in_order = [](const Job& x, const Job& y) {
    std::int64_t sx = earliest_start(x, std::numeric_limits<std::int64_t>::min());
    if (sx == kUnschedulable) return false;
    return earliest_start(y, sx + x.processing) != kUnschedulable;
  };
  return in_order(a, b) || in_order(b, a);
}

// next_free[S] over subsets S of `items` (bit t = items[t]): the earliest
// period at which the machine is free after scheduling all of S, or
// kUnschedulable. Keeping the earliest completion per prefix set is exact
// because later jobs only depend on when the machine frees up.
inline std::vector<std::int64_t> schedule_frontier(const std::vector<Job>& jobs, const std::vector<Item>& items) {
  const std::size_t k = items.size();
  std::vector<std::int64_t> next(std::size_t{1} << k, kUnschedulable);
  next[0] = std::numeric_limits<std::int64_t>::min();
  for (std::uint64_t s = 1; s < next.size(); ++s) {
    std::int64_t best = kUnschedulable;
    for (std::size_t t = 0; t < k; ++t) {
      if (!(s >> t & 1U)) continue;
      std::int64_t before = next[s & ~(std::uint64_t{1} << t)];
      if (before == kUnschedulable) continue;
      const Job& job = jobs[items[t]];
      std::int64_t start = earliest_start(job, before);
      if (start != kUnschedulable) best = std::min(best, start + job.processing);
    }
    next[s] = best;
  }
  return next;
}

// Feasible schedule for every job in `b`, or nullopt. Exponential in |b|.
inline std::optional<std::vector<ScheduledJob>> schedule_subset(const std::vector<Job>& jobs, const Bundle& b,
                                                                std::size_t gate) {
  if (b.size() > gate)
    throw MmsError(ErrorCode::ExactnessGateExceeded,
                   "schedule search over " + std::to_string(b.size()) + " jobs exceeds gate " + std::to_string(gate));
  const std::vector<Item>& items = b.items();
  std::vector<std::int64_t> next = schedule_frontier(jobs, items);
  std::uint64_t s = next.size() - 1;
  if (next[s] == kUnschedulable) return std::nullopt;

  std::vector<ScheduledJob> reversed;
  while (s != 0) {
    for (std::size_t t = 0; t < items.size(); ++t) {
      if (!(s >> t & 1U)) continue;
      std::uint64_t rest = s & ~(std::uint64_t{1} << t);
      if (next[rest] == kUnschedulable) continue;
      const Job& job = jobs[items[t]];
      std::int64_t start = earliest_start(job, next[rest]);
      if (start != kUnschedulable && start + job.processing == next[s]) {
        reversed.push_back({items[t], start});
        s = rest;
        break;
      }
    }
  }
  std::vector<ScheduledJob> schedule(reversed.rbegin(), reversed.rend());
  std::sort(schedule.begin(), schedule.end(), [](const ScheduledJob& x, const ScheduledJob& y) { return x.item < y.item; });
  return schedule;
}

inline bool schedule_is_valid(const std::vector<Job>& jobs, std::vector<ScheduledJob> schedule) {
  std::sort(schedule.begin(), schedule.end(),
            [](const ScheduledJob& x, const ScheduledJob& y) { return x.start < y.start; });
  std::int64_t free_from = std::numeric_limits<std::int64_t>::min();
  for (const ScheduledJob& sj : schedule) {
    if (sj.item >= jobs.size()) return false;
    const Job& job = jobs[sj.item];
    if (sj.start < job.release || sj.start + job.processing - 1 > job.deadline) return false;
    if (sj.start < free_from) return false;
    free_from = sj.start + job.processing;
  }
  return true;
}

// Local-ratio 1/2-approximation for weighted job interval scheduling on one
// machine. Each job expands to one interval per admissible start period, so
// the running time is pseudo-polynomial in the window lengths.
inline std::vector<ScheduledJob> local_ratio_schedule(const std::vector<Job>& jobs, const std::vector<Rational>& values,
                                                      const Bundle& b) {
  struct Candidate {
    Item job;
    std::int64_t start, end;
    Rational weight;
  };
  std::vector<Candidate> cands;
  for (Item j : b) {
    if (values[j].sign() <= 0) continue;
    const Job& job = jobs[j];
    for (std::int64_t s = job.release; s + job.processing - 1 <= job.deadline; ++s)
      cands.push_back({j, s, s + job.processing - 1, values[j]});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (x.end != y.end) return x.end < y.end;
    if (x.job != y.job) return x.job < y.job;
    return x.start < y.start;
  });
  auto overlaps = [](const Candidate& x, const Candidate& y) { return x.start <= y.end && y.start <= x.end; };

  std::vector<std::size_t> stack;
  for (;;) {
    std::size_t pick = cands.size();
    for (std::size_t c = 0; c < cands.size(); ++c)
      if (cands[c].weight.sign() > 0) { pick = c; break; }
    if (pick == cands.size()) break;
    const Rational delta = cands[pick].weight;
    for (Candidate& other : cands)
      if (other.job == cands[pick].job || overlaps(other, cands[pick])) other.weight -= delta;
    stack.push_back(pick);
  }

  std::vector<ScheduledJob> chosen;
  std::vector<std::size_t> taken;
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const Candidate& c = cands[*it];
    bool clash = std::any_of(taken.begin(), taken.end(), [&](std::size_t t) {
      return cands[t].job == c.job || overlaps(cands[t], c);
    });
    if (clash) continue;
    taken.push_back(*it);
    chosen.push_back({c.job, c.start});
  }
  std::sort(chosen.begin(), chosen.end(), [](const ScheduledJob& x, const ScheduledJob& y) { return x.item < y.item; });
  return chosen;
}

}  // namespace mms
