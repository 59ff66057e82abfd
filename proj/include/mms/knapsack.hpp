#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mms/core.hpp"

namespace mms {

inline constexpr std::size_t kKnapsackGate = 25;

namespace detail {

// 0/1 knapsack over integer sizes by capacity DP; `keep` records decisions
// so the chosen set can be rebuilt.
inline Bundle knapsack_capacity_dp(const std::vector<Item>& items, const std::vector<std::int64_t>& size,
                                   const std::vector<Rational>& values, std::int64_t cap) {
  const std::size_t k = items.size();
  const std::size_t width = static_cast<std::size_t>(cap) + 1;
  std::vector<Rational> best(width);
  std::vector<std::vector<bool>> keep(k, std::vector<bool>(width, false));
  for (std::size_t t = 0; t < k; ++t) {
    const std::int64_t s = size[t];
    const Rational& v = values[items[t]];
    for (std::int64_t c = cap; c >= s; --c) {
      Rational cand = best[static_cast<std::size_t>(c - s)] + v;
      if (cand > best[static_cast<std::size_t>(c)]) {
        best[static_cast<std::size_t>(c)] = std::move(cand);
        keep[t][static_cast<std::size_t>(c)] = true;
      }
    }
  }
  std::vector<Item> chosen;
  std::int64_t c = cap;
  for (std::size_t t = k; t-- > 0;) {
    if (keep[t][static_cast<std::size_t>(c)]) {
      chosen.push_back(items[t]);
      c -= size[t];
    }
  }
  return Bundle(std::move(chosen));
}

inline Bundle knapsack_branch_and_bound(std::vector<Item> items, const std::vector<Rational>& sizes,
                                        const std::vector<Rational>& values, const Rational& budget) {
  // Zero-size items are free; the rest are explored by value density.
  std::vector<Item> free_items, rest;
  for (Item j : items) (sizes[j].sign() == 0 ? free_items : rest).push_back(j);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](Item a, Item b) { return values[a] * sizes[b] > values[b] * sizes[a]; });

  std::vector<char> take(rest.size(), 0), best_take(rest.size(), 0);
  Rational best_value = -Rational(1);

  auto bound = [&](std::size_t from, Rational room, Rational acc) {
    for (std::size_t t = from; t < rest.size(); ++t) {
      Item j = rest[t];
      if (sizes[j] <= room) {
        room -= sizes[j];
        acc += values[j];
      } else {
        acc += values[j] * room / sizes[j];
        break;
      }
    }
    return acc;
  };

  auto dfs = [&](auto&& self, std::size_t t, const Rational& room, const Rational& acc) -> void {
    if (acc > best_value) {
      best_value = acc;
      std::copy(take.begin(), take.end(), best_take.begin());
      std::fill(best_take.begin() + static_cast<std::ptrdiff_t>(t), best_take.end(), 0);
    }
    if (t == rest.size() || bound(t, room, acc) <= best_value) return;
    Item j = rest[t];
    if (sizes[j] <= room) {
      take[t] = 1;
      self(self, t + 1, room - sizes[j], acc + values[j]);
      take[t] = 0;
    }
    self(self, t + 1, room, acc);
  };
  dfs(dfs, 0, budget, Rational(0));

  for (std::size_t t = 0; t < rest.size(); ++t)
    if (best_take[t]) free_items.push_back(rest[t]);
  return Bundle(std::move(free_items));
}

}  // namespace detail

// Maximum-value subset of `b` whose total size fits `budget`. Items of value
// zero and items larger than the budget are ignored. Integral instances with
// a modest size total go through the capacity DP; everything else uses
// branch and bound, limited to `gate` candidate items.
inline Bundle knapsack_exact(const std::vector<Rational>& sizes, const std::vector<Rational>& values,
                             const Rational& budget, const Bundle& b, std::size_t gate = kKnapsackGate) {
  std::vector<Item> items;
  for (Item j : b)
    if (values[j].sign() > 0 && sizes[j] <= budget) items.push_back(j);
  if (items.empty()) return {};

  Rational total;
  bool integral = budget.is_integer();
  for (Item j : items) {
    total += sizes[j];
    integral = integral && sizes[j].is_integer();
  }
  if (total <= budget) return Bundle(items);

  if (integral && total <= Rational(1000000)) {
    std::int64_t cap = std::min(budget, total).floor().get_si();
    if (static_cast<double>(cap) * static_cast<double>(items.size()) <= 5e7) {
      std::vector<std::int64_t> size(items.size());
      for (std::size_t t = 0; t < items.size(); ++t) size[t] = sizes[items[t]].floor().get_si();
      return detail::knapsack_capacity_dp(items, size, values, cap);
    }
  }
  if (items.size() > gate)
    throw MmsError(ErrorCode::ExactnessGateExceeded,
                   "knapsack search over " + std::to_string(items.size()) + " items exceeds gate " + std::to_string(gate));
  return detail::knapsack_branch_and_bound(std::move(items), sizes, values, budget);
}

// Value-scaling FPTAS: the returned subset fits the budget and is worth at
// least (1 - eps) times the optimum. Polynomial in |b| and 1/eps.
inline Bundle knapsack_fptas(const std::vector<Rational>& sizes, const std::vector<Rational>& values,
                             const Rational& budget, const Bundle& b, const Rational& eps) {
  std::vector<Item> items;
  for (Item j : b)
    if (values[j].sign() > 0 && sizes[j] <= budget) items.push_back(j);
  if (items.empty()) return {};
  Rational total;
  for (Item j : items) total += sizes[j];
  if (total <= budget) return Bundle(items);
  if (eps.sign() <= 0) return knapsack_exact(sizes, values, budget, b);

  const std::size_t k = items.size();
  Rational vmax;
  for (Item j : items) vmax = max(vmax, values[j]);
  const Rational scale = eps * vmax / Rational(static_cast<long>(k));

  std::vector<std::size_t> scaled(k);
  std::size_t vsum = 0;
  for (std::size_t t = 0; t < k; ++t) {
    scaled[t] = static_cast<std::size_t>((values[items[t]] / scale).floor().get_ui());
    vsum += scaled[t];
  }

  // least[v] = smallest total size reaching scaled value exactly v.
  std::vector<std::optional<Rational>> least(vsum + 1);
  least[0] = Rational(0);
  std::vector<std::vector<bool>> keep(k, std::vector<bool>(vsum + 1, false));
  for (std::size_t t = 0; t < k; ++t) {
    const Rational& s = sizes[items[t]];
    for (std::size_t v = vsum; v >= scaled[t] && v > 0; --v) {
      const auto& from = least[v - scaled[t]];
      if (!from || (scaled[t] == 0)) continue;
      Rational cand = *from + s;
      if (cand <= budget && (!least[v] || cand < *least[v])) {
        least[v] = std::move(cand);
        keep[t][v] = true;
      }
    }
  }
  std::size_t v = vsum;
  while (v > 0 && !least[v]) --v;
  std::vector<char> chosen(k, 0);
  for (std::size_t t = k; t-- > 0;) {
    if (v > 0 && keep[t][v]) {
      chosen[t] = 1;
      v -= scaled[t];
    }
  }
  // Items that still fit only add value.
  Rational used;
  for (std::size_t t = 0; t < k; ++t)
    if (chosen[t]) used += sizes[items[t]];
  for (std::size_t t = 0; t < k; ++t) {
    if (!chosen[t] && used + sizes[items[t]] <= budget) {
      chosen[t] = 1;
      used += sizes[items[t]];
    }
  }
  std::vector<Item> out;
  for (std::size_t t = 0; t < k; ++t)
    if (chosen[t]) out.push_back(items[t]);
  return Bundle(std::move(out));
}

}  // namespace mms
