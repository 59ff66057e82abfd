#pragma once

#include <cstdint>
#include <vector>

#include "mms/core.hpp"

namespace mms {

inline constexpr std::size_t kIndependentSetGate = 30;

namespace detail {

template <typename W>
struct MwisSearch {
  std::size_t k;
  std::vector<std::uint64_t> nbr;
  std::vector<W> w;
  W best{};
  std::uint64_t best_set = 0;

  W total(std::uint64_t s) const {
    W sum{};
    for (; s; s &= s - 1) sum += w[static_cast<std::size_t>(__builtin_ctzll(s))];
    return sum;
  }

  void run(std::uint64_t live, std::uint64_t taken, const W& acc) {
    if (acc + total(live) <= best) return;
    // Pick the live vertex with most live neighbours; isolated vertices are
    // all taken at once.
    std::size_t pick = k, degree = 0;
    for (std::uint64_t s = live; s; s &= s - 1) {
      auto v = static_cast<std::size_t>(__builtin_ctzll(s));
      auto d = static_cast<std::size_t>(__builtin_popcountll(nbr[v] & live));
      if (pick == k || d > degree) {
        pick = v;
        degree = d;
      }
    }
    if (pick == k || degree == 0) {
      W value = acc + total(live);
      if (value > best) {
        best = value;
        best_set = taken | live;
      }
      return;
    }
    const std::uint64_t bit = std::uint64_t{1} << pick;
    run(live & ~bit & ~nbr[pick], taken | bit, acc + w[pick]);
    run(live & ~bit, taken, acc);
  }
};

}  // namespace detail

// Maximum-weight independent set of the conflict graph restricted to `b`.
// Only positive-value items are searched, at most `gate` of them.
inline Bundle max_weight_independent_set(const ConflictGraph& g, const std::vector<Rational>& values, const Bundle& b,
                                         std::size_t gate = kIndependentSetGate) {
  std::vector<Item> items;
  for (Item j : b)
    if (values[j].sign() > 0) items.push_back(j);
  if (items.size() > gate || items.size() > 62)
    throw MmsError(ErrorCode::ExactnessGateExceeded, "independent-set search over " + std::to_string(items.size()) +
                                                         " items exceeds gate " + std::to_string(gate));
  const std::size_t k = items.size();
  std::vector<std::uint64_t> nbr(k, 0);
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t u = 0; u < k; ++u)
      if (std::binary_search(g.adjacency[items[t]].begin(), g.adjacency[items[t]].end(), items[u]))
        nbr[t] |= std::uint64_t{1} << u;
  const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;

  std::uint64_t chosen = 0;
  std::vector<Rational> row;
  for (Item j : items) row.push_back(values[j]);
  if (auto scaled = scale_to_int64(row)) {
    detail::MwisSearch<std::int64_t> s{k, nbr, scaled->scaled};
    s.best = -1;
    s.run(all, 0, 0);
    chosen = s.best_set;
  } else {
    detail::MwisSearch<Rational> s{k, nbr, row};
    s.best = Rational(-1);
    s.run(all, 0, Rational(0));
    chosen = s.best_set;
  }
  return Bundle::from_mask(chosen, items);
}

}  // namespace mms
