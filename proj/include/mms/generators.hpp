#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "mms/core.hpp"

namespace mms {

// Tightness gadget for the 2/3 bound. Items are numbered 1..4n in the
// construction below and stored 0-based. Maximal sets are the triples
// {4k+1, 4k+2, 4k+3} and {4k+3, 4k+4, 4k+6}, where 4k+6 wraps to item 2 for
// the last k. The first r agents value every item except multiples of 4; the
// rest value every item except those congruent to 1 mod 4.
inline Instance gen_two_thirds_bound(std::size_t n, std::size_t r = 1) {
  if (n < 2) throw MmsError(ErrorCode::InvalidShape, "the gadget needs at least two agents");
  if (r == 0 || r >= n) throw MmsError(ErrorCode::InvalidShape, "r must satisfy 0 < r < n");
  const std::size_t m = 4 * n;
  std::vector<Bundle> sets;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t last = k + 1 == n ? 2 : 4 * k + 6;
    sets.push_back(Bundle{4 * k, 4 * k + 1, 4 * k + 2});
    sets.push_back(Bundle{4 * k + 2, 4 * k + 3, last - 1});
  }
  std::vector<std::vector<Rational>> values(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      bool zero = i < r ? j % 4 == 0 : j % 4 == 1;
      values[i][j - 1] = zero ? 0 : 1;
    }
  return make_shared_instance(std::move(values), m, make_explicit_family(std::move(sets)));
}

// Asymmetric gadget with 2n unit-value items. Agents 1..n-1 may combine the
// pairs {1,2}, {3,4}, ..., {2n-1,2n}; agent n the pairs {2,3}, ...,
// {2n-2,2n-1} and {1,2n} (1-based). Singletons are independent for everyone.
inline Instance gen_asymmetric_half(std::size_t n) {
  if (n < 2) throw MmsError(ErrorCode::InvalidShape, "the gadget needs at least two agents");
  const std::size_t m = 2 * n;
  std::vector<Bundle> h1, h2;
  for (std::size_t t = 0; t < n; ++t) h1.push_back(Bundle{2 * t, 2 * t + 1});
  for (std::size_t t = 0; t + 1 < n; ++t) h2.push_back(Bundle{2 * t + 1, 2 * t + 2});
  h2.push_back(Bundle{0, m - 1});
  auto first = std::make_shared<const SetSystem>(make_explicit_family(std::move(h1)));
  auto second = std::make_shared<const SetSystem>(make_explicit_family(std::move(h2)));

  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.layout = Layout::Asymmetric;
  inst.values.assign(n, std::vector<Rational>(m, Rational(1)));
  for (std::size_t i = 0; i + 1 < n; ++i) inst.systems.push_back(first);
  inst.systems.push_back(second);
  return inst;
}

// n identical unit-value agents over 3n items; independent sets are those of
// at most three items with weight at most T = sum(a) / n.
inline Instance gen_three_partition(const std::vector<std::int64_t>& a) {
  if (a.empty() || a.size() % 3 != 0)
    throw MmsError(ErrorCode::NotTripleMultiple, "need 3n numbers, got " + std::to_string(a.size()));
  for (std::int64_t x : a)
    if (x <= 0) throw MmsError(ErrorCode::NegativeValue, "3-PARTITION numbers must be positive");
  const std::size_t n = a.size() / 3, m = a.size();
  const std::int64_t sum = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  if (sum % static_cast<std::int64_t>(n) != 0)
    throw MmsError(ErrorCode::NotDivisible, "sum " + std::to_string(sum) + " is not divisible by " + std::to_string(n));
  const std::int64_t cap = sum / static_cast<std::int64_t>(n);

  std::vector<Bundle> sets;
  for (std::size_t x = 0; x < m; ++x) {
    if (a[x] <= cap) sets.push_back(Bundle{x});
    for (std::size_t y = x + 1; y < m; ++y) {
      if (a[x] + a[y] <= cap) sets.push_back(Bundle{x, y});
      for (std::size_t z = y + 1; z < m; ++z)
        if (a[x] + a[y] + a[z] <= cap) sets.push_back(Bundle{x, y, z});
    }
  }
  std::vector<std::vector<Rational>> values(n, std::vector<Rational>(m, Rational(1)));
  return make_shared_instance(std::move(values), m, make_explicit_family(std::move(sets)));
}

// ---------------------------------------------------------------------------
// Seeded random instances
// ---------------------------------------------------------------------------

namespace detail {

// Uniform draw in [lo, hi] by modular reduction: slightly biased, but the
// same on every standard library, which keeps generated files portable.
inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline bool coin(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

inline std::vector<std::vector<Rational>> random_values(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                                        std::int64_t den) {
  std::vector<std::vector<Rational>> values(n, std::vector<Rational>(m));
  for (auto& row : values)
    for (auto& v : row) v = Rational(static_cast<long>(draw(rng, 0, den)), static_cast<long>(den));
  return values;
}

}  // namespace detail

struct RandomParams {
  std::size_t m = 8;
  std::size_t n = 2;
  double density = 0.5;       // chance an item joins a random maximal set
  std::int64_t value_den = 4; // values drawn from {0, 1/d, ..., 1}
  std::uint64_t seed = 1;
};

// Explicit family of m random sets (each item kept with probability
// `density`), closed downward by the membership rule.
inline Instance gen_random_hereditary(const RandomParams& p) {
  std::mt19937_64 rng(p.seed);
  std::vector<Bundle> sets;
  for (std::size_t s = 0; s < std::max<std::size_t>(p.m, 1); ++s) {
    std::vector<Item> members;
    for (Item j = 0; j < p.m; ++j)
      if (detail::coin(rng, p.density)) members.push_back(j);
    sets.emplace_back(std::move(members));
  }
  auto values = detail::random_values(rng, p.n, p.m, p.value_den);
  return make_shared_instance(std::move(values), p.m, make_explicit_family(std::move(sets)));
}

// Integer sizes in 1..4. With `per_agent`, every agent gets its own budget
// and the instance is entitled with the order left for the solver to find.
inline Instance gen_random_budget(const RandomParams& p, bool per_agent) {
  std::mt19937_64 rng(p.seed);
  BudgetSystem base;
  std::int64_t total = 0;
  for (Item j = 0; j < p.m; ++j) {
    base.sizes.emplace_back(static_cast<long>(detail::draw(rng, 1, 4)));
    total += base.sizes.back().floor().get_si();
  }
  auto budget = [&] { return Rational(static_cast<long>(detail::draw(rng, 1, std::max<std::int64_t>(1, total / 2)))); };
  auto values = detail::random_values(rng, p.n, p.m, p.value_den);
  if (!per_agent) {
    base.budget = budget();
    return make_shared_instance(std::move(values), p.m, std::move(base));
  }
  Instance inst;
  inst.n = p.n;
  inst.m = p.m;
  inst.values = std::move(values);
  inst.layout = Layout::Entitled;
  for (std::size_t i = 0; i < p.n; ++i) {
    BudgetSystem b = base;
    b.budget = budget();
    inst.systems.push_back(std::make_shared<const SetSystem>(std::move(b)));
  }
  return inst;
}

// Random conflict graph whose maximum degree stays below n.
inline Instance gen_random_conflict(const RandomParams& p) {
  std::mt19937_64 rng(p.seed);
  std::vector<std::size_t> degree(p.m, 0);
  std::vector<std::pair<Item, Item>> edges;
  for (Item u = 0; u < p.m; ++u)
    for (Item v = u + 1; v < p.m; ++v)
      if (detail::coin(rng, p.density) && degree[u] + 1 < p.n && degree[v] + 1 < p.n) {
        edges.emplace_back(u, v);
        ++degree[u];
        ++degree[v];
      }
  auto values = detail::random_values(rng, p.n, p.m, p.value_den);
  return make_shared_instance(std::move(values), p.m, make_conflict_graph(p.m, std::move(edges)));
}

// Jobs of length 1..2 with tight windows over a short horizon, so that many
// pairs collide.
inline Instance gen_random_interval(const RandomParams& p) {
  std::mt19937_64 rng(p.seed);
  IntervalJobs ij;
  const std::int64_t horizon = static_cast<std::int64_t>(p.m / 2 + 1);
  for (Item j = 0; j < p.m; ++j) {
    Job job;
    job.processing = detail::draw(rng, 1, 2);
    job.release = detail::draw(rng, 1, horizon);
    job.deadline = job.release + job.processing - 1 + detail::draw(rng, 0, 2);
    ij.jobs.push_back(job);
  }
  auto values = detail::random_values(rng, p.n, p.m, p.value_den);
  return make_shared_instance(std::move(values), p.m, std::move(ij));
}

}  // namespace mms
