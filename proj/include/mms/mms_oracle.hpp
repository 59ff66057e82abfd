#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "mms/core.hpp"
#include "mms/set_system.hpp"
#include "mms/valuation.hpp"

namespace mms {

inline constexpr std::size_t kBruteForceGate = 12;
inline constexpr std::size_t kTableLimit = 22;

// Exact values of every subset of `items` for one agent, as integers in
// units of `unit`. Bit t of a mask stands for items[t].
struct ValueTable {
  std::vector<Item> items;
  std::vector<std::int64_t> val;
  Rational unit;

  Rational value(std::uint64_t mask) const { return Rational(val[mask]) * unit; }
  std::uint64_t full() const { return val.size() - 1; }
  std::uint64_t mask_of(const Bundle& b) const {
    std::uint64_t mask = 0;
    for (std::size_t t = 0; t < items.size(); ++t)
      if (b.contains(items[t])) mask |= std::uint64_t{1} << t;
    return mask;
  }
};

inline ValueTable value_table(const Instance& inst, Agent i, const std::vector<Item>& items) {
  if (items.size() > kTableLimit)
    throw MmsError(ErrorCode::BruteForceGateExceeded, "subset table over " + std::to_string(items.size()) + " items");
  std::vector<Rational> row;
  for (Item j : items) row.push_back(inst.values[i][j]);
  auto scaled = scale_to_int64(row);
  if (!scaled) throw MmsError(ErrorCode::ValueOverflow, "item values do not scale to 64-bit integers");

  ValueTable t{items, {}, scaled->unit};
  std::vector<char> indep = independence_table(inst.system_of(i), items);
  t.val.assign(indep.size(), 0);
  for (std::uint64_t s = 1; s < indep.size(); ++s) {
    if (indep[s]) {
      std::size_t low = static_cast<std::size_t>(__builtin_ctzll(s));
      std::uint64_t rest = s & (s - 1);
      // Subsets of an independent set are independent, so the sum telescopes.
      t.val[s] = t.val[rest] + scaled->scaled[low];
    } else {
      std::int64_t best = 0;
      for (std::uint64_t r = s; r; r &= r - 1) best = std::max(best, t.val[s & ~(r & -r)]);
      t.val[s] = best;
    }
  }
  return t;
}

inline ValueTable value_table(const Instance& inst, Agent i) {
  std::vector<Item> all(inst.m);
  for (Item j = 0; j < inst.m; ++j) all[j] = j;
  return value_table(inst, i, all);
}

struct MmsRecord {
  Agent agent = 0;
  std::size_t parts = 0;
  Rational mu;
  std::vector<Bundle> witness;  // `parts` blocks partitioning the items
};

namespace detail {

// best[k][S]: largest achievable minimum when S is split into k blocks.
// Blocks are canonical by their lowest item, which removes the symmetry of
// block labels.
inline std::vector<std::vector<std::int64_t>> partition_table(const ValueTable& t, std::size_t parts) {
  const std::size_t size = t.val.size();
  std::vector<std::vector<std::int64_t>> best(parts + 1, std::vector<std::int64_t>(size, 0));
  if (parts == 0) return best;
  best[1] = t.val;
  for (std::size_t k = 2; k <= parts; ++k) {
    for (std::uint64_t s = 1; s < size; ++s) {
      const std::uint64_t low = s & (~s + 1);
      const std::uint64_t rest = s & ~low;
      std::int64_t top = 0;
      // T ranges over subsets of s containing `low`.
      for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
        const std::uint64_t block = sub | low;
        const std::int64_t v = std::min(t.val[block], best[k - 1][s & ~block]);
        top = std::max(top, v);
        if (sub == 0) break;
      }
      best[k][s] = top;
    }
  }
  return best;
}

}  // namespace detail

// Exact MMS value for agent i with `parts` blocks, plus a witness partition.
inline MmsRecord compute_mms_exact(const Instance& inst, Agent i, std::size_t parts, std::size_t gate = kBruteForceGate) {
  if (inst.m > gate)
    throw MmsError(ErrorCode::BruteForceGateExceeded,
                   std::to_string(inst.m) + " items exceed the brute-force gate of " + std::to_string(gate));
  MmsRecord rec{i, parts, {}, std::vector<Bundle>(parts)};
  if (parts == 0) return rec;
  ValueTable t = value_table(inst, i);
  auto best = detail::partition_table(t, parts);

  std::uint64_t s = t.full();
  rec.mu = Rational(best[parts][s]) * t.unit;
  const std::int64_t target = best[parts][s];
  for (std::size_t k = parts; k >= 1 && s != 0; --k) {
    if (k == 1) {
      rec.witness[parts - 1] = Bundle::from_mask(s, t.items);
      s = 0;
      break;
    }
    const std::uint64_t low = s & (~s + 1);
    const std::uint64_t rest = s & ~low;
    for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint64_t block = sub | low;
      if (t.val[block] >= target && best[k - 1][s & ~block] >= target) {
        rec.witness[parts - k] = Bundle::from_mask(block, t.items);
        s &= ~block;
        break;
      }
      if (sub == 0) break;
    }
  }
  return rec;
}

inline std::vector<MmsRecord> compute_all_mms(const Instance& inst, std::size_t gate = kBruteForceGate) {
  std::vector<MmsRecord> out;
  for (Agent i = 0; i < inst.n; ++i) out.push_back(compute_mms_exact(inst, i, inst.n, gate));
  return out;
}

struct MmsBounds {
  Rational lower;
  Rational upper;
  bool fewer_items = false;  // m < n: the MMS is 0
};

// Bounds from the n-th most valuable item j by singleton value:
// v({j}) <= mu <= m * v({j}).
inline MmsBounds mms_bounds(const Instance& inst, Agent i) {
  if (inst.n == 0) return {};
  if (inst.m < inst.n) return {{}, {}, true};
  ValuationOracle oracle(inst, i);
  std::vector<Rational> singles;
  for (Item j = 0; j < inst.m; ++j) singles.push_back(oracle.singleton_value(j));
  std::nth_element(singles.begin(), singles.begin() + static_cast<std::ptrdiff_t>(inst.n - 1), singles.end(),
                   [](const Rational& a, const Rational& b) { return a > b; });
  Rational v = singles[inst.n - 1];
  return {v, v * Rational(inst.m), false};
}

// Best achievable minimum over complete allocations, both by raw value and
// by value relative to each agent's MMS. Exponential; for tightness checks.
struct BestAllocation {
  Rational max_min_value;
  Rational max_min_ratio;  // over agents with mu > 0; 1 when there are none
  std::vector<Bundle> value_witness;
  std::vector<Bundle> ratio_witness;
};

inline BestAllocation best_allocation(const Instance& inst, const std::vector<MmsRecord>& records) {
  const std::size_t n = inst.n;
  if (inst.m > kTableLimit) throw MmsError(ErrorCode::BruteForceGateExceeded, "allocation search over too many items");
  std::vector<ValueTable> tables;
  for (Agent i = 0; i < n; ++i) tables.push_back(value_table(inst, i));
  BestAllocation out;
  if (n == 0) return out;
  const std::size_t size = std::size_t{1} << inst.m;

  // Bring every agent to a common value unit so raw values compare directly.
  std::vector<Rational> unit_scale;
  Rational common = tables[0].unit;
  {
    mpz_class l = 1;
    for (const auto& t : tables) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.unit.raw().get_den_mpz_t());
    common = Rational(mpq_class(mpz_class(1), l));
    for (const auto& t : tables) unit_scale.push_back(t.unit / common);
  }
  std::vector<std::vector<__int128>> value(n, std::vector<__int128>(size));
  for (Agent i = 0; i < n; ++i)
    for (std::size_t s = 0; s < size; ++s)
      value[i][s] = static_cast<__int128>(tables[i].val[s]) * unit_scale[i].numerator().get_si();

  // g[i][S]: best minimum when agents i..n-1 share the items of S.
  auto solve = [&](auto better, auto combine, auto leaf) {
    using Score = decltype(leaf(Agent{0}, std::uint64_t{0}));
    std::vector<std::vector<Score>> g(n, std::vector<Score>(size));
    std::vector<std::vector<std::uint64_t>> choice(n, std::vector<std::uint64_t>(size, 0));
    for (std::size_t s = 0; s < size; ++s) {
      g[n - 1][s] = leaf(n - 1, s);
      choice[n - 1][s] = s;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
      for (std::uint64_t s = 0; s < size; ++s) {
        bool first = true;
        for (std::uint64_t sub = s;; sub = (sub - 1) & s) {
          Score cand = combine(leaf(i, sub), g[i + 1][s & ~sub]);
          if (first || better(cand, g[i][s])) {
            g[i][s] = cand;
            choice[i][s] = sub;
            first = false;
          }
          if (sub == 0) break;
        }
      }
    }
    std::vector<Bundle> bundles(n);
    std::uint64_t s = size - 1;
    for (Agent i = 0; i < n; ++i) {
      bundles[i] = Bundle::from_mask(choice[i][s], tables[i].items);
      s &= ~choice[i][s];
    }
    return std::make_pair(g[0][size - 1], bundles);
  };

  auto [best_value, witness] = solve([](__int128 a, __int128 b) { return a > b; },
                                     [](__int128 a, __int128 b) { return std::min(a, b); },
                                     [&](Agent i, std::uint64_t s) { return value[i][s]; });
  out.max_min_value = Rational(mpq_class(mpz_class(std::to_string(static_cast<long long>(best_value))))) * common;
  out.value_witness = std::move(witness);

  // Ratios as fractions num/den with den > 0, compared by cross-multiplication.
  struct Frac {
    __int128 num = 0, den = 1;
  };
  auto less = [](const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; };
  std::vector<__int128> mu(n);
  for (Agent i = 0; i < n; ++i) {
    Rational scaled = records.at(i).mu / tables[i].unit;
    mu[i] = scaled.numerator().get_si();
  }
  auto [best_ratio, ratio_witness] =
      solve([&](const Frac& a, const Frac& b) { return less(b, a); },
            [&](const Frac& a, const Frac& b) { return less(a, b) ? a : b; },
            [&](Agent i, std::uint64_t s) {
              if (mu[i] == 0) return Frac{1, 0};  // never the minimum
              return Frac{static_cast<__int128>(tables[i].val[s]), mu[i]};
            });
  out.max_min_ratio = best_ratio.den == 0
                          ? Rational(1)
                          : Rational(static_cast<long>(best_ratio.num), static_cast<long>(best_ratio.den));
  out.ratio_witness = std::move(ratio_witness);
  return out;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::size_t gate = kBruteForceGate;
  bool require_feasible = false;                    // bundles must be independent
  std::optional<std::vector<MmsRecord>> records;    // precomputed MMS values
};

struct AgentReport {
  Rational value;
  std::optional<Rational> mu;
  std::optional<Rational> ratio;  // absent when mu is 0 or unknown
  bool feasible = true;
  bool pass = false;
};

struct VerifyReport {
  std::vector<AgentReport> agents;
  bool disjoint = true;
  bool complete_ok = true;  // a complete allocation covers every item
  bool pass = false;
};

inline VerifyReport verify_allocation(const Instance& inst, const Allocation& a, const Rational& alpha,
                                      const VerifyOptions& opt = {}) {
  if (a.bundles.size() != inst.n)
    throw MmsError(ErrorCode::InvalidShape, "allocation must hold one bundle per agent");
  for (const Bundle& b : a.bundles)
    for (Item j : b)
      if (j >= inst.m) throw MmsError(ErrorCode::IndexOutOfRange, "allocation mentions item " + std::to_string(j + 1));

  VerifyReport rep;
  rep.disjoint = pairwise_disjoint(a.bundles);
  rep.complete_ok = !a.complete || allocated_items(a) == Bundle::range(inst.m);
  rep.pass = rep.disjoint && rep.complete_ok;
  for (Agent i = 0; i < inst.n; ++i) {
    ValuationOracle oracle(inst, i);
    AgentReport r;
    r.value = oracle.exact_value(a.bundles[i]);
    if (opt.require_feasible) r.feasible = oracle.is_independent(a.bundles[i]);
    if (opt.records) {
      r.mu = opt.records->at(i).mu;
    } else if (inst.m <= opt.gate) {
      r.mu = compute_mms_exact(inst, i, inst.n, opt.gate).mu;
    }
    if (alpha.sign() <= 0) {
      r.pass = true;
    } else if (!r.mu) {
      r.pass = false;
    } else if (r.mu->sign() == 0) {
      r.pass = true;
    } else {
      r.ratio = r.value / *r.mu;
      r.pass = *r.ratio >= alpha;
    }
    r.pass = r.pass && r.feasible;
    rep.pass = rep.pass && r.pass;
    rep.agents.push_back(std::move(r));
  }
  return rep;
}

}  // namespace mms
