#pragma once

#include <optional>
#include <vector>

#include "mms/core.hpp"
#include "mms/matching.hpp"
#include "mms/mms_oracle.hpp"
#include "mms/valuation.hpp"

namespace mms {

enum class BundleOrigin { Singleton, PhaseOne, PhaseTwo, Witness };

inline std::string_view to_string(BundleOrigin o) {
  switch (o) {
    case BundleOrigin::Singleton: return "singleton";
    case BundleOrigin::PhaseOne: return "phase_one";
    case BundleOrigin::PhaseTwo: return "phase_two";
    case BundleOrigin::Witness: return "witness";
  }
  return "unknown";
}

struct MadeBundle {
  Bundle items;
  Rational value;  // additive value for the maker; the bundle is independent
  BundleOrigin origin = BundleOrigin::PhaseOne;
};

// Every bundle a maker constructed, in construction order. A run succeeds
// when at least `wanted` bundles exist; callers take the first `wanted`.
struct BundleRun {
  std::size_t wanted = 0;
  std::vector<MadeBundle> made;

  bool success() const { return made.size() >= wanted; }
  std::vector<MadeBundle> first() const {
    if (!success()) return {};
    return {made.begin(), made.begin() + static_cast<std::ptrdiff_t>(wanted)};
  }
};

// Existence-mode maker: restrict the agent's MMS witness to the remaining
// items and keep the blocks still worth x, each reduced to an independent
// subset of equal value.
inline BundleRun bundles_from_mms_partition(const MmsRecord& record, const ValuationOracle& oracle,
                                            const Bundle& remaining, std::size_t k, const Rational& x) {
  BundleRun run{k, {}};
  for (const Bundle& block : record.witness) {
    Bundle left = block & remaining;
    if (oracle.exact_value(left) < x) continue;
    IndependentBundle reduced = oracle.reduce_to_independent(left);
    run.made.push_back({std::move(reduced.items), std::move(reduced.value), BundleOrigin::Witness});
  }
  return run;
}

// Two-phase construction of k disjoint independent bundles worth at least
// alpha * mu_star each. Phase one grows bundles from at most one high item
// plus low items and trims them to minimality; once no high item yields a
// bundle, the low items alone are tried too, so a block of low items worth the
// threshold cannot be stranded. Phase two pairs high items through a maximum
// matching.
inline BundleRun make_bundles_alpha(const ValuationOracle& oracle, const Bundle& items, std::size_t k,
                                    const Rational& mu_star, const Rational& alpha) {
  BundleRun run{k, {}};
  if (k == 0) return run;
  const Rational threshold = alpha * mu_star;
  const Rational half = threshold / Rational(2);

  std::vector<Item> high, low;
  std::vector<Rational> single(oracle.values().size());
  for (Item j : items) {
    single[j] = oracle.singleton_value(j);
    (single[j] > half ? high : low).push_back(j);
  }

  std::vector<Item> rest;
  for (Item j : high) {
    if (single[j] >= threshold)
      run.made.push_back({Bundle{j}, single[j], BundleOrigin::Singleton});
    else
      rest.push_back(j);
  }
  Bundle h(std::move(rest)), l(std::move(low));

  auto next_seed = [&]() -> std::optional<IndependentBundle> {
    for (Item j : h) {
      IndependentBundle b = oracle.approx_subset(l.with(j));
      if (b.value >= threshold) return b;
    }
    if (l.empty()) return std::nullopt;
    IndependentBundle b = oracle.approx_subset(l);
    if (b.value >= threshold) return b;
    return std::nullopt;
  };
  while (auto seed = next_seed()) {
    Bundle kept = seed->items;
    Rational value = seed->value;
    for (Item x : seed->items) {
      const Rational& vx = oracle.values()[x];
      if (value - vx >= threshold) {
        kept = kept.without(x);
        value -= vx;
      }
    }
    h = h - kept;
    l = l - kept;
    run.made.push_back({std::move(kept), std::move(value), BundleOrigin::PhaseOne});
  }

  const bool oracle_pairs = oracle.epsilon() <= Rational(1, 3);
  const std::vector<Item>& hv = h.items();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<Bundle>> pair_bundle(hv.size(), std::vector<Bundle>(hv.size()));
  for (std::size_t a = 0; a < hv.size(); ++a) {
    for (std::size_t b = a + 1; b < hv.size(); ++b) {
      Bundle pair{hv[a], hv[b]};
      if (oracle_pairs) {
        IndependentBundle got = oracle.approx_subset(pair);
        if (got.value < threshold) continue;
        pair_bundle[a][b] = std::move(got.items);
      } else {
        if (!oracle.pair_independent(hv[a], hv[b]) || oracle.item_sum(pair) < threshold) continue;
        pair_bundle[a][b] = std::move(pair);
      }
      edges.emplace_back(a, b);
    }
  }
  std::vector<std::size_t> mate = max_general_matching(hv.size(), edges);
  for (std::size_t a = 0; a < hv.size(); ++a) {
    if (mate[a] == kUnmatched || mate[a] < a) continue;
    Bundle b = pair_bundle[a][mate[a]];
    Rational v = oracle.item_sum(b);
    run.made.push_back({std::move(b), std::move(v), BundleOrigin::PhaseTwo});
  }
  return run;
}

inline BundleRun make_bundles_two_fifths(const ValuationOracle& oracle, const Bundle& items, std::size_t k,
                                         const Rational& mu_star) {
  return make_bundles_alpha(oracle, items, k, mu_star, Rational(2, 5));
}

}  // namespace mms
