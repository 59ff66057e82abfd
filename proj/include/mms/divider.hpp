#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mms/bundles.hpp"
#include "mms/core.hpp"
#include "mms/matching.hpp"
#include "mms/valuation.hpp"

namespace mms {

enum class DividerRule {
  LowestIndex,            // smallest remaining agent index
  MostRestrictiveFirst,   // earliest remaining agent in the entitled order
  SwapDetection,          // lowest index, replaced whenever the swap test fires
};

// Builds `k` bundles for the divider from the remaining items.
using BundleMaker = std::function<BundleRun(Agent divider, const Bundle& remaining, std::size_t k)>;

struct RoundRecord {
  std::size_t round = 0;
  std::vector<Agent> dividers;  // initial divider, then each swap target
  std::vector<Agent> agents;    // remaining agents at the start of the round
  std::vector<MadeBundle> bundles;
  // value_seen[a][b]: the value agent agents[a] was judged to have for
  // bundle b when the bipartite graph was built.
  std::vector<std::vector<Rational>> value_seen;
  std::vector<std::vector<char>> edge;
  std::vector<std::pair<Agent, std::size_t>> matching;  // (agent, bundle index)
  std::vector<std::pair<Agent, Bundle>> allocated;       // what each matched agent received
};

struct DividerOutcome {
  bool success = false;
  Agent failed_agent = 0;
  std::vector<Bundle> bundles;  // one per agent of the instance
  std::vector<RoundRecord> rounds;
};

struct DividerOptions {
  DividerRule rule = DividerRule::LowestIndex;
  // Entitled variant: swap test, oracle-subset edges and oracle-subset
  // allocation for non-dividers.
  bool entitled = false;
};

namespace detail {

inline Agent pick_divider(const Instance& inst, const std::vector<Agent>& remaining, DividerRule rule) {
  if (rule == DividerRule::MostRestrictiveFirst && inst.order_known()) {
    for (Agent a : inst.entitled_order)
      if (std::find(remaining.begin(), remaining.end(), a) != remaining.end()) return a;
  }
  return *std::min_element(remaining.begin(), remaining.end());
}

}  // namespace detail

// Lone divider: every round one agent cuts |N| bundles meeting its own
// threshold, the remaining agents take an envy-free matching of them, and
// the matched agents leave with their bundles. Stops with the divider's index
// when it cannot cut enough bundles.
inline DividerOutcome lone_divider(const Instance& inst, const std::vector<ValuationOracle>& oracles,
                                   const std::vector<Rational>& thresholds, std::vector<Agent> remaining,
                                   const BundleMaker& maker, const DividerOptions& opt = {}) {
  DividerOutcome out;
  out.bundles.assign(inst.n, Bundle{});
  Bundle items = Bundle::range(inst.m);
  std::sort(remaining.begin(), remaining.end());

  auto judged_value = [&](Agent a, const Bundle& b, Bundle* receives) -> Rational {
    const ValuationOracle& o = oracles[a];
    if (opt.entitled) {
      IndependentBundle sub = o.approx_subset(b);
      if (receives) *receives = sub.items;
      return sub.value;
    }
    if (receives) *receives = b;
    if (inst.layout == Layout::Shared) return o.item_sum(b);
    return o.is_independent(b) ? o.item_sum(b) : o.exact_value(b);
  };

  for (std::size_t round = 1; !remaining.empty(); ++round) {
    RoundRecord rec;
    rec.round = round;
    rec.agents = remaining;
    const std::size_t k = remaining.size();

    Agent divider = detail::pick_divider(inst, remaining, opt.rule);
    std::vector<Agent> tried{divider};
    rec.dividers.push_back(divider);
    std::vector<MadeBundle> bundles;
    for (;;) {
      BundleRun run = maker(divider, items, k);
      if (!run.success()) {
        rec.bundles = run.made;
        out.rounds.push_back(std::move(rec));
        out.failed_agent = divider;
        return out;
      }
      bundles = run.first();
      if (!opt.entitled) break;

      std::optional<Agent> swap;
      for (Agent a : remaining) {
        if (std::find(tried.begin(), tried.end(), a) != tried.end()) continue;
        for (const MadeBundle& mb : bundles) {
          if (oracles[a].certainly_dependent(mb.items)) {
            swap = a;
            break;
          }
        }
        if (swap) break;
      }
      if (!swap) break;
      divider = *swap;
      tried.push_back(divider);
      rec.dividers.push_back(divider);
    }

    BipartiteGraph g(k, k);
    std::vector<std::vector<Bundle>> receives(k, std::vector<Bundle>(k));
    rec.value_seen.assign(k, std::vector<Rational>(k));
    rec.edge.assign(k, std::vector<char>(k, 0));
    for (std::size_t a = 0; a < k; ++a) {
      const Agent agent = remaining[a];
      for (std::size_t b = 0; b < k; ++b) {
        if (agent == divider) {
          rec.value_seen[a][b] = bundles[b].value;
          receives[a][b] = bundles[b].items;
        } else {
          rec.value_seen[a][b] = judged_value(agent, bundles[b].items, &receives[a][b]);
        }
        if (rec.value_seen[a][b] >= thresholds[agent]) {
          g.add_edge(a, b);
          rec.edge[a][b] = 1;
        }
      }
    }
    BipartiteMatching match = envy_free_matching(g);
    const auto divider_pos =
        static_cast<std::size_t>(std::find(remaining.begin(), remaining.end(), divider) - remaining.begin());
    if (match[divider_pos] == kUnmatched) throw std::logic_error("lone divider left unmatched");

    std::vector<Agent> next;
    for (std::size_t a = 0; a < k; ++a) {
      const Agent agent = remaining[a];
      if (match[a] == kUnmatched) {
        next.push_back(agent);
        continue;
      }
      const std::size_t b = match[a];
      out.bundles[agent] = receives[a][b];
      items = items - bundles[b].items;
      rec.matching.emplace_back(agent, b);
      rec.allocated.emplace_back(agent, receives[a][b]);
    }
    rec.bundles = std::move(bundles);
    out.rounds.push_back(std::move(rec));
    remaining = std::move(next);
  }
  out.success = true;
  return out;
}

// Entitled variant: swap-detecting divider selection when the agent order is
// hidden, most-restrictive-first when it is known.
inline DividerOutcome lone_divider_entitled(const Instance& inst, const std::vector<ValuationOracle>& oracles,
                                            const std::vector<Rational>& thresholds, std::vector<Agent> remaining,
                                            const BundleMaker& maker) {
  DividerOptions opt;
  opt.entitled = true;
  opt.rule = inst.order_known() ? DividerRule::MostRestrictiveFirst : DividerRule::SwapDetection;
  return lone_divider(inst, oracles, thresholds, std::move(remaining), maker, opt);
}

}  // namespace mms
