#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mms/bundles.hpp"
#include "mms/core.hpp"
#include "mms/divider.hpp"
#include "mms/mms_oracle.hpp"
#include "mms/validate.hpp"
#include "mms/valuation.hpp"

namespace mms {

struct Adjustment {
  std::size_t run = 0;  // lone-divider run that failed
  Agent agent = 0;
  Rational before;
  Rational after;
};

struct SolveResult {
  Allocation allocation;
  std::string mode;
  Rational alpha;                          // guaranteed fraction of each MMS
  std::vector<Agent> dropped;              // agents with a zero MMS
  std::vector<Agent> active;
  std::vector<std::optional<Rational>> initial_estimate;
  std::vector<std::optional<Rational>> final_estimate;
  std::vector<std::size_t> adjustments;    // per agent
  std::vector<Adjustment> history;
  Rational factor;                         // multiplicative estimate adjustment
  double adjustment_bound = 0;             // per-agent bound for the mode
  std::vector<DividerOutcome> runs;        // every lone-divider run, in order
};

struct SolveOptions {
  // Replaces the mode's default oracle configuration.
  std::optional<OracleConfig> oracle;
  // Wrap the mode's oracles in the adversarial worst-case subset oracle,
  // keeping the declared error bound.
  bool adversarial = false;
  std::optional<Rational> delta;           // alpha mode only
  std::size_t gate = kBruteForceGate;      // existence mode brute force
  std::size_t max_runs = 200000;
};

// Constants shared by the solvers.
inline Rational alpha_for_epsilon(const Rational& eps) {
  const Rational keep = Rational(1) - eps;
  return keep / (Rational(1) + Rational(3, 2) * keep);
}

inline Rational alpha_factor(std::size_t n, const Rational& eps) {
  const Rational nn(static_cast<long>(n));
  if (eps.sign() == 0) return nn / (nn + Rational(1));
  const Rational x = (Rational(3) - Rational(3) * eps) /
                     (Rational(5) * nn - Rational(3) * nn * eps + Rational(3) * eps + Rational(3));
  return Rational(1) / (Rational(1) + x);
}

namespace detail {

inline void check_epsilon(const Rational& eps) {
  if (eps.sign() < 0 || eps >= Rational(1))
    throw MmsError(ErrorCode::EpsilonOutOfRange, "error bound " + eps.str() + " is outside [0, 1)");
}

inline std::vector<ValuationOracle> build_oracles(const Instance& inst, OracleConfig config, const SolveOptions& opt) {
  if (opt.oracle) config = *opt.oracle;
  if (opt.adversarial) config.kind = OracleKind::Adversarial;
  return make_oracles(inst, config);
}

// Entitled layouts always need the oracle-subset divider; the rule depends on
// whether the nesting order is published.
inline DividerOptions divider_for(const Instance& inst, bool force_entitled = false) {
  DividerOptions d;
  if (!force_entitled && inst.layout != Layout::Entitled) return d;
  d.entitled = true;
  d.rule = inst.order_known() ? DividerRule::MostRestrictiveFirst : DividerRule::SwapDetection;
  return d;
}

// The n-th largest singleton value of the agent, or 0 when m < n.
inline Rational nth_singleton(const ValuationOracle& o, std::size_t m, std::size_t n) {
  if (n == 0 || m < n) return {};
  std::vector<Rational> singles;
  for (Item j = 0; j < m; ++j) singles.push_back(o.singleton_value(j));
  std::sort(singles.begin(), singles.end(), [](const Rational& a, const Rational& b) { return a > b; });
  return singles[n - 1];
}

struct LoopSetup {
  std::string mode;
  Rational alpha;
  bool fixed_factor = true;   // n/(n+1) on the active agent count
  Rational epsilon;           // used by the appendix factor when !fixed_factor
  DividerOptions divider;
  double bound_scale = 0;     // bound = bound_scale(n) * ln m
  std::optional<Rational> delta;
};

// Estimate loop: start every active agent at m times its n-th best
// singleton, run the lone divider, and shrink the estimate of whichever
// agent failed to cut enough bundles.
inline SolveResult estimate_loop(const Instance& inst, const std::vector<ValuationOracle>& oracles,
                                 const LoopSetup& setup, const SolveOptions& opt) {
  SolveResult res;
  res.mode = setup.mode;
  res.alpha = setup.alpha;
  res.allocation.bundles.assign(inst.n, Bundle{});
  res.initial_estimate.assign(inst.n, std::nullopt);
  res.final_estimate.assign(inst.n, std::nullopt);
  res.adjustments.assign(inst.n, 0);

  std::vector<Rational> nth(inst.n);
  for (Agent i = 0; i < inst.n; ++i) {
    nth[i] = nth_singleton(oracles[i], inst.m, inst.n);
    (nth[i].sign() > 0 ? res.active : res.dropped).push_back(i);
  }
  if (res.active.empty()) return res;
  if (res.active.size() == 1) {
    Agent i = res.active.front();
    res.allocation.bundles[i] = oracles[i].approx_subset(Bundle::range(inst.m)).items;
    return res;
  }

  const std::size_t n = res.active.size();
  res.factor = setup.fixed_factor ? alpha_factor(n, Rational(0)) : alpha_factor(n, setup.epsilon);
  const double ln_m = std::log(static_cast<double>(inst.m));
  if (setup.delta) {
    res.adjustment_bound = setup.delta->to_double() * (5.0 * static_cast<double>(n) + 3.0) * ln_m;
  } else {
    res.adjustment_bound = 1.2 * (static_cast<double>(n) + 1.0) * ln_m;
  }

  std::vector<Rational> estimate(inst.n);
  for (Agent i : res.active) {
    estimate[i] = Rational(static_cast<long>(inst.m)) * nth_singleton(oracles[i], inst.m, n);
    res.initial_estimate[i] = estimate[i];
  }

  for (std::size_t run = 0;; ++run) {
    if (run >= opt.max_runs) throw std::logic_error("estimate loop exceeded its run limit");
    std::vector<Rational> thresholds(inst.n);
    for (Agent i : res.active) thresholds[i] = setup.alpha * estimate[i];
    BundleMaker maker = [&](Agent d, const Bundle& items, std::size_t k) {
      return make_bundles_alpha(oracles[d], items, k, estimate[d], setup.alpha);
    };
    DividerOutcome outcome = lone_divider(inst, oracles, thresholds, res.active, maker, setup.divider);
    const bool ok = outcome.success;
    const Agent failed = outcome.failed_agent;
    res.runs.push_back(std::move(outcome));
    if (ok) break;
    Rational before = estimate[failed];
    estimate[failed] *= res.factor;
    ++res.adjustments[failed];
    res.history.push_back({run, failed, before, estimate[failed]});
  }
  for (Agent i : res.active) res.final_estimate[i] = estimate[i];
  res.allocation.bundles = res.runs.back().bundles;
  return res;
}

}  // namespace detail

// Existence mode: exact MMS values, thresholds n/(2n-1) of each, and bundles
// cut from the divider's own MMS partition. Exponential; desk scale only.
inline SolveResult solve_existence(const Instance& inst, const SolveOptions& opt = {}) {
  SolveResult res;
  res.mode = "existence";
  const std::size_t n = inst.n;
  res.alpha = n == 0 ? Rational(1) : Rational(static_cast<long>(n), static_cast<long>(2 * n - 1));
  res.allocation.bundles.assign(n, Bundle{});
  res.adjustments.assign(n, 0);
  res.initial_estimate.assign(n, std::nullopt);
  res.final_estimate.assign(n, std::nullopt);
  if (n == 0) return res;

  std::vector<ValuationOracle> oracles = make_oracles(inst);
  std::vector<MmsRecord> records = compute_all_mms(inst, opt.gate);
  for (Agent i = 0; i < n; ++i) res.active.push_back(i);
  if (n == 1) {
    res.allocation.bundles[0] = oracles[0].reduce_to_independent(Bundle::range(inst.m)).items;
    return res;
  }

  if (inst.layout == Layout::Asymmetric) {
    // Unrelated families void the lone-divider guarantee; report the best
    // ratio any allocation reaches instead.
    BestAllocation best = best_allocation(inst, records);
    res.alpha = std::min(best.max_min_ratio, Rational(1));
    for (Agent i = 0; i < n; ++i) {
      res.allocation.bundles[i] = oracles[i].reduce_to_independent(best.ratio_witness[i]).items;
      res.initial_estimate[i] = res.final_estimate[i] = records[i].mu;
    }
    return res;
  }

  std::vector<Rational> thresholds(n);
  for (Agent i = 0; i < n; ++i) {
    thresholds[i] = res.alpha * records[i].mu;
    res.initial_estimate[i] = res.final_estimate[i] = records[i].mu;
  }
  BundleMaker maker = [&](Agent d, const Bundle& items, std::size_t k) {
    return bundles_from_mms_partition(records[d], oracles[d], items, k, thresholds[d]);
  };
  DividerOptions dopt;
  Instance ordered = inst;
  if (inst.layout == Layout::Entitled) {
    ordered.entitled_order = infer_entitled_order(inst);
    dopt.rule = DividerRule::MostRestrictiveFirst;
  }
  DividerOutcome outcome = lone_divider(ordered, oracles, thresholds, res.active, maker, dopt);
  if (!outcome.success)
    throw MmsError(ErrorCode::InsufficientBundles,
                   "agent " + std::to_string(outcome.failed_agent + 1) + " could not cut enough bundles");
  res.allocation.bundles = outcome.bundles;
  res.runs.push_back(std::move(outcome));
  return res;
}

// Default polynomial oracles for error bound eps: knapsack FPTAS for budget
// systems, the 1/2 local-ratio scheduler for intervals once eps >= 1/2, exact
// evaluation otherwise.
inline OracleConfig polynomial_oracles(const Rational& eps) {
  OracleConfig c;
  c.kind = OracleKind::Approximate;
  c.epsilon = eps;
  return c;
}

// 2/5-approximation with oracles of error 1/(n+1).
inline SolveResult solve_two_fifths(const Instance& inst, const SolveOptions& opt = {}) {
  OracleConfig config = polynomial_oracles(Rational(1, static_cast<long>(inst.n + 1)));
  config.exact_within_gate = true;
  std::vector<ValuationOracle> oracles = detail::build_oracles(inst, config, opt);
  detail::LoopSetup setup;
  setup.mode = "two_fifths";
  setup.alpha = Rational(2, 5);
  setup.divider = detail::divider_for(inst);
  return detail::estimate_loop(inst, oracles, setup, opt);
}

// alpha(eps)-approximation for oracles with error eps.
inline SolveResult solve_alpha(const Instance& inst, const Rational& eps, const SolveOptions& opt = {}) {
  detail::check_epsilon(eps);
  std::vector<ValuationOracle> oracles = detail::build_oracles(inst, polynomial_oracles(eps), opt);
  detail::LoopSetup setup;
  setup.mode = "alpha";
  setup.alpha = alpha_for_epsilon(eps);
  setup.fixed_factor = eps.sign() == 0;
  setup.epsilon = eps;
  setup.delta = opt.delta ? *opt.delta : Rational(1) / (Rational(1) - eps);
  setup.divider = detail::divider_for(inst);
  return detail::estimate_loop(inst, oracles, setup, opt);
}

// Entitled families: oracle-subset lone divider with divider swapping.
inline SolveResult solve_entitled(const Instance& inst, const SolveOptions& opt = {}) {
  OracleConfig config = polynomial_oracles(Rational(1, static_cast<long>(inst.n + 1)));
  config.exact_within_gate = true;
  std::vector<ValuationOracle> oracles = detail::build_oracles(inst, config, opt);
  detail::LoopSetup setup;
  setup.mode = "entitled";
  setup.alpha = Rational(2, 5);
  setup.divider = detail::divider_for(inst, true);
  return detail::estimate_loop(inst, oracles, setup, opt);
}

}  // namespace mms
