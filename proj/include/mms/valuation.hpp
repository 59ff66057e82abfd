#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mms/core.hpp"
#include "mms/independent_set.hpp"
#include "mms/interval_scheduling.hpp"
#include "mms/knapsack.hpp"
#include "mms/set_system.hpp"

namespace mms {

inline constexpr std::size_t kIntervalGate = 16;
inline constexpr std::size_t kAdversarialGate = 16;

enum class OracleKind {
  Exact,        // exact values, exact best subsets
  Approximate,  // polynomial approximation with a declared error bound
  Adversarial,  // worst subset still within the declared error bound
};

struct OracleConfig {
  OracleKind kind = OracleKind::Exact;
  Rational epsilon;                   // declared error bound, in [0, 1)
  std::optional<std::size_t> gate;    // overrides the per-variant default
  bool exact_pairs = true;            // adversarial: answer |B| <= 2 exactly
  bool exact_within_gate = false;     // approximate budgets: exact below the gate
};

// A bundle known to be independent for the agent, with its additive value.
struct IndependentBundle {
  Bundle items;
  Rational value;
  std::size_t queries = 0;  // exact value queries spent producing it
};

class ValuationOracle {
 public:
  ValuationOracle(const Instance& inst, Agent agent, OracleConfig config = {})
      : agent_(agent), values_(inst.values.at(agent)), system_(inst.system_ptr(agent)), config_(std::move(config)) {
    if (config_.epsilon.sign() < 0 || config_.epsilon >= Rational(1))
      throw MmsError(ErrorCode::EpsilonOutOfRange, "oracle error bound must lie in [0, 1)");
  }

  Agent agent() const { return agent_; }
  const std::vector<Rational>& values() const { return values_; }
  const SetSystem& system() const { return *system_; }
  OracleKind kind() const { return config_.kind; }
  const Rational& epsilon() const { return config_.kind == OracleKind::Exact ? zero() : config_.epsilon; }

  std::size_t gate() const {
    if (config_.gate) return *config_.gate;
    switch (system_->index()) {
      case 2: return kKnapsackGate;
      case 3: return kIndependentSetGate;
      case 4: return kIntervalGate;
      default: return 64;
    }
  }

  Rational item_sum(const Bundle& b) const {
    Rational sum;
    for (Item j : b) sum += values_[j];
    return sum;
  }

  bool is_independent(const Bundle& b) const { return mms::is_independent(*system_, b, kDefaultScheduleGate); }

  // v_i(B): best additive value over independent subsets of B.
  Rational exact_value(const Bundle& b) const { return item_sum(exact_subset(b)); }

  // An independent subset of B attaining v_i(B).
  Bundle exact_subset(const Bundle& b) const {
    struct Visitor {
      const ValuationOracle& o;
      const Bundle& b;
      Bundle operator()(const FreeSystem&) const { return o.positive(b); }
      Bundle operator()(const ExplicitFamily& f) const {
        Bundle best;
        Rational best_value;
        for (const Bundle& t : f.maximal_sets) {
          Bundle cand = o.positive(t & b);
          Rational v = o.item_sum(cand);
          if (v > best_value) {
            best_value = v;
            best = std::move(cand);
          }
        }
        return best;
      }
      Bundle operator()(const BudgetSystem& s) const {
        return knapsack_exact(s.sizes, o.values_, s.budget, b, o.gate());
      }
      Bundle operator()(const ConflictGraph& g) const {
        return max_weight_independent_set(g, o.values_, b, o.gate());
      }
      Bundle operator()(const IntervalJobs& ij) const {
        Bundle pos = o.positive(b);
        if (pos.size() <= 2 && o.is_independent(pos)) return pos;
        if (pos.size() > o.gate())
          throw MmsError(ErrorCode::ExactnessGateExceeded, "interval valuation over " + std::to_string(pos.size()) +
                                                               " jobs exceeds gate " + std::to_string(o.gate()));
        std::vector<std::int64_t> next = schedule_frontier(ij.jobs, pos.items());
        std::uint64_t best = 0;
        Rational best_value;
        for (std::uint64_t s = 1; s < next.size(); ++s) {
          if (next[s] == kUnschedulable) continue;
          Rational v = o.item_sum(Bundle::from_mask(s, pos.items()));
          if (v > best_value) {
            best_value = v;
            best = s;
          }
        }
        return Bundle::from_mask(best, pos.items());
      }
    };
    return std::visit(Visitor{*this, b}, *system_);
  }

  // v_i^o(B): the oracle's independent subset of B. Worth at least
  // (1 - epsilon) v_i(B).
  IndependentBundle approx_subset(const Bundle& b) const {
    if (config_.kind == OracleKind::Adversarial) {
      Bundle s = adversarial_subset(b);
      Rational v = item_sum(s);
      return {std::move(s), std::move(v), 0};
    }
    if (cheap_membership(b) && is_independent(b)) return IndependentBundle{b, item_sum(b), 0};
    if (config_.kind == OracleKind::Exact) {
      Bundle s = exact_subset(b);
      Rational v = item_sum(s);
      return {std::move(s), std::move(v), 0};
    }
    Bundle s;
    if (auto* bs = std::get_if<BudgetSystem>(system_.get()); bs && config_.exact_within_gate && b.size() <= gate()) {
      s = exact_subset(b);
    } else if (bs) {
      s = knapsack_fptas(bs->sizes, values_, bs->budget, b, config_.epsilon);
    } else if (auto* ij = std::get_if<IntervalJobs>(system_.get()); ij && config_.epsilon >= Rational(1, 2)) {
      std::vector<Item> picked;
      for (const ScheduledJob& sj : local_ratio_schedule(ij->jobs, values_, b)) picked.push_back(sj.item);
      s = Bundle(std::move(picked));
    } else {
      s = exact_subset(b);
    }
    Rational v = item_sum(s);
    return {std::move(s), std::move(v), 0};
  }

  // Certifies that B is not independent. Membership is asked directly when it
  // is cheap; otherwise only a value below (1 - eps) of the item sum counts.
  bool certainly_dependent(const Bundle& b) const {
    if (cheap_membership(b)) return !is_independent(b);
    return approx_subset(b).value < (Rational(1) - epsilon()) * item_sum(b);
  }

  // Greedy reduction: scan items in ascending order and drop any whose
  // removal keeps the value. Costs 1 + |B| exact value queries.
  IndependentBundle reduce_to_independent(const Bundle& b) const {
    IndependentBundle out{b, exact_value(b), 1};
    for (Item j : b) {
      Bundle smaller = out.items.without(j);
      Rational v = exact_value(smaller);
      ++out.queries;
      if (v == out.value) out.items = std::move(smaller);
    }
    out.value = item_sum(out.items);
    return out;
  }

  bool singleton_independent(Item j) const {
    if (config_.kind != OracleKind::Exact && values_[j].sign() == 0)
      throw MmsError(ErrorCode::IndeterminateZeroValueSingleton,
                     "independence of zero-value item " + std::to_string(j + 1) + " is not observable");
    return is_independent(Bundle{j});
  }

  // v_i({j}): the item's value when {j} is independent, else 0.
  Rational singleton_value(Item j) const {
    if (values_[j].sign() == 0) return {};
    return is_independent(Bundle{j}) ? values_[j] : Rational();
  }

  bool pair_independent(Item a, Item b) const { return is_independent(Bundle{a, b}); }

 private:
  static const Rational& zero() {
    static const Rational z;
    return z;
  }

  Bundle positive(const Bundle& b) const {
    std::vector<Item> out;
    for (Item j : b)
      if (values_[j].sign() > 0) out.push_back(j);
    return Bundle(std::move(out));
  }

  bool cheap_membership(const Bundle& b) const {
    return !std::holds_alternative<IntervalJobs>(*system_) || b.size() <= 2;
  }

  // Lowest-value independent subset of B still worth (1 - eps) v_i(B);
  // ties go to the first subset in mask order.
  Bundle adversarial_subset(const Bundle& b) const {
    Bundle pos = positive(b);
    if (config_.exact_pairs && pos.size() <= 2) return exact_subset(pos);
    if (pos.size() > kAdversarialGate)
      throw MmsError(ErrorCode::ExactnessGateExceeded, "adversarial oracle over " + std::to_string(pos.size()) +
                                                           " items exceeds gate " + std::to_string(kAdversarialGate));
    const Rational floor_value = (Rational(1) - config_.epsilon) * exact_value(pos);
    std::vector<char> indep = independence_table(*system_, pos.items());
    std::optional<std::uint64_t> worst;
    Rational worst_value;
    for (std::uint64_t s = 0; s < indep.size(); ++s) {
      if (!indep[s]) continue;
      Rational v = item_sum(Bundle::from_mask(s, pos.items()));
      if (v >= floor_value && (!worst || v < worst_value)) {
        worst = s;
        worst_value = v;
      }
    }
    return Bundle::from_mask(worst.value_or(0), pos.items());
  }

  Agent agent_;
  std::vector<Rational> values_;
  std::shared_ptr<const SetSystem> system_;
  OracleConfig config_;
};

inline std::vector<ValuationOracle> make_oracles(const Instance& inst, const OracleConfig& config = {}) {
  std::vector<ValuationOracle> out;
  out.reserve(inst.n);
  for (Agent i = 0; i < inst.n; ++i) out.emplace_back(inst, i, config);
  return out;
}

}  // namespace mms
