#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mms/rational.hpp"

namespace mms {

enum class ErrorCode {
  NegativeValue,
  NonNestedEntitledFamilies,
  InvalidInterval,
  IndexOutOfRange,
  InvalidShape,
  ExactnessGateExceeded,
  IndeterminateZeroValueSingleton,
  BruteForceGateExceeded,
  InsufficientBundles,
  EpsilonOutOfRange,
  DegreeTooHigh,
  NotDivisible,
  NotTripleMultiple,
  ValueOverflow,
  UnsupportedSystem,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::NonNestedEntitledFamilies: return "NonNestedEntitledFamilies";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::ExactnessGateExceeded: return "ExactnessGateExceeded";
    case ErrorCode::IndeterminateZeroValueSingleton: return "IndeterminateZeroValueSingleton";
    case ErrorCode::BruteForceGateExceeded: return "BruteForceGateExceeded";
    case ErrorCode::InsufficientBundles: return "InsufficientBundles";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::NotTripleMultiple: return "NotTripleMultiple";
    case ErrorCode::ValueOverflow: return "ValueOverflow";
    case ErrorCode::UnsupportedSystem: return "UnsupportedSystem";
  }
  return "Unknown";
}

class MmsError : public std::runtime_error {
 public:
  MmsError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

using Item = std::size_t;
using Agent = std::size_t;

// Sorted, duplicate-free set of item indices.
class Bundle {
 public:
  Bundle() = default;
  Bundle(std::initializer_list<Item> items) : Bundle(std::vector<Item>(items)) {}
  explicit Bundle(std::vector<Item> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    if (std::adjacent_find(items_.begin(), items_.end()) != items_.end())
      throw MmsError(ErrorCode::InvalidShape, "bundle lists an item twice");
  }

  static Bundle range(std::size_t m) {
    Bundle b;
    b.items_.resize(m);
    for (std::size_t j = 0; j < m; ++j) b.items_[j] = j;
    return b;
  }

  static Bundle from_mask(std::uint64_t mask, const std::vector<Item>& universe) {
    Bundle b;
    for (std::size_t t = 0; t < universe.size(); ++t)
      if (mask >> t & 1U) b.items_.push_back(universe[t]);
    std::sort(b.items_.begin(), b.items_.end());
    return b;
  }

  const std::vector<Item>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  Item operator[](std::size_t t) const { return items_[t]; }

  bool contains(Item j) const { return std::binary_search(items_.begin(), items_.end(), j); }

  bool subset_of(const Bundle& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
  }

  bool disjoint_with(const Bundle& other) const {
    auto a = items_.begin(), b = other.items_.begin();
    while (a != items_.end() && b != other.items_.end()) {
      if (*a == *b) return false;
      if (*a < *b) ++a; else ++b;
    }
    return true;
  }

  Bundle without(Item j) const {
    Bundle b;
    b.items_.reserve(items_.size());
    for (Item x : items_)
      if (x != j) b.items_.push_back(x);
    return b;
  }

  Bundle with(Item j) const {
    if (contains(j)) return *this;
    Bundle b = *this;
    b.items_.insert(std::upper_bound(b.items_.begin(), b.items_.end(), j), j);
    return b;
  }

  friend Bundle operator|(const Bundle& a, const Bundle& b) {
    Bundle r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }
  friend Bundle operator&(const Bundle& a, const Bundle& b) {
    Bundle r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }
  friend Bundle operator-(const Bundle& a, const Bundle& b) {
    Bundle r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }

  friend auto operator<=>(const Bundle&, const Bundle&) = default;
  friend bool operator==(const Bundle&, const Bundle&) = default;

 private:
  std::vector<Item> items_;
};

// ---------------------------------------------------------------------------
// Set systems. Each variant describes a hereditary family of item sets.
// ---------------------------------------------------------------------------

// Every subset independent: additive valuations.
struct FreeSystem {
  friend bool operator==(const FreeSystem&, const FreeSystem&) = default;
};

// Family given by its maximal sets; stored as a sorted antichain.
struct ExplicitFamily {
  std::vector<Bundle> maximal_sets;
  friend bool operator==(const ExplicitFamily&, const ExplicitFamily&) = default;
};

// Knapsack family: feasible iff total size fits the budget.
struct BudgetSystem {
  std::vector<Rational> sizes;
  Rational budget;
  friend bool operator==(const BudgetSystem&, const BudgetSystem&) = default;
};

// Independent sets of a conflict graph over the items.
struct ConflictGraph {
  std::vector<std::pair<Item, Item>> edges;      // u < v, sorted, unique
  std::vector<std::vector<Item>> adjacency;      // sorted neighbour lists
  friend bool operator==(const ConflictGraph& a, const ConflictGraph& b) { return a.edges == b.edges; }
};

// Discrete periods: a job occupies periods start .. start + processing - 1,
// with release <= start and start + processing - 1 <= deadline.
struct Job {
  std::int64_t processing = 1;
  std::int64_t release = 1;
  std::int64_t deadline = 1;
  friend bool operator==(const Job&, const Job&) = default;
};

struct IntervalJobs {
  std::vector<Job> jobs;
  friend bool operator==(const IntervalJobs&, const IntervalJobs&) = default;
};

using SetSystem = std::variant<FreeSystem, ExplicitFamily, BudgetSystem, ConflictGraph, IntervalJobs>;

inline std::string_view kind_name(const SetSystem& s) {
  switch (s.index()) {
    case 0: return "free";
    case 1: return "explicit";
    case 2: return "budget";
    case 3: return "conflict";
    default: return "interval";
  }
}

// Drops duplicate and dominated sets so the family is an antichain of
// maximal sets in lexicographic order.
inline ExplicitFamily make_explicit_family(std::vector<Bundle> sets) {
  std::sort(sets.begin(), sets.end(), [](const Bundle& a, const Bundle& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  ExplicitFamily family;
  for (const Bundle& s : sets) {
    bool dominated = std::any_of(family.maximal_sets.begin(), family.maximal_sets.end(),
                                 [&](const Bundle& t) { return s.subset_of(t); });
    if (!dominated) family.maximal_sets.push_back(s);
  }
  std::sort(family.maximal_sets.begin(), family.maximal_sets.end());
  return family;
}

inline ConflictGraph make_conflict_graph(std::size_t m, std::vector<std::pair<Item, Item>> edges) {
  ConflictGraph g;
  for (auto& [u, v] : edges) {
    if (u >= m || v >= m) throw MmsError(ErrorCode::IndexOutOfRange, "conflict edge endpoint out of range");
    if (u == v) throw MmsError(ErrorCode::InvalidShape, "conflict graph self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.adjacency.assign(m, {});
  for (auto [u, v] : g.edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
  return g;
}

// ---------------------------------------------------------------------------
// Instances and allocations
// ---------------------------------------------------------------------------

enum class Layout { Shared, Entitled, Asymmetric };

struct Instance {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<Rational>> values;  // n x m
  Layout layout = Layout::Shared;
  // One system when shared, otherwise one per agent.
  std::vector<std::shared_ptr<const SetSystem>> systems;
  // Entitled layout only: agents from most to least restrictive family.
  // Empty when the ordering is not disclosed to the solver.
  std::vector<Agent> entitled_order;

  const SetSystem& system_of(Agent i) const { return *system_ptr(i); }
  std::shared_ptr<const SetSystem> system_ptr(Agent i) const {
    return layout == Layout::Shared ? systems.at(0) : systems.at(i);
  }
  bool order_known() const { return layout == Layout::Entitled && !entitled_order.empty(); }
};

inline Instance make_shared_instance(std::vector<std::vector<Rational>> values, std::size_t m, SetSystem system) {
  Instance inst;
  inst.n = values.size();
  inst.m = m;
  inst.values = std::move(values);
  inst.layout = Layout::Shared;
  inst.systems.push_back(std::make_shared<const SetSystem>(std::move(system)));
  return inst;
}

struct Certificate {
  Rational value;
  Rational mms;
  Rational ratio;  // value / mms; 1 when mms == 0
};

struct Allocation {
  std::vector<Bundle> bundles;  // one per agent, possibly empty
  bool complete = false;
  std::vector<std::optional<Certificate>> certificates;  // empty or one per agent
};

inline bool pairwise_disjoint(const std::vector<Bundle>& bundles) {
  std::vector<Item> all;
  for (const Bundle& b : bundles) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

inline Bundle allocated_items(const Allocation& a) {
  Bundle all;
  for (const Bundle& b : a.bundles) all = all | b;
  return all;
}

}  // namespace mms
