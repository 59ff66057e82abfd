#pragma once

#include <numeric>
#include <string>

#include "mms/core.hpp"
#include "mms/set_system.hpp"

namespace mms {

namespace detail {

inline SetSystem checked_system(const SetSystem& system, std::size_t m) {
  struct Visitor {
    std::size_t m;
    SetSystem operator()(const FreeSystem& f) const { return f; }
    SetSystem operator()(const ExplicitFamily& f) const {
      for (const Bundle& s : f.maximal_sets)
        for (Item j : s)
          if (j >= m) throw MmsError(ErrorCode::IndexOutOfRange, "explicit set mentions item " + std::to_string(j + 1));
      return make_explicit_family(f.maximal_sets);
    }
    SetSystem operator()(const BudgetSystem& b) const {
      if (b.sizes.size() != m) throw MmsError(ErrorCode::InvalidShape, "budget sizes must list every item");
      for (const Rational& s : b.sizes)
        if (s.sign() < 0) throw MmsError(ErrorCode::NegativeValue, "negative item size");
      if (b.budget.sign() < 0) throw MmsError(ErrorCode::NegativeValue, "negative budget");
      return b;
    }
    SetSystem operator()(const ConflictGraph& g) const {
      return make_conflict_graph(m, g.edges);
    }
    SetSystem operator()(const IntervalJobs& ij) const {
      if (ij.jobs.size() != m) throw MmsError(ErrorCode::InvalidShape, "interval system must list every item");
      for (std::size_t j = 0; j < m; ++j) {
        const Job& job = ij.jobs[j];
        if (job.processing < 1 || job.release < 1 || job.deadline < job.release + job.processing - 1)
          throw MmsError(ErrorCode::InvalidInterval, "job " + std::to_string(j + 1) + " does not fit its window");
      }
      return ij;
    }
  };
  return std::visit(Visitor{m}, system);
}

}  // namespace detail

// Orders agents from most to least restrictive family, or throws when the
// families do not form a chain.
inline std::vector<Agent> infer_entitled_order(const Instance& inst) {
  if (inst.order_known()) return inst.entitled_order;
  std::vector<Agent> left(inst.n), order;
  std::iota(left.begin(), left.end(), Agent{0});
  auto nested = [&](Agent a, Agent b) { return families_nested(inst.system_of(a), inst.system_of(b), inst.m); };
  // Peel off an agent whose family sits inside every other remaining family.
  while (!left.empty()) {
    auto it = std::find_if(left.begin(), left.end(), [&](Agent a) {
      return std::all_of(left.begin(), left.end(), [&](Agent b) { return a == b || nested(a, b); });
    });
    if (it == left.end())
      throw MmsError(ErrorCode::NonNestedEntitledFamilies, "no nesting order exists among the agents' families");
    order.push_back(*it);
    left.erase(it);
  }
  return order;
}

// Returns a normalised copy of `raw` when every invariant holds.
inline Instance validate_instance(const Instance& raw) {
  Instance inst;
  inst.n = raw.n;
  inst.m = raw.m;
  inst.layout = raw.layout;

  if (raw.values.size() != raw.n) throw MmsError(ErrorCode::InvalidShape, "values must have one row per agent");
  for (const auto& row : raw.values) {
    if (row.size() != raw.m) throw MmsError(ErrorCode::InvalidShape, "values rows must have one entry per item");
    for (const Rational& v : row)
      if (v.sign() < 0) throw MmsError(ErrorCode::NegativeValue, "item value " + v.str() + " is negative");
  }
  inst.values = raw.values;

  const std::size_t expected = raw.layout == Layout::Shared ? 1 : raw.n;
  if (raw.systems.size() != expected)
    throw MmsError(ErrorCode::InvalidShape, "expected " + std::to_string(expected) + " set system(s)");
  for (const auto& s : raw.systems) {
    if (!s) throw MmsError(ErrorCode::InvalidShape, "missing set system");
    inst.systems.push_back(std::make_shared<const SetSystem>(detail::checked_system(*s, raw.m)));
  }

  if (raw.layout == Layout::Entitled) {
    auto nested = [&](Agent a, Agent b) { return families_nested(inst.system_of(a), inst.system_of(b), inst.m); };
    if (!raw.entitled_order.empty()) {
      if (raw.entitled_order.size() != raw.n) throw MmsError(ErrorCode::InvalidShape, "entitled order must list every agent");
      std::vector<char> seen(raw.n, 0);
      for (Agent a : raw.entitled_order) {
        if (a >= raw.n) throw MmsError(ErrorCode::IndexOutOfRange, "entitled order mentions agent " + std::to_string(a + 1));
        if (seen[a]++) throw MmsError(ErrorCode::InvalidShape, "entitled order repeats an agent");
      }
      for (std::size_t t = 0; t + 1 < raw.n; ++t)
        if (!nested(raw.entitled_order[t], raw.entitled_order[t + 1]))
          throw MmsError(ErrorCode::NonNestedEntitledFamilies,
                         "family of agent " + std::to_string(raw.entitled_order[t] + 1) +
                             " is not contained in that of agent " + std::to_string(raw.entitled_order[t + 1] + 1));
      inst.entitled_order = raw.entitled_order;
    } else {
      infer_entitled_order(inst);
    }
  }
  return inst;
}

}  // namespace mms
