#pragma once

// JSON encoding of instances, allocations and solver traces. Items and
// agents are 1-based on the wire and 0-based in memory; rationals travel as
// "p/q" strings.

#include <json.hpp>

#include <string>
#include <vector>

#include "mms/adapters.hpp"
#include "mms/core.hpp"
#include "mms/driver.hpp"
#include "mms/validate.hpp"

namespace mms::json_io {

using nlohmann::json;

inline Rational rational_from(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return Rational::parse(j.dump());
  throw MmsError(ErrorCode::InvalidShape, "expected a rational, got " + j.dump());
}

inline json rational_to(const Rational& r) { return r.str(); }

inline Item index_from(const json& j, std::size_t limit, const char* what) {
  if (!j.is_number_integer()) throw MmsError(ErrorCode::InvalidShape, std::string(what) + " index must be an integer");
  auto v = j.get<long long>();
  if (v < 1 || static_cast<unsigned long long>(v) > limit)
    throw MmsError(ErrorCode::IndexOutOfRange, std::string(what) + " index " + std::to_string(v) + " out of range");
  return static_cast<Item>(v - 1);
}

inline Bundle bundle_from(const json& j, std::size_t m) {
  if (!j.is_array()) throw MmsError(ErrorCode::InvalidShape, "bundle must be an array of item indices");
  std::vector<Item> items;
  for (const json& x : j) items.push_back(index_from(x, m, "item"));
  return Bundle(std::move(items));
}

inline json bundle_to(const Bundle& b) {
  json out = json::array();
  for (Item j : b) out.push_back(j + 1);
  return out;
}

inline SetSystem system_from(const json& j, std::size_t m) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "free") return FreeSystem{};
  if (kind == "explicit") {
    std::vector<Bundle> sets;
    for (const json& s : j.at("sets")) sets.push_back(bundle_from(s, m));
    return make_explicit_family(std::move(sets));
  }
  if (kind == "budget") {
    BudgetSystem b;
    for (const json& s : j.at("sizes")) b.sizes.push_back(rational_from(s));
    b.budget = rational_from(j.at("budget"));
    return b;
  }
  if (kind == "conflict") {
    std::vector<std::pair<Item, Item>> edges;
    for (const json& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw MmsError(ErrorCode::InvalidShape, "conflict edge must be a pair");
      edges.emplace_back(index_from(e[0], m, "item"), index_from(e[1], m, "item"));
    }
    return make_conflict_graph(m, std::move(edges));
  }
  if (kind == "interval") {
    IntervalJobs ij;
    for (const json& x : j.at("jobs"))
      ij.jobs.push_back({x.at("p").get<std::int64_t>(), x.at("r").get<std::int64_t>(), x.at("d").get<std::int64_t>()});
    return ij;
  }
  throw MmsError(ErrorCode::UnsupportedSystem, "unknown system kind '" + kind + "'");
}

inline json system_to(const SetSystem& s) {
  json out;
  out["kind"] = std::string(kind_name(s));
  if (auto* f = std::get_if<ExplicitFamily>(&s)) {
    out["sets"] = json::array();
    for (const Bundle& b : f->maximal_sets) out["sets"].push_back(bundle_to(b));
  } else if (auto* b = std::get_if<BudgetSystem>(&s)) {
    out["sizes"] = json::array();
    for (const Rational& x : b->sizes) out["sizes"].push_back(rational_to(x));
    out["budget"] = rational_to(b->budget);
  } else if (auto* g = std::get_if<ConflictGraph>(&s)) {
    out["edges"] = json::array();
    for (auto [u, v] : g->edges) out["edges"].push_back({u + 1, v + 1});
  } else if (auto* ij = std::get_if<IntervalJobs>(&s)) {
    out["jobs"] = json::array();
    for (const Job& job : ij->jobs) out["jobs"].push_back({{"p", job.processing}, {"r", job.release}, {"d", job.deadline}});
  }
  return out;
}

// Parses and validates an instance document.
inline Instance instance_from(const json& j) {
  Instance raw;
  raw.n = j.at("n").get<std::size_t>();
  raw.m = j.at("m").get<std::size_t>();
  for (const json& row : j.at("values")) {
    std::vector<Rational> r;
    for (const json& v : row) r.push_back(rational_from(v));
    raw.values.push_back(std::move(r));
  }
  if (j.contains("asymmetric")) {
    for (const json& s : j.at("asymmetric")) raw.systems.push_back(std::make_shared<const SetSystem>(system_from(s, raw.m)));
    raw.layout = Layout::Asymmetric;
    if (j.contains("entitled")) {
      const json& e = j.at("entitled");
      raw.layout = Layout::Entitled;
      if (e.is_array()) {
        for (const json& a : e) raw.entitled_order.push_back(index_from(a, raw.n, "agent"));
      } else if (!e.is_boolean() || !e.get<bool>()) {
        throw MmsError(ErrorCode::InvalidShape, "'entitled' must be an agent ordering or true");
      }
    }
  } else {
    if (j.contains("entitled")) throw MmsError(ErrorCode::InvalidShape, "entitled instances list per-agent systems");
    raw.systems.push_back(std::make_shared<const SetSystem>(system_from(j.at("system"), raw.m)));
  }
  return validate_instance(raw);
}

inline json instance_to(const Instance& inst) {
  json out;
  out["n"] = inst.n;
  out["m"] = inst.m;
  out["values"] = json::array();
  for (const auto& row : inst.values) {
    json r = json::array();
    for (const Rational& v : row) r.push_back(rational_to(v));
    out["values"].push_back(std::move(r));
  }
  if (inst.layout == Layout::Shared) {
    out["system"] = system_to(inst.system_of(0));
  } else {
    out["asymmetric"] = json::array();
    for (Agent i = 0; i < inst.n; ++i) out["asymmetric"].push_back(system_to(inst.system_of(i)));
    if (inst.layout == Layout::Entitled) {
      if (inst.order_known()) {
        out["entitled"] = json::array();
        for (Agent a : inst.entitled_order) out["entitled"].push_back(a + 1);
      } else {
        out["entitled"] = true;
      }
    }
  }
  return out;
}

inline Allocation allocation_from(const json& j, const Instance& inst) {
  Allocation a;
  for (const json& b : j.at("bundles")) a.bundles.push_back(bundle_from(b, inst.m));
  if (a.bundles.size() != inst.n) throw MmsError(ErrorCode::InvalidShape, "allocation must list one bundle per agent");
  a.complete = j.value("complete", false);
  return a;
}

inline json allocation_to(const Instance& inst, const Allocation& a) {
  json out;
  out["bundles"] = json::array();
  out["values"] = json::array();
  for (Agent i = 0; i < inst.n; ++i) {
    out["bundles"].push_back(bundle_to(a.bundles[i]));
    out["values"].push_back(rational_to(ValuationOracle(inst, i).item_sum(a.bundles[i])));
  }
  out["complete"] = a.complete;
  if (!a.certificates.empty()) {
    out["certificates"] = json::array();
    for (const auto& c : a.certificates) {
      if (!c) {
        out["certificates"].push_back(nullptr);
        continue;
      }
      out["certificates"].push_back({{"value", rational_to(c->value)}, {"mms", rational_to(c->mms)},
                                     {"ratio", rational_to(c->ratio)}});
    }
  }
  return out;
}

inline json schedules_to(const std::vector<std::optional<std::vector<ScheduledJob>>>& schedules) {
  json out = json::array();
  for (const auto& s : schedules) {
    if (!s) {
      out.push_back(nullptr);
      continue;
    }
    json row = json::array();
    for (const ScheduledJob& sj : *s) row.push_back({{"item", sj.item + 1}, {"start", sj.start}});
    out.push_back(std::move(row));
  }
  return out;
}

// One JSON object per lone-divider round, plus one per estimate adjustment.
inline std::vector<json> trace_lines(const SolveResult& res) {
  std::vector<json> lines;
  std::size_t next_adjust = 0;
  for (std::size_t run = 0; run < res.runs.size(); ++run) {
    const DividerOutcome& outcome = res.runs[run];
    for (const RoundRecord& rec : outcome.rounds) {
      json line;
      line["run"] = run + 1;
      line["round"] = rec.round;
      line["divider"] = rec.dividers.back() + 1;
      line["swaps"] = json::array();
      for (std::size_t t = 1; t < rec.dividers.size(); ++t) line["swaps"].push_back(rec.dividers[t] + 1);
      line["agents"] = json::array();
      for (Agent a : rec.agents) line["agents"].push_back(a + 1);
      line["bundles"] = json::array();
      for (const MadeBundle& mb : rec.bundles) line["bundles"].push_back(bundle_to(mb.items));
      line["matching"] = json::array();
      for (auto [agent, b] : rec.matching) line["matching"].push_back({agent + 1, b + 1});
      lines.push_back(std::move(line));
    }
    if (!outcome.success) {
      json fail;
      fail["run"] = run + 1;
      fail["failed_agent"] = outcome.failed_agent + 1;
      if (next_adjust < res.history.size() && res.history[next_adjust].run == run) {
        const Adjustment& adj = res.history[next_adjust++];
        fail["estimate_before"] = rational_to(adj.before);
        fail["estimate_after"] = rational_to(adj.after);
      }
      lines.push_back(std::move(fail));
    }
  }
  return lines;
}

}  // namespace mms::json_io
