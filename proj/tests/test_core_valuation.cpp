#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "mms/mms.hpp"
#include "support/brute_force.hpp"

using namespace mms;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

std::vector<std::vector<Rational>> unit_values(std::size_t n, std::size_t m) {
  return std::vector<std::vector<Rational>>(n, std::vector<Rational>(m, Rational(1)));
}

Instance budget_instance(std::vector<long> sizes, long budget, std::vector<long> values) {
  BudgetSystem b;
  for (long s : sizes) b.sizes.emplace_back(s);
  b.budget = budget;
  std::vector<Rational> row;
  for (long v : values) row.emplace_back(v);
  return validate_instance(make_shared_instance({row}, sizes.size(), b));
}

Instance interval_instance(std::vector<Job> jobs, std::vector<Rational> values) {
  const std::size_t m = jobs.size();
  return validate_instance(make_shared_instance({std::move(values)}, m, IntervalJobs{std::move(jobs)}));
}

template <class F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const MmsError& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

TEST(Rational, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(Rational::parse("3/6"), R(1, 2));
  EXPECT_EQ(Rational::parse("0.25"), R(1, 4));
  EXPECT_EQ(Rational::parse("-3.5"), R(-7, 2));
  EXPECT_EQ(Rational::parse(" 7 "), R(7));
  EXPECT_EQ(Rational::parse("2/4").str(), "1/2");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, RepeatedFactorDoesNotDrift) {
  Rational x(8);
  for (int t = 0; t < 50; ++t) x *= R(2, 3);
  for (int t = 0; t < 50; ++t) x *= R(3, 2);
  EXPECT_EQ(x, R(8));
}

TEST(Rational, ScalingToIntegers) {
  auto s = scale_to_int64({R(1, 2), R(1, 3), R(2)});
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->unit, R(1, 6));
  EXPECT_EQ(s->scaled, (std::vector<std::int64_t>{3, 2, 12}));
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

TEST(Validate, AcceptsFreeUnitInstance) {
  Instance inst = validate_instance(make_shared_instance(unit_values(2, 2), 2, FreeSystem{}));
  EXPECT_EQ(inst.n, 2u);
  EXPECT_EQ(inst.m, 2u);
}

TEST(Validate, RejectsNonNestedEntitledFamilies) {
  Instance raw;
  raw.n = 2;
  raw.m = 2;
  raw.values = unit_values(2, 2);
  raw.layout = Layout::Entitled;
  raw.systems.push_back(std::make_shared<const SetSystem>(make_explicit_family({Bundle{0}})));
  raw.systems.push_back(std::make_shared<const SetSystem>(make_explicit_family({Bundle{1}})));
  expect_error(ErrorCode::NonNestedEntitledFamilies, [&] { validate_instance(raw); });
  raw.entitled_order = {0, 1};
  expect_error(ErrorCode::NonNestedEntitledFamilies, [&] { validate_instance(raw); });
}

TEST(Validate, AcceptsNestedEntitledFamiliesInEitherDeclaredForm) {
  Instance raw;
  raw.n = 2;
  raw.m = 3;
  raw.values = unit_values(2, 3);
  raw.layout = Layout::Entitled;
  raw.systems.push_back(std::make_shared<const SetSystem>(make_explicit_family({Bundle{0, 1, 2}})));
  raw.systems.push_back(std::make_shared<const SetSystem>(make_explicit_family({Bundle{0, 1}})));
  EXPECT_NO_THROW(validate_instance(raw));
  EXPECT_EQ(infer_entitled_order(raw), (std::vector<Agent>{1, 0}));
  raw.entitled_order = {1, 0};
  EXPECT_NO_THROW(validate_instance(raw));
  raw.entitled_order = {0, 1};
  expect_error(ErrorCode::NonNestedEntitledFamilies, [&] { validate_instance(raw); });
}

TEST(Validate, RejectsJobThatDoesNotFitItsWindow) {
  expect_error(ErrorCode::InvalidInterval, [] { interval_instance({Job{2, 3, 3}}, {R(1)}); });
  EXPECT_NO_THROW(interval_instance({Job{2, 3, 4}}, {R(1)}));
}

TEST(Validate, RejectsNegativeValuesAndBadIndices) {
  expect_error(ErrorCode::NegativeValue,
               [] { validate_instance(make_shared_instance({{R(1), R(-1)}}, 2, FreeSystem{})); });
  expect_error(ErrorCode::IndexOutOfRange,
               [] { validate_instance(make_shared_instance({{R(1), R(1)}}, 2, make_explicit_family({Bundle{0, 5}}))); });
  expect_error(ErrorCode::InvalidShape,
               [] { validate_instance(make_shared_instance({{R(1)}}, 2, FreeSystem{})); });
}

TEST(Validate, AcceptsEmptyInstances) {
  EXPECT_NO_THROW(validate_instance(make_shared_instance({}, 0, FreeSystem{})));
  EXPECT_NO_THROW(validate_instance(make_shared_instance({{}}, 0, FreeSystem{})));
}

TEST(Core, ExplicitFamilyIsNormalisedToMaximalSets) {
  ExplicitFamily f = make_explicit_family({Bundle{0}, Bundle{0, 1}, Bundle{2}, Bundle{0, 1}, Bundle{1, 2}});
  EXPECT_EQ(f.maximal_sets, (std::vector<Bundle>{Bundle{0, 1}, Bundle{1, 2}}));
}

TEST(Core, BundleSetAlgebra) {
  Bundle a{3, 1, 2}, b{2, 5};
  EXPECT_EQ(a.items(), (std::vector<Item>{1, 2, 3}));
  EXPECT_EQ(a | b, (Bundle{1, 2, 3, 5}));
  EXPECT_EQ(a & b, (Bundle{2}));
  EXPECT_EQ(a - b, (Bundle{1, 3}));
  EXPECT_FALSE(a.disjoint_with(b));
  EXPECT_THROW(Bundle({1, 1}), MmsError);
}

// Downward closure and monotone valuations, checked on every subset.
TEST(CoreProperty, HereditaryMembershipAndMonotoneValues) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomParams p;
    p.m = 3 + seed % 6;
    p.n = 2;
    p.seed = seed;
    std::vector<Instance> cases{gen_random_hereditary(p), gen_random_budget(p, false), gen_random_conflict(p),
                                gen_random_interval(p)};
    for (const Instance& inst : cases) {
      ValuationOracle o(inst, 0);
      const std::size_t size = std::size_t{1} << inst.m;
      std::vector<Rational> val(size);
      std::vector<char> indep(size);
      for (bf::Mask s = 0; s < size; ++s) {
        Bundle b = bf::bundle_of(s);
        val[s] = o.exact_value(b);
        indep[s] = o.is_independent(b);
        ASSERT_EQ(indep[s], bf::member(inst.system_of(0), b.items())) << kind_name(inst.system_of(0));
      }
      EXPECT_EQ(val[0], Rational());
      for (bf::Mask s = 0; s < size; ++s)
        for (Item j = 0; j < inst.m; ++j) {
          if (!(s >> j & 1U)) continue;
          bf::Mask t = s & ~(bf::Mask{1} << j);
          EXPECT_LE(val[t], val[s]);
          if (indep[s]) {
            EXPECT_TRUE(indep[t]);
          }
        }
    }
  }
}

// ---------------------------------------------------------------------------
// Exact values
// ---------------------------------------------------------------------------

TEST(Valuation, FreeSystemIsAdditive) {
  Instance inst = make_shared_instance({{R(3), R(4), R(9)}}, 3, FreeSystem{});
  EXPECT_EQ(ValuationOracle(inst, 0).exact_value(Bundle{0, 1}), R(7));
}

TEST(Valuation, GadgetBundleIsWorthThree) {
  Instance inst = gen_two_thirds_bound(2);
  EXPECT_EQ(ValuationOracle(inst, 0).exact_value(Bundle{0, 1, 2}), R(3));
}

TEST(Valuation, BudgetExactValue) {
  Instance inst = budget_instance({3, 3, 3}, 6, {1, 1, 1});
  EXPECT_EQ(ValuationOracle(inst, 0).exact_value(Bundle::range(3)), R(2));
}

TEST(Valuation, GateIsEnforcedForHardVariants) {
  std::vector<Job> jobs(18, Job{1, 1, 30});
  Instance inst = interval_instance(jobs, std::vector<Rational>(18, R(1)));
  expect_error(ErrorCode::ExactnessGateExceeded, [&] { ValuationOracle(inst, 0).exact_value(Bundle::range(18)); });

  BudgetSystem b;
  std::vector<Rational> row;
  for (int j = 0; j < 30; ++j) {
    b.sizes.push_back(R(j + 1, 7));
    row.push_back(R(j + 2, 3));
  }
  b.budget = 5;
  Instance knap = validate_instance(make_shared_instance({row}, 30, b));
  expect_error(ErrorCode::ExactnessGateExceeded, [&] { ValuationOracle(knap, 0).exact_value(Bundle::range(30)); });
}

TEST(Valuation, RejectsErrorBoundOutsideUnitInterval) {
  Instance inst = make_shared_instance({{R(1)}}, 1, FreeSystem{});
  expect_error(ErrorCode::EpsilonOutOfRange, [&] { ValuationOracle(inst, 0, {OracleKind::Approximate, R(1)}); });
  expect_error(ErrorCode::EpsilonOutOfRange, [&] { ValuationOracle(inst, 0, {OracleKind::Approximate, R(-1, 2)}); });
}

// ---------------------------------------------------------------------------
// Approximate subsets
// ---------------------------------------------------------------------------

TEST(Valuation, IndependentQueryIsReturnedUnchanged) {
  Instance inst = budget_instance({1, 2, 3}, 10, {1, 1, 1});
  ValuationOracle o(inst, 0, {OracleKind::Approximate, R(1, 3)});
  IndependentBundle b = o.approx_subset(Bundle{0, 2});
  EXPECT_EQ(b.items, (Bundle{0, 2}));
  EXPECT_EQ(b.value, R(2));
}

TEST(Valuation, KnapsackApproximationExample) {
  Instance inst = budget_instance({4, 3, 3}, 6, {5, 3, 3});
  ValuationOracle o(inst, 0, {OracleKind::Approximate, R(1, 3)});
  IndependentBundle b = o.approx_subset(Bundle::range(3));
  EXPECT_EQ(b.items, (Bundle{1, 2}));
  EXPECT_EQ(b.value, R(6));
  EXPECT_EQ(bf::knapsack({R(4), R(3), R(3)}, {R(5), R(3), R(3)}, R(6), {0, 1, 2}), R(6));
}

TEST(Valuation, BudgetAnswersExactlyWithinTheGateWhenAsked) {
  Instance inst = budget_instance({4, 3, 3}, 6, {5, 3, 3});
  OracleConfig config{OracleKind::Approximate, R(1, 3)};
  config.exact_within_gate = true;
  ValuationOracle o(inst, 0, config);
  EXPECT_EQ(o.approx_subset(Bundle::range(3)).value, R(6));

  config.gate = 2;
  ValuationOracle small_gate(inst, 0, config);
  IndependentBundle b = small_gate.approx_subset(Bundle::range(3));
  EXPECT_GE(b.value, R(2, 3) * R(6));
  EXPECT_TRUE(small_gate.is_independent(b.items));
}

TEST(Valuation, DependenceIsCertifiedByMembershipWhenCheap) {
  Instance inst = budget_instance({2, 2, 2}, 4, {1, 1, 1});
  ValuationOracle loose(inst, 0, {OracleKind::Approximate, R(9, 10)});
  EXPECT_TRUE(loose.certainly_dependent(Bundle::range(3)));
  EXPECT_FALSE(loose.certainly_dependent(Bundle{0, 2}));

  Instance jobs = interval_instance({Job{1, 1, 1}, Job{1, 1, 1}, Job{1, 1, 1}}, {R(1), R(1), R(1)});
  ValuationOracle half(jobs, 0, {OracleKind::Approximate, R(1, 2)});
  EXPECT_TRUE(half.certainly_dependent(Bundle::range(3)));
  ValuationOracle wide(jobs, 0, {OracleKind::Approximate, R(3, 4)});
  EXPECT_FALSE(wide.certainly_dependent(Bundle::range(3)));
}

TEST(Valuation, IntervalApproximationPicksOneOfThreeCollidingJobs) {
  Instance inst = interval_instance({Job{1, 1, 1}, Job{1, 1, 1}, Job{1, 1, 1}}, {R(1), R(1), R(1)});
  ValuationOracle o(inst, 0, {OracleKind::Approximate, R(1, 2)});
  IndependentBundle b = o.approx_subset(Bundle::range(3));
  EXPECT_EQ(b.items.size(), 1u);
  EXPECT_EQ(b.value, R(1));
  EXPECT_EQ(bf::value(inst, 0, Bundle::range(3)), R(1));
}

// ---------------------------------------------------------------------------
// Reduction to an independent subset
// ---------------------------------------------------------------------------

TEST(Valuation, ReduceKeepsIndependentBundle) {
  Instance inst = make_shared_instance({{R(1), R(2), R(3)}}, 3, make_explicit_family({Bundle{0, 1, 2}}));
  IndependentBundle b = ValuationOracle(inst, 0).reduce_to_independent(Bundle{0, 2});
  EXPECT_EQ(b.items, (Bundle{0, 2}));
  EXPECT_EQ(b.value, R(4));
}

TEST(Valuation, ReduceOverTwoOverlappingPairs) {
  Instance inst = make_shared_instance(unit_values(1, 3), 3, make_explicit_family({Bundle{0, 1}, Bundle{1, 2}}));
  ValuationOracle o(inst, 0);
  IndependentBundle b = o.reduce_to_independent(Bundle::range(3));
  EXPECT_EQ(b.value, R(2));
  EXPECT_TRUE(b.items == (Bundle{0, 1}) || b.items == (Bundle{1, 2}));
  EXPECT_TRUE(o.is_independent(b.items));
  // Ascending scan drops item 1 first.
  EXPECT_EQ(b.items, (Bundle{1, 2}));
}

TEST(Valuation, ReduceDropsZeroValueGadgetItem) {
  Instance inst = gen_two_thirds_bound(2);
  IndependentBundle b = ValuationOracle(inst, 0).reduce_to_independent(Bundle{0, 1, 2, 3});
  EXPECT_EQ(b.items, (Bundle{0, 1, 2}));
  EXPECT_EQ(b.value, R(3));
}

// ---------------------------------------------------------------------------
// Singletons and pairs
// ---------------------------------------------------------------------------

TEST(Valuation, SingletonIndependence) {
  Instance free = make_shared_instance(unit_values(1, 3), 3, FreeSystem{});
  for (Item j = 0; j < 3; ++j) EXPECT_TRUE(ValuationOracle(free, 0).singleton_independent(j));

  Instance fam = make_shared_instance(unit_values(1, 3), 3, make_explicit_family({Bundle{0, 1}}));
  EXPECT_FALSE(ValuationOracle(fam, 0).singleton_independent(2));
  EXPECT_EQ(ValuationOracle(fam, 0).singleton_value(2), R(0));

  Instance knap = budget_instance({7, 2}, 5, {1, 1});
  EXPECT_FALSE(ValuationOracle(knap, 0).singleton_independent(0));
  EXPECT_TRUE(ValuationOracle(knap, 0).singleton_independent(1));
  EXPECT_EQ(bf::knapsack({R(7)}, {R(1)}, R(5), {0}), R(0));
}

TEST(Valuation, ZeroValueSingletonIsIndeterminateForApproximateOracles) {
  Instance inst = make_shared_instance({{R(0), R(1)}}, 2, FreeSystem{});
  ValuationOracle approx(inst, 0, {OracleKind::Approximate, R(1, 3)});
  expect_error(ErrorCode::IndeterminateZeroValueSingleton, [&] { approx.singleton_independent(0); });
  EXPECT_TRUE(approx.singleton_independent(1));
  EXPECT_TRUE(ValuationOracle(inst, 0).singleton_independent(0));
}

TEST(Valuation, PairIndependence) {
  Instance wide = interval_instance({Job{1, 1, 2}, Job{1, 1, 2}}, {R(1), R(1)});
  EXPECT_TRUE(ValuationOracle(wide, 0).pair_independent(0, 1));
  Instance tight = interval_instance({Job{1, 1, 1}, Job{1, 1, 1}}, {R(1), R(1)});
  EXPECT_FALSE(ValuationOracle(tight, 0).pair_independent(0, 1));
  Instance graph = make_shared_instance(unit_values(1, 3), 3, make_conflict_graph(3, {{0, 1}}));
  EXPECT_FALSE(ValuationOracle(graph, 0).pair_independent(0, 1));
  EXPECT_TRUE(ValuationOracle(graph, 0).pair_independent(0, 2));
}

TEST(Valuation, PairIndependenceNeedsTheOtherOrder) {
  // Job 1 only fits late, job 2 only early: feasible only as (2, 1).
  Instance inst = interval_instance({Job{2, 2, 3}, Job{1, 1, 1}}, {R(1), R(1)});
  EXPECT_TRUE(ValuationOracle(inst, 0).pair_independent(0, 1));
  EXPECT_TRUE(bf::schedulable(std::get<IntervalJobs>(inst.system_of(0)).jobs, {0, 1}));
}

// ---------------------------------------------------------------------------
// Oracle contracts against brute force
// ---------------------------------------------------------------------------

TEST(ValuationProperty, KnapsackApproximationMeetsItsRatio) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = bf::pick(rng, 1, 12);
    BudgetSystem b;
    std::vector<Rational> row;
    Rational total;
    for (std::size_t j = 0; j < m; ++j) {
      b.sizes.push_back(R(static_cast<long>(bf::pick(rng, 1, 20)), static_cast<long>(bf::pick(rng, 1, 3))));
      row.push_back(R(static_cast<long>(bf::pick(rng, 0, 30)), static_cast<long>(bf::pick(rng, 1, 4))));
      total += b.sizes.back();
    }
    b.budget = total * R(static_cast<long>(bf::pick(rng, 1, 9)), 10);
    Instance inst = validate_instance(make_shared_instance({row}, m, b));
    const Rational eps = R(1, static_cast<long>(bf::pick(rng, 2, 6)));
    ValuationOracle o(inst, 0, {OracleKind::Approximate, eps});
    std::vector<Item> all = Bundle::range(m).items();
    Rational opt = bf::knapsack(b.sizes, row, b.budget, all);
    IndependentBundle got = o.approx_subset(Bundle::range(m));
    EXPECT_TRUE(bf::member(b, got.items.items()));
    EXPECT_GE(got.value, (R(1) - eps) * opt);
    EXPECT_EQ(got.value, o.item_sum(got.items));
    EXPECT_EQ(ValuationOracle(inst, 0).exact_value(Bundle::range(m)), opt);
    OracleConfig within{OracleKind::Approximate, eps};
    within.exact_within_gate = true;
    EXPECT_EQ(ValuationOracle(inst, 0, within).approx_subset(Bundle::range(m)).value, opt);
  }
}

TEST(ValuationProperty, IntervalApproximationIsFeasibleAndHalfOptimal) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    RandomParams p;
    p.m = 1 + seed % 8;
    p.n = 1;
    p.seed = seed;
    p.value_den = 5;
    Instance inst = gen_random_interval(p);
    const auto& jobs = std::get<IntervalJobs>(inst.system_of(0)).jobs;
    ValuationOracle o(inst, 0, {OracleKind::Approximate, R(1, 2)});
    IndependentBundle got = o.approx_subset(Bundle::range(inst.m));
    EXPECT_TRUE(bf::schedulable(jobs, got.items.items()));
    Rational opt = bf::value(inst, 0, Bundle::range(inst.m));
    EXPECT_GE(got.value, opt / R(2));
    EXPECT_EQ(ValuationOracle(inst, 0).exact_value(Bundle::range(inst.m)), opt);
    auto schedule = schedule_subset(jobs, got.items, kDefaultScheduleGate);
    ASSERT_TRUE(schedule.has_value());
    EXPECT_TRUE(schedule_is_valid(jobs, *schedule));
  }
}

TEST(ValuationProperty, ConflictExactValueIsMaximumWeightIndependentSet) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = bf::pick(rng, 1, 16);
    std::vector<std::pair<Item, Item>> edges;
    const std::size_t density = bf::pick(rng, 1, 6);
    for (Item u = 0; u < m; ++u)
      for (Item v = u + 1; v < m; ++v)
        if (rng() % 10 < density) edges.emplace_back(u, v);
    std::vector<Rational> row;
    for (std::size_t j = 0; j < m; ++j) row.push_back(R(static_cast<long>(bf::pick(rng, 0, 12)), 4));
    Instance inst = validate_instance(make_shared_instance({row}, m, make_conflict_graph(m, edges)));
    ValuationOracle o(inst, 0);
    Bundle best = o.exact_subset(Bundle::range(m));
    EXPECT_TRUE(o.is_independent(best));
    const ConflictGraph& g = std::get<ConflictGraph>(inst.system_of(0));
    Rational brute;
    for (bf::Mask s = 0; s < (bf::Mask{1} << m); ++s) {
      bool ok = true;
      for (auto [u, v] : g.edges)
        if ((s >> u & 1U) && (s >> v & 1U)) ok = false;
      if (!ok) continue;
      Rational sum;
      for (Item j : bf::items_of(s)) sum += row[j];
      brute = std::max(brute, sum);
    }
    EXPECT_EQ(o.item_sum(best), brute);
  }
}

TEST(ValuationProperty, ReductionIsIndependentEqualValueAndCheap) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomParams p;
    p.m = 4 + seed % 5;
    p.n = 1;
    p.seed = seed;
    for (const Instance& inst : {gen_random_hereditary(p), gen_random_budget(p, false), gen_random_conflict(p),
                                 gen_random_interval(p)}) {
      ValuationOracle o(inst, 0);
      for (bf::Mask s = 0; s < (bf::Mask{1} << inst.m); s += 3) {
        Bundle b = bf::bundle_of(s);
        IndependentBundle r = o.reduce_to_independent(b);
        EXPECT_TRUE(r.items.subset_of(b));
        EXPECT_TRUE(bf::member(inst.system_of(0), r.items.items()));
        EXPECT_EQ(r.value, bf::value(inst, 0, b));
        EXPECT_LE(r.queries, 2 * b.size() + 1);
      }
    }
  }
}

TEST(ValuationProperty, AdversarialOracleSitsOnTheBoundary) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomParams p;
    p.m = 6;
    p.n = 1;
    p.seed = seed;
    p.density = 0.7;
    Instance inst = gen_random_hereditary(p);
    const Rational eps = R(1, 3);
    ValuationOracle adv(inst, 0, {OracleKind::Adversarial, eps});
    bf::Table t = bf::table(inst, 0);
    for (bf::Mask s = 0; s < (bf::Mask{1} << inst.m); ++s) {
      IndependentBundle got = adv.approx_subset(bf::bundle_of(s));
      const bf::Mask g = bf::mask_of(got.items);
      EXPECT_EQ(g & ~s, 0u);
      EXPECT_TRUE(t.indep[g]);
      EXPECT_GE(got.value, (R(1) - eps) * t.value[s]);
      // No independent subset of the query is cheaper while still within the
      // bound; queries with at most two valued items are answered exactly.
      std::size_t valued = 0;
      for (Item j : bf::items_of(s)) valued += inst.values[0][j].sign() > 0 ? 1 : 0;
      if (valued > 2)
        for (bf::Mask sub = s;; sub = (sub - 1) & s) {
          if (t.indep[sub] && t.sum[sub] >= (R(1) - eps) * t.value[s]) {
            EXPECT_GE(t.sum[sub], got.value);
          }
          if (sub == 0) break;
        }
    }
  }
}

TEST(ValuationProperty, ApproximateOraclesMeetTheirBoundOnEveryVariant) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomParams p;
    p.m = 7;
    p.n = 1;
    p.seed = seed;
    for (const Instance& inst : {gen_random_hereditary(p), gen_random_budget(p, false), gen_random_conflict(p),
                                 gen_random_interval(p)}) {
      for (Rational eps : {R(0), R(1, 4), R(1, 2)}) {
        ValuationOracle o(inst, 0, {OracleKind::Approximate, eps});
        for (bf::Mask s = 0; s < (bf::Mask{1} << inst.m); s += 5) {
          Bundle b = bf::bundle_of(s);
          IndependentBundle got = o.approx_subset(b);
          EXPECT_TRUE(got.items.subset_of(b));
          EXPECT_TRUE(bf::member(inst.system_of(0), got.items.items()));
          EXPECT_GE(got.value, (R(1) - eps) * bf::value(inst, 0, b));
        }
      }
    }
  }
}
