#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "mms/json_io.hpp"
#include "mms/mms.hpp"
#include "support/brute_force.hpp"

using namespace mms;
using json_io::json;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MmsError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no MmsError thrown";
  return ErrorCode::InvalidShape;
}

}  // namespace

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

TEST(Generators, TwoThirdsGadgetShape) {
  Instance inst = gen_two_thirds_bound(2);
  EXPECT_EQ(inst.m, 8u);
  const auto& fam = std::get<ExplicitFamily>(inst.system_of(0));
  std::vector<Bundle> want{Bundle{0, 1, 2}, Bundle{2, 3, 5}, Bundle{4, 5, 6}, Bundle{1, 6, 7}};
  std::vector<Bundle> got = fam.maximal_sets;
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, want);
  EXPECT_EQ(inst.values[0], (std::vector<Rational>{R(1), R(1), R(1), R(0), R(1), R(1), R(1), R(0)}));
  EXPECT_EQ(inst.values[1], (std::vector<Rational>{R(0), R(1), R(1), R(1), R(0), R(1), R(1), R(1)}));
}

TEST(Generators, TwoThirdsGadgetSplitsAgentsByR) {
  Instance inst = gen_two_thirds_bound(3, 2);
  EXPECT_EQ(inst.values[1][3], R(0));
  EXPECT_EQ(inst.values[2][0], R(0));
  EXPECT_EQ(inst.values[2][3], R(1));
  EXPECT_EQ(code_of([] { gen_two_thirds_bound(3, 0); }), ErrorCode::InvalidShape);
  EXPECT_EQ(code_of([] { gen_two_thirds_bound(3, 3); }), ErrorCode::InvalidShape);
  EXPECT_EQ(code_of([] { gen_two_thirds_bound(1); }), ErrorCode::InvalidShape);
}

TEST(Generators, TwoThirdsGadgetIsTight) {
  Instance inst = gen_two_thirds_bound(2);
  std::vector<Rational> mu = bf::all_mms(inst);
  EXPECT_EQ(mu, (std::vector<Rational>{R(3), R(3)}));
  EXPECT_EQ(bf::best_min_ratio(inst, mu), R(2, 3));
}

TEST(Generators, AsymmetricGadgetIsTight) {
  for (std::size_t n : {2u, 3u}) {
    Instance inst = gen_asymmetric_half(n);
    std::vector<Rational> mu = bf::all_mms(inst);
    for (const Rational& x : mu) EXPECT_EQ(x, R(2));
    EXPECT_EQ(bf::best_min_ratio(inst, mu), R(1, 2)) << n;
    SolveResult res = solve_existence(inst);
    EXPECT_EQ(res.alpha, R(1, 2));
    for (Agent i = 0; i < n; ++i) EXPECT_GE(bf::value(inst, i, res.allocation.bundles[i]), R(1));
  }
}

TEST(Generators, ThreePartitionInstances) {
  Instance yes = gen_three_partition({1, 2, 3, 2, 2, 2});
  EXPECT_EQ(yes.n, 2u);
  EXPECT_EQ(bf::mms(yes, 0).mu, R(3));
  Instance no = gen_three_partition({1, 1, 1, 3, 3, 3});
  EXPECT_LT(bf::mms(no, 0).mu, R(3));
  EXPECT_EQ(code_of([] { gen_three_partition({1, 2}); }), ErrorCode::NotTripleMultiple);
  EXPECT_EQ(code_of([] { gen_three_partition({1, 1, 2, 1, 1, 1}); }), ErrorCode::NotDivisible);
  EXPECT_EQ(code_of([] { gen_three_partition({0, 1, 1}); }), ErrorCode::NegativeValue);
}

TEST(GeneratorsProperty, ThreePartitionMatchesShareOfThree) {
  std::mt19937_64 rng(5);
  std::size_t yes = 0, no = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = bf::pick(rng, 1, 3);
    std::vector<std::int64_t> a(3 * n);
    std::int64_t sum = 0;
    for (auto& x : a) sum += (x = static_cast<std::int64_t>(bf::pick(rng, 1, 6)));
    a.back() += (static_cast<std::int64_t>(n) - sum % static_cast<std::int64_t>(n)) % static_cast<std::int64_t>(n);
    Instance inst = gen_three_partition(a);
    const bool solvable = bf::three_partition(a);
    (solvable ? yes : no) += 1;
    EXPECT_EQ(compute_mms_exact(inst, 0, n).mu == R(3), solvable);
  }
  EXPECT_GT(yes, 0u);
  EXPECT_GT(no, 0u);
}

TEST(Generators, DeterministicPerSeed) {
  RandomParams p;
  p.m = 7;
  p.n = 3;
  p.seed = 17;
  auto dump = [](const Instance& i) { return json_io::instance_to(i).dump(); };
  EXPECT_EQ(dump(gen_random_hereditary(p)), dump(gen_random_hereditary(p)));
  EXPECT_EQ(dump(gen_random_budget(p, true)), dump(gen_random_budget(p, true)));
  EXPECT_EQ(dump(gen_random_conflict(p)), dump(gen_random_conflict(p)));
  EXPECT_EQ(dump(gen_random_interval(p)), dump(gen_random_interval(p)));
  RandomParams q = p;
  q.seed = 18;
  EXPECT_NE(dump(gen_random_hereditary(p)), dump(gen_random_hereditary(q)));
}

TEST(GeneratorsProperty, RandomFamiliesAreWellFormed) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    RandomParams p;
    p.m = 1 + seed % 10;
    p.n = 2 + seed % 3;
    p.seed = seed;
    Instance conflict = gen_random_conflict(p);
    for (const auto& nb : std::get<ConflictGraph>(conflict.system_of(0)).adjacency) EXPECT_LT(nb.size(), p.n);
    Instance interval = gen_random_interval(p);
    for (const Job& j : std::get<IntervalJobs>(interval.system_of(0)).jobs) {
      EXPECT_GE(j.release, 1);
      EXPECT_LE(j.release + j.processing - 1, j.deadline);
    }
    Instance budget = validate_instance(gen_random_budget(p, true));
    EXPECT_EQ(budget.layout, Layout::Entitled);
    for (const Instance* inst : {&conflict, &interval, &budget})
      for (const auto& row : inst->values)
        for (const Rational& v : row) EXPECT_TRUE(v.sign() >= 0 && v <= R(1));
  }
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

TEST(Json, RoundTripsEveryInstanceKind) {
  RandomParams p;
  p.m = 6;
  p.n = 3;
  p.seed = 4;
  std::vector<Instance> all{gen_two_thirds_bound(2), gen_asymmetric_half(3), gen_three_partition({1, 2, 3}),
                            gen_random_hereditary(p), gen_random_budget(p, false), gen_random_budget(p, true),
                            gen_random_conflict(p), gen_random_interval(p),
                            make_shared_instance({{R(1, 3)}}, 1, FreeSystem{})};
  for (const Instance& inst : all) {
    json j = json_io::instance_to(inst);
    Instance back = json_io::instance_from(j);
    EXPECT_EQ(json_io::instance_to(back), j);
    EXPECT_EQ(back.values, inst.values);
  }
}

TEST(Json, EntitledOrderSurvives) {
  Instance inst = gen_asymmetric_half(2);
  json j = json_io::instance_to(inst);
  j["asymmetric"] = json::array({{{"kind", "budget"}, {"sizes", {1, 1, 1, 1}}, {"budget", 1}},
                                 {{"kind", "budget"}, {"sizes", {1, 1, 1, 1}}, {"budget", "5/2"}}});
  j["entitled"] = {1, 2};
  Instance back = json_io::instance_from(j);
  EXPECT_TRUE(back.order_known());
  EXPECT_EQ(back.entitled_order, (std::vector<Agent>{0, 1}));
  EXPECT_EQ(json_io::instance_to(back)["entitled"], j["entitled"]);
  j["entitled"] = "yes";
  EXPECT_EQ(code_of([&] { json_io::instance_from(j); }), ErrorCode::InvalidShape);
}

TEST(Json, RationalsAndIndices) {
  EXPECT_EQ(json_io::rational_from(json("3/6")), R(1, 2));
  EXPECT_EQ(json_io::rational_from(json(4)), R(4));
  EXPECT_EQ(json_io::rational_from(json(0.25)), R(1, 4));
  EXPECT_EQ(code_of([] { json_io::rational_from(json::array()); }), ErrorCode::InvalidShape);
  EXPECT_EQ(code_of([] { json_io::bundle_from(json{0}, 3); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([] { json_io::bundle_from(json{4}, 3); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(json_io::bundle_to(json_io::bundle_from(json{3, 1}, 3)), (json{1, 3}));
  json sys = {{"kind", "matroid"}};
  EXPECT_EQ(code_of([&] { json_io::system_from(sys, 2); }), ErrorCode::UnsupportedSystem);
}

TEST(Json, AllocationRoundTrip) {
  Instance inst = gen_two_thirds_bound(2);
  Allocation a = solve_two_fifths(inst).allocation;
  json j = json_io::allocation_to(inst, a);
  EXPECT_EQ(json_io::allocation_from(j, inst).bundles, a.bundles);
  j["bundles"].push_back(json::array());
  EXPECT_EQ(code_of([&] { json_io::allocation_from(j, inst); }), ErrorCode::InvalidShape);
}

TEST(Json, TraceHasOneLinePerRoundAndFailure) {
  Instance inst = gen_two_thirds_bound(3);
  SolveResult res = solve_two_fifths(inst);
  std::size_t rounds = 0, failures = 0;
  for (const auto& run : res.runs) {
    rounds += run.rounds.size();
    failures += run.success ? 0 : 1;
  }
  auto lines = json_io::trace_lines(res);
  EXPECT_EQ(lines.size(), rounds + failures);
  std::size_t with_estimates = 0;
  for (const json& l : lines) with_estimates += l.contains("estimate_after") ? 1 : 0;
  EXPECT_EQ(with_estimates, res.history.size());
}

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(MMS_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("mms_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const json& j) const { std::ofstream(path(name)) << j.dump(); }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateSolveVerify) {
  ASSERT_EQ(run_cli("gen two-thirds --n 2 --out " + path("g.json")).code, 0);
  CliRun solved = run_cli("solve " + path("g.json") + " --mode two_fifths --out " + path("a.json"));
  ASSERT_EQ(solved.code, 0);
  std::ifstream in(path("a.json"));
  json alloc = json::parse(in);
  EXPECT_EQ(alloc["mode"], "two_fifths");
  EXPECT_EQ(alloc["alpha"], "2/5");
  EXPECT_EQ(alloc["bundles"].size(), 2u);

  CliRun ok = run_cli("verify " + path("g.json") + " " + path("a.json") + " --alpha 2/5");
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(json::parse(ok.out)["pass"].get<bool>());
  CliRun too_much = run_cli("verify " + path("g.json") + " " + path("a.json") + " --alpha 1");
  EXPECT_EQ(too_much.code, 1);
}

TEST_F(Cli, ShareQueryAndGate) {
  ASSERT_EQ(run_cli("gen two-thirds --n 2 --out " + path("g.json")).code, 0);
  CliRun r = run_cli("mms " + path("g.json") + " --agent 1");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["mu"], "3");
  EXPECT_EQ(j["lower"], "1");
  EXPECT_EQ(j["upper"], "8");
  EXPECT_EQ(j["witness"].size(), 2u);
  CliRun gated = run_cli("mms " + path("g.json") + " --agent 1 --gate 4");
  EXPECT_EQ(gated.code, 3);
  EXPECT_TRUE(json::parse(gated.out)["gate_exceeded"].get<bool>());
}

TEST_F(Cli, CertifiedSolveAndTrace) {
  ASSERT_EQ(run_cli("gen random --kind explicit --n 3 --m 7 --seed 9 --out " + path("r.json")).code, 0);
  CliRun r = run_cli("solve " + path("r.json") + " --mode existence --certify --trace --trace-out " + path("t.jsonl"));
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["certificates"].size(), 3u);
  std::ifstream trace(path("t.jsonl"));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(trace, line)) {
    EXPECT_TRUE(json::parse(line).contains("run"));
    ++lines;
  }
  EXPECT_GT(lines, 0u);
}

TEST_F(Cli, AdapterModesAndConfig) {
  ASSERT_EQ(run_cli("gen random --kind interval --n 2 --m 6 --seed 3 --out " + path("i.json")).code, 0);
  CliRun r = run_cli("solve " + path("i.json") + " --mode intervals");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["schedules"].size(), 2u);

  ASSERT_EQ(run_cli("gen random --kind conflict --n 3 --m 6 --seed 3 --out " + path("c.json")).code, 0);
  CliRun c = run_cli("solve " + path("c.json") + " --mode conflicts");
  ASSERT_EQ(c.code, 0);
  EXPECT_TRUE(json::parse(c.out)["complete"].get<bool>());

  write("cfg.json", {{"mode", "alpha"}, {"epsilon", "1/2"}});
  CliRun a = run_cli("solve " + path("i.json") + " --config " + path("cfg.json"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(json::parse(a.out)["alpha"], "2/7");
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run_cli("gen three-partition --a 1,1,2,1,1,1").code, 2);
  write("bad.json", {{"n", 1}, {"m", 1}, {"values", {{"-1"}}}, {"system", {{"kind", "free"}}}});
  EXPECT_EQ(run_cli("solve " + path("bad.json")).code, 2);
  EXPECT_EQ(run_cli("solve " + path("missing.json")).code, 2);
  EXPECT_EQ(run_cli("solve").code, 2);
  EXPECT_EQ(run_cli("--help").code, 0);
}
