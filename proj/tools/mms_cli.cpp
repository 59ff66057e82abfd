#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mms/json_io.hpp"
#include "mms/mms.hpp"

namespace {

using mms::json_io::json;

enum Exit { kOk = 0, kFailed = 1, kInputError = 2, kGateExceeded = 3 };

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return json::parse(in);
}

void emit(const json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
  out << text;
}

std::vector<std::int64_t> parse_numbers(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (piece.empty()) continue;
    out.push_back(std::stoll(piece));
  }
  return out;
}

// --------------------------------------------------------------------------
// gen
// --------------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::size_t n = 2, r = 1, m = 8;
  std::string a;
  std::uint64_t seed = 1;
  std::string density = "1/2";
  std::int64_t den = 4;
  std::string kind = "explicit";
  std::string out;
};

int run_gen(const GenArgs& g) {
  mms::Instance inst;
  if (g.family == "two-thirds") {
    inst = mms::gen_two_thirds_bound(g.n, g.r);
  } else if (g.family == "asym-half") {
    inst = mms::gen_asymmetric_half(g.n);
  } else if (g.family == "three-partition") {
    inst = mms::gen_three_partition(parse_numbers(g.a));
  } else {
    mms::RandomParams p{g.m, g.n, mms::Rational::parse(g.density).to_double(), g.den, g.seed};
    if (g.kind == "explicit") inst = mms::gen_random_hereditary(p);
    else if (g.kind == "budget") inst = mms::gen_random_budget(p, false);
    else if (g.kind == "budget-entitled") inst = mms::gen_random_budget(p, true);
    else if (g.kind == "conflict") inst = mms::gen_random_conflict(p);
    else if (g.kind == "interval") inst = mms::gen_random_interval(p);
    else throw std::invalid_argument("unknown random kind '" + g.kind + "'");
  }
  emit(mms::json_io::instance_to(mms::validate_instance(inst)), g.out);
  return kOk;
}

// --------------------------------------------------------------------------
// solve
// --------------------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string config;
  std::string mode;
  std::string epsilon;
  bool trace = false;
  std::string trace_out;
  bool certify = false;
  bool adversarial = false;
  std::size_t gate = mms::kBruteForceGate;
  std::string out;
};

int run_solve(SolveArgs s) {
  if (!s.config.empty()) {
    json cfg = read_json(s.config);
    if (s.mode.empty() && cfg.contains("mode")) s.mode = cfg["mode"].get<std::string>();
    if (s.epsilon.empty() && cfg.contains("epsilon")) s.epsilon = mms::json_io::rational_from(cfg["epsilon"]).str();
    if (cfg.value("trace", false)) s.trace = true;
  }
  if (s.mode.empty()) s.mode = "two_fifths";

  const mms::Instance inst = mms::json_io::instance_from(read_json(s.instance));
  mms::SolveOptions opt;
  opt.gate = s.gate;
  opt.adversarial = s.adversarial;

  std::optional<mms::ConstraintReport> report;
  mms::SolveResult res;
  if (s.mode == "existence") {
    res = mms::solve_existence(inst, opt);
  } else if (s.mode == "two_fifths") {
    res = mms::solve_two_fifths(inst, opt);
  } else if (s.mode == "alpha") {
    res = mms::solve_alpha(inst, s.epsilon.empty() ? mms::Rational(0) : mms::Rational::parse(s.epsilon), opt);
  } else if (s.mode == "entitled") {
    res = mms::solve_entitled(inst, opt);
  } else if (s.mode == "budget") {
    report = mms::solve_budget_adapter(inst, opt);
  } else if (s.mode == "conflicts") {
    report = mms::solve_conflicts_adapter(inst, opt);
  } else if (s.mode == "intervals") {
    report = mms::solve_intervals_adapter(inst, opt);
  } else {
    throw std::invalid_argument("unknown mode '" + s.mode + "'");
  }
  if (report) res = report->result;

  int code = kOk;
  mms::Allocation& alloc = res.allocation;
  if (s.certify) {
    if (inst.m > s.gate) {
      std::cerr << "certify: " << inst.m << " items exceed gate " << s.gate << ", no certificates attached\n";
    } else {
      for (mms::Agent i = 0; i < inst.n; ++i) {
        mms::Rational mu = mms::compute_mms_exact(inst, i, inst.n, s.gate).mu;
        mms::Rational value = mms::ValuationOracle(inst, i).exact_value(alloc.bundles[i]);
        mms::Rational ratio = mu.sign() == 0 ? mms::Rational(1) : value / mu;
        alloc.certificates.push_back(mms::Certificate{value, mu, ratio});
        if (ratio < res.alpha) code = kFailed;
      }
    }
  }

  json doc = mms::json_io::allocation_to(inst, alloc);
  doc["mode"] = res.mode;
  doc["alpha"] = res.alpha.str();
  if (report && !report->schedules.empty()) doc["schedules"] = mms::json_io::schedules_to(report->schedules);
  if (report && !report->completion.empty()) {
    doc["completion"] = json::array();
    for (const auto& step : report->completion) doc["completion"].push_back({step.item + 1, step.agent + 1});
  }
  emit(doc, s.out);

  std::ostream& log = std::cerr;
  log << "mode " << res.mode << ", guarantee " << res.alpha << "\n";
  for (mms::Agent i = 0; i < inst.n; ++i) {
    log << "agent " << i + 1 << ": value " << mms::ValuationOracle(inst, i).item_sum(alloc.bundles[i]);
    if (!alloc.certificates.empty() && alloc.certificates[i])
      log << ", mms " << alloc.certificates[i]->mms << ", ratio " << alloc.certificates[i]->ratio;
    if (!res.adjustments.empty() && res.adjustments[i] > 0) log << ", adjustments " << res.adjustments[i];
    log << "\n";
  }
  if (report) {
    for (mms::Agent i = 0; i < inst.n; ++i)
      if (!report->feasible[i]) {
        log << "agent " << i + 1 << ": bundle violates its constraint\n";
        code = kFailed;
      }
  }

  if (s.trace) {
    std::ofstream file;
    if (!s.trace_out.empty()) {
      file.open(s.trace_out);
      if (!file) throw std::invalid_argument("cannot write '" + s.trace_out + "'");
    }
    std::ostream& sink = s.trace_out.empty() ? std::cerr : static_cast<std::ostream&>(file);
    for (const json& line : mms::json_io::trace_lines(res)) sink << line.dump() << "\n";
  }
  return code;
}

// --------------------------------------------------------------------------
// mms
// --------------------------------------------------------------------------

int run_mms(const std::string& path, std::size_t agent, std::size_t gate, const std::string& out_path) {
  const mms::Instance inst = mms::json_io::instance_from(read_json(path));
  if (agent < 1 || agent > inst.n) throw mms::MmsError(mms::ErrorCode::IndexOutOfRange, "no such agent");
  const mms::Agent i = agent - 1;
  json doc;
  doc["agent"] = agent;
  mms::MmsBounds bounds = mms::mms_bounds(inst, i);
  doc["lower"] = bounds.lower.str();
  doc["upper"] = bounds.upper.str();
  if (bounds.fewer_items) doc["fewer_items_than_agents"] = true;
  if (inst.m > gate) {
    doc["gate_exceeded"] = true;
    emit(doc, out_path);
    std::cerr << inst.m << " items exceed the brute-force gate of " << gate << "; bounds only\n";
    return kGateExceeded;
  }
  mms::MmsRecord rec = mms::compute_mms_exact(inst, i, inst.n, gate);
  doc["mu"] = rec.mu.str();
  doc["witness"] = json::array();
  for (const mms::Bundle& b : rec.witness) doc["witness"].push_back(mms::json_io::bundle_to(b));
  emit(doc, out_path);
  return kOk;
}

// --------------------------------------------------------------------------
// verify
// --------------------------------------------------------------------------

int run_verify(const std::string& inst_path, const std::string& alloc_path, const std::string& alpha_text,
               std::size_t gate, bool feasible, const std::string& out_path) {
  const mms::Instance inst = mms::json_io::instance_from(read_json(inst_path));
  const mms::Allocation alloc = mms::json_io::allocation_from(read_json(alloc_path), inst);
  const mms::Rational alpha = mms::Rational::parse(alpha_text);
  mms::VerifyOptions opt;
  opt.gate = gate;
  opt.require_feasible = feasible;
  mms::VerifyReport rep = mms::verify_allocation(inst, alloc, alpha, opt);

  json doc;
  doc["alpha"] = alpha.str();
  doc["pass"] = rep.pass;
  doc["disjoint"] = rep.disjoint;
  doc["complete_ok"] = rep.complete_ok;
  doc["agents"] = json::array();
  bool missing = false;
  for (mms::Agent i = 0; i < inst.n; ++i) {
    const mms::AgentReport& a = rep.agents[i];
    json row;
    row["agent"] = i + 1;
    row["value"] = a.value.str();
    row["mms"] = a.mu ? json(a.mu->str()) : json(nullptr);
    row["ratio"] = a.ratio ? json(a.ratio->str()) : json(nullptr);
    row["feasible"] = a.feasible;
    row["pass"] = a.pass;
    missing = missing || !a.mu;
    doc["agents"].push_back(std::move(row));
  }
  emit(doc, out_path);
  if (rep.pass) return kOk;
  return missing && alpha.sign() > 0 ? kGateExceeded : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate maximin-share allocations under hereditary set systems"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance as JSON");
  gen_cmd->add_option("family", gen.family, "two-thirds | asym-half | three-partition | random")
      ->required()
      ->check(CLI::IsMember({"two-thirds", "asym-half", "three-partition", "random"}));
  gen_cmd->add_option("--n", gen.n, "number of agents");
  gen_cmd->add_option("--r", gen.r, "two-thirds: agents of the first type");
  gen_cmd->add_option("--a", gen.a, "three-partition: comma-separated numbers");
  gen_cmd->add_option("--m", gen.m, "random: number of items");
  gen_cmd->add_option("--seed", gen.seed, "random: seed");
  gen_cmd->add_option("--density", gen.density, "random: set density or edge probability");
  gen_cmd->add_option("--den", gen.den, "random: value denominator");
  gen_cmd->add_option("--kind", gen.kind, "random: explicit | budget | budget-entitled | conflict | interval");
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute an allocation");
  solve_cmd->add_option("instance", solve.instance, "instance JSON")->required();
  solve_cmd->add_option("--config", solve.config, "solver configuration JSON");
  solve_cmd->add_option("--mode", solve.mode,
                        "existence | two_fifths | alpha | entitled | budget | conflicts | intervals");
  solve_cmd->add_option("--epsilon", solve.epsilon, "oracle error bound for alpha mode (p/q or decimal)");
  solve_cmd->add_flag("--trace", solve.trace, "emit lone-divider rounds as JSON lines");
  solve_cmd->add_option("--trace-out", solve.trace_out, "trace file (default stderr)");
  solve_cmd->add_flag("--certify", solve.certify, "attach exact MMS values and ratios");
  solve_cmd->add_flag("--adversarial", solve.adversarial, "use worst-case oracles within the error bound");
  solve_cmd->add_option("--gate", solve.gate, "brute-force item limit");
  solve_cmd->add_option("--out", solve.out, "allocation file (default stdout)");

  std::string mms_instance, mms_out;
  std::size_t mms_agent = 1, mms_gate = mms::kBruteForceGate;
  auto* mms_cmd = app.add_subcommand("mms", "Exact maximin share of one agent");
  mms_cmd->add_option("instance", mms_instance, "instance JSON")->required();
  mms_cmd->add_option("--agent", mms_agent, "agent (1-based)");
  mms_cmd->add_option("--gate", mms_gate, "brute-force item limit");
  mms_cmd->add_option("--out", mms_out, "output file (default stdout)");

  std::string v_instance, v_alloc, v_alpha = "0", v_out;
  std::size_t v_gate = mms::kBruteForceGate;
  bool v_feasible = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check an allocation against alpha times each MMS");
  verify_cmd->add_option("instance", v_instance, "instance JSON")->required();
  verify_cmd->add_option("allocation", v_alloc, "allocation JSON")->required();
  verify_cmd->add_option("--alpha", v_alpha, "required fraction of each MMS");
  verify_cmd->add_option("--gate", v_gate, "brute-force item limit");
  verify_cmd->add_flag("--feasible", v_feasible, "also require independent bundles");
  verify_cmd->add_option("--out", v_out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*mms_cmd) return run_mms(mms_instance, mms_agent, mms_gate, mms_out);
    if (*verify_cmd) return run_verify(v_instance, v_alloc, v_alpha, v_gate, v_feasible, v_out);
  } catch (const mms::MmsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool gate = e.code() == mms::ErrorCode::BruteForceGateExceeded ||
                      e.code() == mms::ErrorCode::ExactnessGateExceeded;
    return gate ? kGateExceeded : kInputError;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
