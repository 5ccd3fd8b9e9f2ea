// Command-line front end: plan | run | compare | verify over a scenario
// file.  Exit codes: 0 success, 1 infeasible or failed run, 2 invalid input.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macoord/baselines.hpp"
#include "macoord/errors.hpp"
#include "macoord/lasso.hpp"
#include "macoord/report.hpp"

namespace {

using namespace macoord;

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir = "out";
  int rounds = -1;      // <0 keeps the scenario's value
  long long seed = -1;  // <0 keeps the scenario's value
  int max_iters = -1;   // <0 keeps the scenario's value
  std::string baseline;  // empty keeps the scenario's value
};

Scenario load_with_overrides(const CommonArgs& args) {
  Scenario sc = load_scenario_file(args.scenario_path);
  if (args.rounds >= 0) sc.rounds = args.rounds;
  if (args.seed >= 0) sc.seed = static_cast<std::uint64_t>(args.seed);
  if (args.max_iters >= 0) sc.game.max_iters = args.max_iters;
  if (!args.baseline.empty()) sc.baseline = parse_baseline(args.baseline);
  return sc;
}

int do_plan(const CommonArgs& args, bool dot) {
  Scenario sc = load_with_overrides(args);
  std::vector<PlannedAgent> agents = plan_agents(sc);
  std::filesystem::create_directories(args.out_dir);
  write_plan_files(args.out_dir, agents);
  for (const PlannedAgent& pa : agents) {
    std::printf(
        "agent %d: product %zu states, prefix %.6f s, cycle %.6f s\n",
        pa.spec.id, pa.product.states.size(), pa.plan.prefix_cost,
        pa.plan.cycle_cost);
    if (dot) {
      std::string path =
          args.out_dir + "/nba_agent" + std::to_string(pa.spec.id) + ".dot";
      std::ofstream out(path, std::ios::binary);
      if (!out) throw Error("cannot open " + path + " for writing");
      out << pa.nba.to_dot(pa.ts.alphabet);
    }
  }
  std::printf("plans written to %s\n", args.out_dir.c_str());
  return 0;
}

int do_run(const CommonArgs& args) {
  Scenario sc = load_with_overrides(args);
  std::vector<PlannedAgent> agents = plan_agents(sc);
  RunResult res = run_scenario(sc, agents, RunOptions{});
  write_run_outputs(args.out_dir, sc, agents, res);
  RunSummary s = summarize_run(baseline_name(sc.baseline), res);
  std::printf(
      "%d meetings, %.0f%% windows connected, mean phi %.3f s, outputs in "
      "%s\n",
      s.meetings, 100.0 * s.connected_fraction, s.mean_phi,
      args.out_dir.c_str());
  return 0;
}

int do_compare(const CommonArgs& args) {
  Scenario sc = load_with_overrides(args);
  std::vector<PlannedAgent> agents = plan_agents(sc);

  const std::pair<const char*, BaselineKind> schemes[] = {
      {"ours", BaselineKind::None},
      {"static", BaselineKind::Static},
      {"pairwise", BaselineKind::PairWise},
      {"alltime", BaselineKind::AllTime},
  };
  std::vector<RunSummary> rows;
  int succeeded = 0;
  for (const auto& [name, kind] : schemes) {
    Scenario variant = sc;
    variant.baseline = kind;
    try {
      RunResult res = run_scenario(variant, agents, RunOptions{});
      write_run_outputs(args.out_dir + "/" + name, variant, agents, res);
      rows.push_back(summarize_run(name, res));
      ++succeeded;
    } catch (const Error& e) {
      std::fprintf(stderr, "%s failed: %s\n", name, e.what());
      RunSummary failed;
      failed.scheme = name;
      failed.failed = true;
      rows.push_back(failed);
    }
  }
  std::filesystem::create_directories(args.out_dir);
  write_comparison_csv(args.out_dir + "/comparison.csv", rows);
  std::fputs(comparison_table(rows).c_str(), stdout);
  return succeeded > 0 ? 0 : 1;
}

int do_verify(const CommonArgs& args) {
  Scenario sc = load_with_overrides(args);
  std::vector<PlannedAgent> agents = plan_agents(sc);
  RunResult res = run_scenario(sc, agents, RunOptions{});

  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
  };

  for (const PlannedAgent& pa : agents) {
    check(plan_satisfies(pa.plan, pa.ts, pa.nba),
          "agent " + std::to_string(pa.spec.id) +
              " plan accepted by its automaton");
  }
  bool all_converged = true;
  bool phi_monotone = true;
  for (const RoundRecord& r : res.rounds) {
    all_converged = all_converged && r.converged;
    double prev = std::numeric_limits<double>::infinity();
    for (const TraceEntry& te : r.trace) {
      if (te.phi_after >= prev) phi_monotone = false;
      prev = te.phi_after;
    }
  }
  if (!res.rounds.empty()) {
    check(all_converged, "every meeting game converged");
    check(phi_monotone, "potential strictly decreases along every trace");
    int passed = 0;
    for (const RoundRecord& r : res.rounds) {
      for (const ConnectivityInterval& iv : res.connectivity.intervals) {
        double s = std::max(iv.a, r.window_start);
        if (s + sc.comm.Dc <= iv.b && s < r.window_end) {
          ++passed;
          break;
        }
      }
    }
    check(passed == static_cast<int>(res.rounds.size()),
          "connected stretch covers a full communication duration in " +
              std::to_string(passed) + "/" +
              std::to_string(res.rounds.size()) + " windows");
  }
  for (const AgentResult& a : res.agents) {
    check(!a.satisfaction.empty(),
          "agent " + std::to_string(a.agent) +
              " completed its recurring goal at least once");
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent task planning and rendezvous simulation"};
  app.require_subcommand(1);

  CommonArgs args;
  bool dot = false;

  auto add_common = [&](CLI::App* cmd, bool with_baseline) {
    cmd->add_option("scenario", args.scenario_path, "Scenario JSON file")
        ->required();
    cmd->add_option("--out-dir", args.out_dir, "Output directory");
    cmd->add_option("--rounds", args.rounds, "Override meeting round count");
    cmd->add_option("--seed", args.seed, "Override the recorded seed");
    cmd->add_option("--max-iters", args.max_iters,
                    "Cap on better-reply iterations per meeting");
    if (with_baseline) {
      cmd->add_option("--baseline", args.baseline,
                      "Coordination scheme: none|static|pairwise|alltime");
    }
  };

  CLI::App* plan = app.add_subcommand("plan", "Synthesize per-agent plans");
  add_common(plan, false);
  plan->add_flag("--dot", dot, "Also write per-agent automaton .dot files");

  CLI::App* run = app.add_subcommand("run", "Simulate the scenario");
  add_common(run, true);

  CLI::App* compare =
      app.add_subcommand("compare", "Run every scheme and tabulate");
  add_common(compare, false);

  CLI::App* verify =
      app.add_subcommand("verify", "Run and check execution invariants");
  add_common(verify, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (plan->parsed()) return do_plan(args, dot);
    if (run->parsed()) return do_run(args);
    if (compare->parsed()) return do_compare(args);
    return do_verify(args);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s", e.what());
    if (!e.agents().empty()) {
      std::fprintf(stderr, " (agents:");
      for (int a : e.agents()) std::fprintf(stderr, " %d", a);
      std::fprintf(stderr, ")");
    }
    if (e.round() >= 0) std::fprintf(stderr, " (round %d)", e.round());
    std::fprintf(stderr, "\n");
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
