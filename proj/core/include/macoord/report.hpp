#pragma once

#include <string>
#include <vector>

#include "macoord/executor.hpp"

namespace macoord {

// Run outputs, one file per concern.  All writers produce byte-identical
// files for identical results; the only intentionally unstable column is
// wall_ms in metrics.csv, which reports host time.

// One JSON object per line, ordered as the run ordered its events.
void write_events_jsonl(const std::string& path,
                        const std::vector<Event>& events);

// kind=round rows summarize each rendezvous (including whether a connected
// stretch covered a full window inside it), kind=xi rows carry the
// scheduled per-participant costs, kind=agent rows the whole-run per-agent
// outcome.  Dc is the communication duration the pass check needs.
void write_metrics_csv(const std::string& path, const RunResult& result,
                       double Dc);

// t,agent,estimate,truth,deviation at one-second cadence plus every update.
void write_api_csv(const std::string& path, const RunResult& result);

// One JSON object per rendezvous with the full better-reply trace.
void write_coordination_jsonl(const std::string& path,
                              const RunResult& result);

// Grid picture shading each cell by how often it hosted a meeting point.
void write_heatmap_svg(const std::string& path, const Workspace& ws,
                       const RunResult& result);

// plan_agent<i>.json for every agent.
void write_plan_files(const std::string& dir,
                      const std::vector<PlannedAgent>& agents);

// Everything above into dir (created if missing).
void write_run_outputs(const std::string& dir, const Scenario& sc,
                       const std::vector<PlannedAgent>& agents,
                       const RunResult& result);

// Whole-run aggregates for scheme comparisons.
struct RunSummary {
  std::string scheme;
  bool failed = false;  // the scheme threw; numbers below are blank
  int meetings = 0;
  double connected_fraction = 0.0;  // meetings whose window connected
  double sample_connected_fraction = 0.0;  // connectivity samples connected
  double mean_phi = 0.0;
  double mean_xi = 0.0;  // scheduled extra time per participant per meeting
  double mean_iterations = 0.0;
  double max_makespan = 0.0;  // +inf when some agent never repeats its goal
  double max_deviation = 0.0;
  double mean_rms_deviation = 0.0;
};

RunSummary summarize_run(const std::string& scheme, const RunResult& result);

void write_comparison_csv(const std::string& path,
                          const std::vector<RunSummary>& rows);

// The table as printable text.
std::string comparison_table(const std::vector<RunSummary>& rows);

}  // namespace macoord
