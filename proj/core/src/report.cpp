#include "macoord/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "macoord/errors.hpp"

namespace macoord {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json cell_json(const Cell& c) { return json::array({c.col, c.row}); }

// A round passes when some connected stretch [a, b] starts inside its
// window early enough to cover a full communication duration.
bool window_passed(const ConnectivityLog& log, double ws, double we,
                   double Dc) {
  for (const ConnectivityInterval& iv : log.intervals) {
    double s = std::max(iv.a, ws);
    if (s + Dc <= iv.b && s < we) return true;
  }
  return false;
}

}  // namespace

void write_events_jsonl(const std::string& path,
                        const std::vector<Event>& events) {
  std::ofstream out = open_out(path);
  for (const Event& e : events) {
    json j;
    j["t"] = e.t;
    j["type"] = event_type_name(e.type);
    if (e.agent >= 0) j["agent"] = e.agent;
    if (e.round >= 0) j["round"] = e.round;
    switch (e.type) {
      case EventType::MoveStart:
      case EventType::MoveEnd:
        j["from"] = cell_json(e.from);
        j["to"] = cell_json(e.to);
        break;
      case EventType::ActionStart:
      case EventType::ActionEnd:
        j["cell"] = cell_json(e.to);
        j["region"] = e.region;
        j["action"] = e.action;
        j["duration"] = e.duration;
        break;
      case EventType::ArriveRendezvous:
        j["cell"] = cell_json(e.to);
        break;
      case EventType::CommStart:
      case EventType::CommEnd:
        j["duration"] = e.duration;
        break;
    }
    out << j.dump() << "\n";
  }
}

void write_metrics_csv(const std::string& path, const RunResult& result,
                       double Dc) {
  std::ofstream out = open_out(path);
  out << "kind,round,agent,window_start,window_end,phi,xi,iterations,"
         "converged,connected,window_pass,t_c,wall_ms,prefix_cost,cycle_cost,"
         "satisfactions,makespan,deviation_max,deviation_rms\n";
  for (const RoundRecord& r : result.rounds) {
    bool pass = window_passed(result.connectivity, r.window_start,
                              r.window_end, Dc);
    out << "round," << r.round << ",," << num(r.window_start) << ","
        << num(r.window_end) << "," << num(r.phi) << ",," << r.iterations
        << "," << (r.converged ? 1 : 0) << "," << (r.connected ? 1 : 0) << ","
        << (pass ? 1 : 0) << "," << num(r.t_c) << ","
        << num(r.wall_seconds * 1000.0) << ",,,,,,\n";
    for (std::size_t k = 0; k < r.participants.size(); ++k) {
      double xi = k < r.xi.size() ? r.xi[k] : 0.0;
      out << "xi," << r.round << "," << r.participants[k] << ",,,,"
          << num(xi) << ",,,,,,,,,,,,\n";
    }
  }
  for (const AgentResult& a : result.agents) {
    out << "agent,," << a.agent << ",,,,,,,,,,," << num(a.plan_prefix_cost)
        << "," << num(a.plan_cycle_cost) << "," << a.satisfaction.size()
        << "," << num(a.makespan) << "," << num(a.deviation.max_abs) << ","
        << num(a.deviation.rms) << "\n";
  }
}

void write_api_csv(const std::string& path, const RunResult& result) {
  std::ofstream out = open_out(path);
  out << "t,agent,estimate,truth,deviation\n";
  for (const ApiSample& s : result.api) {
    out << num(s.t) << "," << s.agent << "," << num(s.estimate) << ","
        << num(s.truth_value) << "," << num(s.estimate - s.truth_value)
        << "\n";
  }
}

void write_coordination_jsonl(const std::string& path,
                              const RunResult& result) {
  std::ofstream out = open_out(path);
  for (const RoundRecord& r : result.rounds) {
    json j;
    j["round"] = r.round;
    j["participants"] = r.participants;
    j["window"] = json::array({r.window_start, r.window_end});
    json prof = json::array();
    for (std::size_t k = 0; k < r.profile.size(); ++k) {
      json p;
      p["agent"] = r.participants[k];
      p["z"] = cell_json(r.profile[k].z);
      p["h"] = r.profile[k].h;
      prof.push_back(std::move(p));
    }
    j["profile"] = std::move(prof);
    j["phi"] = r.phi;
    j["xi"] = r.xi;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["connected"] = r.connected;
    j["arrivals"] = r.arrivals;
    j["t_c"] = r.t_c;
    json trace = json::array();
    for (const TraceEntry& te : r.trace) {
      json t;
      t["iteration"] = te.iteration;
      t["mover"] = te.mover;
      t["sigma"] = te.sigma;
      t["phi"] = te.phi_after;
      json zp = json::array();
      for (const Strategy& s : te.profile) {
        zp.push_back(json::array({s.z.col, s.z.row, s.h}));
      }
      t["profile"] = std::move(zp);
      trace.push_back(std::move(t));
    }
    j["trace"] = std::move(trace);
    out << j.dump() << "\n";
  }
}

void write_heatmap_svg(const std::string& path, const Workspace& ws,
                       const RunResult& result) {
  std::map<Cell, int> counts;
  int max_count = 0;
  for (const RoundRecord& r : result.rounds) {
    for (const Strategy& s : r.profile) {
      max_count = std::max(max_count, ++counts[s.z]);
    }
  }

  const int px = 16;
  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
      << ws.cols * px << " " << ws.rows * px << "\">\n";
  for (int row = 0; row < ws.rows; ++row) {
    for (int col = 0; col < ws.cols; ++col) {
      Cell c{col, row};
      std::string fill = "#ffffff";
      if (!ws.is_free(c)) {
        fill = "#3a3a3a";
      } else if (auto it = counts.find(c); it != counts.end()) {
        double f = static_cast<double>(it->second) / max_count;
        int rr = static_cast<int>(std::lround(255 + f * (204 - 255)));
        int gg = static_cast<int>(std::lround(255 + f * (51 - 255)));
        int bb = static_cast<int>(std::lround(255 + f * (34 - 255)));
        char buf[8];
        std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", rr, gg, bb);
        fill = buf;
      }
      out << "<rect x=\"" << col * px << "\" y=\"" << row * px << "\" width=\""
          << px << "\" height=\"" << px << "\" fill=\"" << fill
          << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    }
  }
  for (const auto& [name, cell] : ws.regions) {
    out << "<rect x=\"" << cell.col * px + 1 << "\" y=\"" << cell.row * px + 1
        << "\" width=\"" << px - 2 << "\" height=\"" << px - 2
        << "\" fill=\"none\" stroke=\"#3366cc\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << cell.col * px + px / 2 << "\" y=\""
        << cell.row * px + px / 2 + 2
        << "\" font-size=\"6\" text-anchor=\"middle\" fill=\"#224488\">"
        << name << "</text>\n";
  }
  out << "</svg>\n";
}

void write_plan_files(const std::string& dir,
                      const std::vector<PlannedAgent>& agents) {
  for (const PlannedAgent& pa : agents) {
    std::string path =
        dir + "/plan_agent" + std::to_string(pa.spec.id) + ".json";
    std::ofstream out = open_out(path);
    out << plan_json(pa.plan, pa.ts) << "\n";
  }
}

void write_run_outputs(const std::string& dir, const Scenario& sc,
                       const std::vector<PlannedAgent>& agents,
                       const RunResult& result) {
  std::filesystem::create_directories(dir);
  write_events_jsonl(dir + "/events.jsonl", result.events);
  write_metrics_csv(dir + "/metrics.csv", result, sc.comm.Dc);
  write_api_csv(dir + "/api.csv", result);
  write_coordination_jsonl(dir + "/coordination.jsonl", result);
  write_heatmap_svg(dir + "/topology_heatmap.svg", sc.ws, result);
  write_plan_files(dir, agents);
}

RunSummary summarize_run(const std::string& scheme, const RunResult& result) {
  RunSummary s;
  s.scheme = scheme;
  s.meetings = static_cast<int>(result.rounds.size());
  int connected = 0;
  std::size_t xi_rows = 0;
  for (const RoundRecord& r : result.rounds) {
    s.mean_phi += r.phi;
    s.mean_iterations += r.iterations;
    if (r.connected) ++connected;
    for (double x : r.xi) {
      s.mean_xi += x;
      ++xi_rows;
    }
  }
  if (s.meetings > 0) {
    s.mean_phi /= s.meetings;
    s.mean_iterations /= s.meetings;
    s.connected_fraction = static_cast<double>(connected) / s.meetings;
  }
  if (xi_rows > 0) s.mean_xi /= static_cast<double>(xi_rows);
  if (!result.connectivity.samples.empty()) {
    std::size_t on = 0;
    for (const ConnectivitySample& cs : result.connectivity.samples) {
      if (cs.connected) ++on;
    }
    s.sample_connected_fraction =
        static_cast<double>(on) / result.connectivity.samples.size();
  }
  for (const AgentResult& a : result.agents) {
    s.max_makespan = std::max(s.max_makespan, a.makespan);
    s.max_deviation = std::max(s.max_deviation, a.deviation.max_abs);
    s.mean_rms_deviation += a.deviation.rms;
  }
  if (!result.agents.empty()) {
    s.mean_rms_deviation /= static_cast<double>(result.agents.size());
  }
  return s;
}

void write_comparison_csv(const std::string& path,
                          const std::vector<RunSummary>& rows) {
  std::ofstream out = open_out(path);
  out << "scheme,failed,meetings,connected_fraction,"
         "sample_connected_fraction,mean_phi,mean_xi,mean_iterations,"
         "max_makespan,max_deviation,mean_rms_deviation\n";
  for (const RunSummary& r : rows) {
    out << r.scheme << "," << (r.failed ? 1 : 0) << "," << r.meetings << ","
        << num(r.connected_fraction) << ","
        << num(r.sample_connected_fraction) << "," << num(r.mean_phi) << ","
        << num(r.mean_xi) << "," << num(r.mean_iterations) << ","
        << num(r.max_makespan) << "," << num(r.max_deviation) << ","
        << num(r.mean_rms_deviation) << "\n";
  }
}

std::string comparison_table(const std::vector<RunSummary>& rows) {
  std::ostringstream out;
  char line[200];
  std::snprintf(line, sizeof(line),
                "%-10s %8s %10s %10s %12s %10s %8s %12s %12s %12s\n", "scheme",
                "meetings", "connected", "samples", "mean_phi", "mean_xi",
                "iters", "makespan", "max_dev", "rms_dev");
  out << line;
  for (const RunSummary& r : rows) {
    if (r.failed) {
      std::snprintf(line, sizeof(line), "%-10s failed\n", r.scheme.c_str());
      out << line;
      continue;
    }
    std::snprintf(line, sizeof(line),
                  "%-10s %8d %10.2f %10.2f %12.3f %10.3f %8.1f %12.4g %12.3g "
                  "%12.3g\n",
                  r.scheme.c_str(), r.meetings, r.connected_fraction,
                  r.sample_connected_fraction, r.mean_phi, r.mean_xi,
                  r.mean_iterations, r.max_makespan, r.max_deviation,
                  r.mean_rms_deviation);
    out << line;
  }
  return out.str();
}

}  // namespace macoord
