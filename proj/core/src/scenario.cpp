#include "macoord/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "macoord/errors.hpp"
#include "macoord/ltl.hpp"

namespace macoord {

using nlohmann::json;

std::string baseline_name(BaselineKind k) {
  switch (k) {
    case BaselineKind::None: return "none";
    case BaselineKind::Static: return "static";
    case BaselineKind::PairWise: return "pairwise";
    case BaselineKind::AllTime: return "alltime";
  }
  return "none";
}

BaselineKind parse_baseline(const std::string& name) {
  if (name == "none") return BaselineKind::None;
  if (name == "static") return BaselineKind::Static;
  if (name == "pairwise") return BaselineKind::PairWise;
  if (name == "alltime") return BaselineKind::AllTime;
  throw ValidationError("unknown baseline \"" + name +
                        "\" (expected none, static, pairwise or alltime)");
}

namespace {

Cell parse_cell(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    throw ValidationError(what + " must be a [col, row] pair");
  }
  return Cell{j[0].get<int>(), j[1].get<int>()};
}

double positive(const json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + " must be a number");
  double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(what + " must be positive and finite");
  }
  return v;
}

void check_connected(const Scenario& sc) {
  std::vector<Cell> used;
  for (const AgentSpec& a : sc.agents) {
    used.push_back(a.start);
    for (const std::string& r : a.regions) used.push_back(sc.ws.regions.at(r));
  }
  if (used.empty()) return;
  std::vector<char> seen(static_cast<std::size_t>(sc.ws.cols) * sc.ws.rows, 0);
  auto idx = [&](Cell c) {
    return static_cast<std::size_t>(c.row) * sc.ws.cols + c.col;
  };
  std::deque<Cell> queue{used.front()};
  seen[idx(used.front())] = 1;
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    const Cell around[4] = {{c.col, c.row - 1},
                            {c.col - 1, c.row},
                            {c.col + 1, c.row},
                            {c.col, c.row + 1}};
    for (const Cell& nb : around) {
      if (!sc.ws.is_free(nb) || seen[idx(nb)]) continue;
      seen[idx(nb)] = 1;
      queue.push_back(nb);
    }
  }
  for (const Cell& c : used) {
    if (!seen[idx(c)]) {
      throw ValidationError("cell " + cell_str(c) +
                            " is cut off from the rest of the team's cells");
    }
  }
}

}  // namespace

Scenario load_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!doc.is_object()) throw ValidationError("scenario must be a JSON object");

  Scenario sc;
  try {
    const json& w = doc.at("workspace");
    sc.ws = make_workspace(w.at("cols").get<int>(), w.at("rows").get<int>(),
                           positive(w.at("cell_size"), "cell_size"));
    for (const json& o : w.value("obstacles", json::array())) {
      Cell c = parse_cell(o, "obstacle");
      if (!sc.ws.in_bounds(c)) {
        throw ValidationError("obstacle " + cell_str(c) + " is out of bounds");
      }
      sc.ws.block(c);
    }
    const json region_obj = w.value("regions", json::object());
    for (const auto& [name, cj] : region_obj.items()) {
      if (name.empty()) throw ValidationError("region names must be nonempty");
      Cell c = parse_cell(cj, "region " + name);
      if (!sc.ws.is_free(c)) {
        throw ValidationError("region " + name + " at " + cell_str(c) +
                              " must be a free cell in bounds");
      }
      sc.ws.regions[name] = c;
    }

    if (doc.contains("motion")) {
      const json& m = doc.at("motion");
      sc.motion.linear_speed = positive(m.value("v", json(1.0)), "motion.v");
      sc.motion.angular_speed =
          positive(m.value("omega", json(1.5)), "motion.omega");
    }

    if (doc.contains("comm")) {
      const json& c = doc.at("comm");
      sc.comm.range = positive(c.value("range", json(1.0)), "comm.range");
      sc.comm.Tc = positive(c.value("Tc", json(60.0)), "comm.Tc");
      sc.comm.Dc = positive(c.value("Dc", json(5.0)), "comm.Dc");
    }
    if (!(sc.comm.Dc < sc.comm.Tc)) {
      throw ValidationError("comm.Dc must be smaller than comm.Tc");
    }

    if (doc.contains("game")) {
      sc.game.max_iters = doc.at("game").value("max_iters", 500);
      if (sc.game.max_iters < 1) {
        throw ValidationError("game.max_iters must be at least 1");
      }
    }

    sc.rounds = doc.value("rounds", 1);
    if (sc.rounds < 0) throw ValidationError("rounds must be nonnegative");
    sc.seed = doc.value("seed", std::uint64_t{0});
    sc.baseline = parse_baseline(doc.value("baseline", std::string("none")));

    if (doc.contains("signal")) {
      const json& s = doc.at("signal");
      for (const json& k : s.value("knots", json::array())) {
        if (!k.is_array() || k.size() != 2) {
          throw ValidationError("signal.knots entries must be [t, value]");
        }
        sc.signal.knots.push_back({k[0].get<double>(), k[1].get<double>()});
      }
      for (std::size_t k = 1; k < sc.signal.knots.size(); ++k) {
        if (!(sc.signal.knots[k].first > sc.signal.knots[k - 1].first)) {
          throw ValidationError("signal.knots times must be increasing");
        }
      }
      sc.signal.magnitude = s.value("noise_magnitude", 1.0);
      sc.signal.freq = s.value("noise_freq", sc.signal.freq);
      for (const json& p : s.value("phases", json::array())) {
        sc.signal.phases.push_back(p.get<double>());
      }
      sc.signal.monitor_action =
          s.value("monitor_action", std::string("monitor"));
    }

    const json& agents = doc.at("agents");
    if (!agents.is_array() || agents.empty()) {
      throw ValidationError("agents must be a nonempty array");
    }
    for (const json& a : agents) {
      AgentSpec spec;
      spec.id = a.at("id").get<int>();
      spec.start = parse_cell(a.at("start"), "agent start");
      spec.heading = a.value("heading", 0.0);
      if (!std::isfinite(spec.heading)) {
        throw ValidationError("agent heading must be finite");
      }
      for (const json& r : a.at("regions")) {
        spec.regions.push_back(r.get<std::string>());
      }
      for (const auto& [name, dj] : a.at("actions").items()) {
        double d = dj.get<double>();
        // Zero would let an action end at the instant it starts and break
        // the completions-before-starts event order.
        if (!(d > 0.0) || !std::isfinite(d)) {
          throw ValidationError("action " + name +
                                " must have a positive duration");
        }
        spec.actions.push_back(ActionSpec{name, d});
      }
      spec.task = a.at("task").get<std::string>();
      sc.agents.push_back(std::move(spec));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario schema: ") + e.what());
  }

  std::sort(sc.agents.begin(), sc.agents.end(),
            [](const AgentSpec& a, const AgentSpec& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < sc.agents.size(); ++i) {
    if (sc.agents[i].id != static_cast<int>(i)) {
      throw ValidationError("agent ids must be exactly 0.." +
                            std::to_string(sc.agents.size() - 1));
    }
  }
  if (static_cast<int>(sc.signal.phases.size()) != 0 &&
      sc.signal.phases.size() != sc.agents.size()) {
    throw ValidationError("signal.phases must be empty or one per agent");
  }

  for (const AgentSpec& a : sc.agents) {
    if (!sc.ws.is_free(a.start)) {
      throw ValidationError("agent " + std::to_string(a.id) + " start " +
                            cell_str(a.start) + " must be a free cell");
    }
    for (const std::string& r : a.regions) {
      if (!sc.ws.regions.count(r)) {
        throw ValidationError("agent " + std::to_string(a.id) +
                              " references unknown region " + r);
      }
    }
    // Parse the task now so bad input fails before any planning starts.
    Formula f = parse_ltl(a.task, agent_alphabet(a));
    if (!is_sc_ltl(f)) {
      throw ValidationError(
          "agent " + std::to_string(a.id) +
          " task must avoid [] and keep ! directly on propositions");
    }
  }

  check_connected(sc);
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string scenario_json(const Scenario& sc) {
  json w;
  w["cols"] = sc.ws.cols;
  w["rows"] = sc.ws.rows;
  w["cell_size"] = sc.ws.cell_size;
  json obstacles = json::array();
  for (int row = 0; row < sc.ws.rows; ++row) {
    for (int col = 0; col < sc.ws.cols; ++col) {
      if (!sc.ws.is_free(Cell{col, row})) obstacles.push_back({col, row});
    }
  }
  w["obstacles"] = std::move(obstacles);
  json regions = json::object();
  for (const auto& [name, c] : sc.ws.regions) regions[name] = {c.col, c.row};
  w["regions"] = std::move(regions);

  json doc;
  doc["workspace"] = std::move(w);
  doc["motion"] = {{"v", sc.motion.linear_speed},
                   {"omega", sc.motion.angular_speed}};
  doc["comm"] = {{"range", sc.comm.range}, {"Tc", sc.comm.Tc}, {"Dc", sc.comm.Dc}};
  doc["game"] = {{"max_iters", sc.game.max_iters}};
  doc["rounds"] = sc.rounds;
  doc["seed"] = sc.seed;
  doc["baseline"] = baseline_name(sc.baseline);
  json knots = json::array();
  for (auto [t, v] : sc.signal.knots) knots.push_back({t, v});
  doc["signal"] = {{"knots", std::move(knots)},
                   {"noise_magnitude", sc.signal.magnitude},
                   {"noise_freq", sc.signal.freq},
                   {"phases", sc.signal.phases},
                   {"monitor_action", sc.signal.monitor_action}};
  json agents = json::array();
  for (const AgentSpec& a : sc.agents) {
    json actions = json::object();
    for (const ActionSpec& act : a.actions) actions[act.name] = act.duration;
    agents.push_back({{"id", a.id},
                      {"start", {a.start.col, a.start.row}},
                      {"heading", a.heading},
                      {"regions", a.regions},
                      {"actions", std::move(actions)},
                      {"task", a.task}});
  }
  doc["agents"] = std::move(agents);
  return doc.dump(2);
}

}  // namespace macoord
