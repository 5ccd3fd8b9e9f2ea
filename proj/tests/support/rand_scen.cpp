#include "rand_scen.hpp"

#include <bit>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "macoord/errors.hpp"
#include "macoord/game.hpp"

namespace macoord::testing {

namespace {

using nlohmann::json;

double pow2_at_least(double x) {
  double p = 1.0;
  while (p < x) p *= 2.0;
  return p;
}

json one_attempt(std::mt19937_64& rng, const ScenarioKnobs& knobs) {
  auto pick = [&](auto&& list) {
    return list[rng() % std::size(list)];
  };

  const int cols = knobs.min_side +
                   static_cast<int>(rng() % (knobs.max_side - knobs.min_side + 1));
  const int rows = knobs.min_side +
                   static_cast<int>(rng() % (knobs.max_side - knobs.min_side + 1));
  const double cell_sizes[] = {0.5, 1.0};
  const double speeds[] = {0.25, 0.5, 1.0};
  const double cell_size = pick(cell_sizes);
  const double v = pick(speeds);
  const int n = knobs.min_agents +
                static_cast<int>(rng() % (knobs.max_agents - knobs.min_agents + 1));

  std::vector<char> blocked(static_cast<std::size_t>(cols) * rows, 0);
  json obstacles = json::array();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (unit(rng) < knobs.obstacle_density) {
        blocked[static_cast<std::size_t>(r) * cols + c] = 1;
        obstacles.push_back(json::array({c, r}));
      }
    }
  }

  // Distinct free cells for every region and every start.
  std::vector<std::pair<int, int>> free_list;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!blocked[static_cast<std::size_t>(r) * cols + c]) {
        free_list.emplace_back(c, r);
      }
    }
  }
  std::shuffle(free_list.begin(), free_list.end(), rng);

  std::vector<int> region_count(n);
  std::size_t need = static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) {
    region_count[i] = 1 + static_cast<int>(rng() % 3);
    need += static_cast<std::size_t>(region_count[i]);
  }
  if (free_list.size() < need) {
    throw ValidationError("layout too crowded");
  }

  const double durations[] = {0.5, 1.0, 2.0, 4.0};
  double max_dur = 0.0;

  std::size_t next_cell = 0;
  json regions = json::object();
  json agents = json::array();
  for (int i = 0; i < n; ++i) {
    json spec;
    spec["id"] = i;
    auto [sc_c, sc_r] = free_list[next_cell++];
    spec["start"] = json::array({sc_c, sc_r});
    spec["heading"] = 0.0;

    std::vector<std::string> names;
    for (int k = 0; k < region_count[i]; ++k) {
      std::string name(1, static_cast<char>('A' + i));
      name += std::to_string(k);
      auto [c, r] = free_list[next_cell++];
      regions[name] = json::array({c, r});
      names.push_back(name);
    }
    spec["regions"] = names;

    double dur = pick(durations);
    max_dur = std::max(max_dur, dur);
    spec["actions"] = json::object({{"w", dur}});

    std::string task;
    if (names.size() == 1) {
      task = names[0] + ".w";
    } else {
      switch (rng() % 4) {
        case 0:
          task = names[0] + ".w && <>(" + names[1] + ".w)";
          break;
        case 1:
          task = names[0] + ".w || " + names[1] + ".w";
          break;
        case 2:
          task = "(" + names[0] + ".w) U (" + names[1] + ".w)";
          break;
        default:
          if (names.size() >= 3) {
            task = names[0] + ".w && <>(" + names[1] + ".w && <>(" +
                   names[2] + ".w))";
          } else {
            task = "<>(" + names[0] + ".w) && <>(" + names[1] + ".w)";
          }
          break;
      }
    }
    spec["task"] = task;
    agents.push_back(spec);
  }

  const double step = cell_size / v;
  const double Tc = pow2_at_least((cols + rows) * (step + 2.0) * 3.0 +
                                  6.0 * max_dur + 16.0);

  json doc;
  doc["workspace"] = {{"cols", cols},
                      {"rows", rows},
                      {"cell_size", cell_size},
                      {"obstacles", obstacles},
                      {"regions", regions}};
  doc["motion"] = {{"v", v}, {"omega", std::numbers::pi / 2.0}};
  doc["comm"] = {{"range", cell_size * 2.0}, {"Tc", Tc}, {"Dc", 2.0}};
  doc["game"] = {{"max_iters", 300}};
  doc["rounds"] = 1;
  doc["seed"] = 1;
  doc["signal"] = {{"knots", json::array({json::array({0.0, 10.0}),
                                          json::array({Tc, 14.0})})},
                   {"noise_magnitude", 0.5}};
  doc["agents"] = agents;
  return doc;
}

}  // namespace

Scenario random_scenario(std::uint64_t seed, const ScenarioKnobs& knobs,
                         int tries) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < tries; ++attempt) {
    try {
      return load_scenario(one_attempt(rng, knobs).dump());
    } catch (const Error&) {
      // Disconnected or crowded layout; reroll.
    }
  }
  throw ResourceLimitError("no valid random scenario after " +
                           std::to_string(tries) + " attempts");
}

std::unique_ptr<SmallInstance> random_instance(std::uint64_t seed,
                                               const ScenarioKnobs& knobs,
                                               int tries) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < tries; ++attempt) {
    auto si = std::make_unique<SmallInstance>();
    try {
      si->sc = load_scenario(one_attempt(rng, knobs).dump());
      si->agents = plan_agents(si->sc);
      SimEngine engine(si->sc, si->agents, RunOptions{});
      std::vector<int> all(si->agents.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
      si->ctx = engine.make_context(all, 0.0, si->sc.comm.Tc);
      initial_strategy(si->ctx);  // discard: probes round-0 feasibility
      return si;
    } catch (const Error&) {
      // Invalid layout or infeasible round; reroll.
    }
  }
  throw ResourceLimitError("no feasible random instance after " +
                           std::to_string(tries) + " attempts");
}

}  // namespace macoord::testing
