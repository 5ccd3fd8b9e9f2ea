#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "macoord/errors.hpp"
#include "macoord/lasso.hpp"
#include "macoord/ltl_translate.hpp"
#include "macoord/pipeline.hpp"
#include "macoord/plan.hpp"
#include "macoord/product.hpp"
#include "macoord/transition_system.hpp"
#include "oracles.hpp"
#include "rand_scen.hpp"

using namespace macoord;
using namespace macoord::testing;

namespace {

struct Fixture {
  Workspace ws;
  AgentSpec spec;
  std::unique_ptr<TravelOracle> travel;

  Fixture(std::vector<std::pair<std::string, Cell>> regions, Cell start,
          std::vector<ActionSpec> actions, std::string task) {
    ws = make_workspace(6, 6, 1.0);
    for (auto& [name, cell] : regions) ws.regions[name] = cell;
    spec.id = 0;
    spec.start = start;
    for (auto& [name, cell] : regions) spec.regions.push_back(name);
    spec.actions = std::move(actions);
    spec.task = std::move(task);
    travel = std::make_unique<TravelOracle>(
        ws, MotionParams{1.0, std::numbers::pi / 2}, start, 0.0);
  }
};

using EdgeKey = std::tuple<int, int, double>;  // source, target, cost

std::set<EdgeKey> edge_set(const TransitionSystem& ts) {
  std::set<EdgeKey> out;
  for (std::size_t s = 0; s < ts.edges.size(); ++s) {
    for (const TsEdge& e : ts.edges[s]) {
      out.insert({static_cast<int>(s), e.target, e.cost});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("transition system enumerates region x action states") {
  Fixture fx({{"A", {1, 1}}, {"B", {4, 1}}, {"C", {1, 4}}}, {1, 1},
             {{"w", 2.0}}, "A.w");
  TransitionSystem ts = build_transition_system(fx.ws, fx.spec, *fx.travel);

  // 3 regions x 2 actions; the start sits on region A so no synthetic state.
  CHECK(ts.states.size() == 6);
  CHECK(ts.initial == ts.state_index(0, 0));
  CHECK(ts.regions == std::vector<std::string>{"A", "B", "C"});
  CHECK(ts.actions == std::vector<std::string>{"idle", "w"});

  // The exact transition set, rebuilt from the two construction rules:
  // moves land idle at another region and cost the leg; action switches stay
  // at the region and cost the target action's duration.
  std::set<EdgeKey> expect;
  for (int r = 0; r < 3; ++r) {
    for (int a = 0; a < 2; ++a) {
      int s = ts.state_index(r, a);
      for (int r2 = 0; r2 < 3; ++r2) {
        if (r2 == r) continue;
        expect.insert({s, ts.state_index(r2, 0),
                       fx.travel->time(ts.region_cells[r], ts.region_cells[r2])});
      }
      for (int a2 = 0; a2 < 2; ++a2) {
        if (a2 == a) continue;
        expect.insert({s, ts.state_index(r, a2), a2 == 0 ? 0.0 : 2.0});
      }
    }
  }
  CHECK(edge_set(ts) == expect);

  // Only non-idle states carry a label, and it is their own proposition.
  for (std::size_t s = 0; s < ts.states.size(); ++s) {
    if (ts.states[s].action == kIdleAction) {
      CHECK(ts.labels[s] == 0);
    } else {
      int prop = ts.states[s].region * 2 + ts.states[s].action;
      CHECK(ts.labels[s] == symbol_bit(prop));
    }
  }
}

TEST_CASE("a start off every region becomes a synthetic state") {
  Fixture fx({{"A", {1, 1}}, {"B", {4, 4}}}, {0, 0}, {{"w", 1.0}}, "A.w");
  TransitionSystem ts = build_transition_system(fx.ws, fx.spec, *fx.travel);
  CHECK(ts.states.size() == 5);  // 2x2 + start
  const TsState& init = ts.states[static_cast<std::size_t>(ts.initial)];
  CHECK(init.region == -1);
  CHECK(init.cell == Cell{0, 0});
  CHECK(ts.labels[static_cast<std::size_t>(ts.initial)] == 0);
  // Start has outgoing moves only, and nothing points back at it.
  CHECK(ts.edges[static_cast<std::size_t>(ts.initial)].size() == 2);
  for (std::size_t s = 0; s < ts.edges.size(); ++s) {
    for (const TsEdge& e : ts.edges[s]) CHECK(e.target != ts.initial);
  }
}

TEST_CASE("transition system validates the region list") {
  Fixture unknown({{"A", {1, 1}}}, {1, 1}, {{"w", 1.0}}, "A.w");
  unknown.spec.regions.push_back("missing");
  CHECK_THROWS_AS(
      build_transition_system(unknown.ws, unknown.spec, *unknown.travel),
      ValidationError);

  Fixture dup({{"A", {1, 1}}}, {1, 1}, {{"w", 1.0}}, "A.w");
  dup.spec.regions.push_back("A");
  CHECK_THROWS_AS(build_transition_system(dup.ws, dup.spec, *dup.travel),
                  ValidationError);
}

TEST_CASE("product synchronizes on the label of the entered state") {
  Fixture fx({{"A", {1, 1}}, {"B", {4, 1}}}, {1, 1}, {{"w", 2.0}},
             "A.w && <>(B.w)");
  TransitionSystem ts = build_transition_system(fx.ws, fx.spec, *fx.travel);
  Formula goal = mk_always(mk_eventually(
      parse_ltl(fx.spec.task, ts.alphabet)));
  Nba nba = translate_to_nba(goal);
  Product p = build_product(ts, nba);

  REQUIRE(!p.states.empty());
  // Soundness: every edge is a legal (ts move, automaton move) pair.
  // Completeness: every legal pair out of a kept state appears.
  for (std::size_t ps = 0; ps < p.states.size(); ++ps) {
    const ProductState& st = p.states[ps];
    std::set<std::pair<int, double>> have;
    for (const ProductEdge& e : p.edges[ps]) {
      have.insert({e.target, e.cost});
      const ProductState& to = p.states[static_cast<std::size_t>(e.target)];
      bool ts_edge = false;
      for (const TsEdge& te : ts.edges[static_cast<std::size_t>(st.ts_state)]) {
        if (te.target == to.ts_state && te.cost == e.cost) ts_edge = true;
      }
      CHECK(ts_edge);
      bool nba_edge = false;
      for (const NbaEdge& ne :
           nba.edges[static_cast<std::size_t>(st.nba_state)]) {
        if (ne.target == to.nba_state &&
            ne.guard.matches(ts.labels[static_cast<std::size_t>(to.ts_state)])) {
          nba_edge = true;
        }
      }
      CHECK(nba_edge);
    }
    for (const TsEdge& te : ts.edges[static_cast<std::size_t>(st.ts_state)]) {
      for (const NbaEdge& ne :
           nba.edges[static_cast<std::size_t>(st.nba_state)]) {
        if (!ne.guard.matches(
                ts.labels[static_cast<std::size_t>(te.target)])) {
          continue;
        }
        // The target pair must be a kept state reached by an edge.
        bool found = false;
        for (const ProductEdge& e : p.edges[ps]) {
          const ProductState& to =
              p.states[static_cast<std::size_t>(e.target)];
          if (to.ts_state == te.target && to.nba_state == ne.target &&
              e.cost == te.cost) {
            found = true;
          }
        }
        CHECK(found);
      }
    }
    CHECK(p.accepting[ps] == nba.accepting[static_cast<std::size_t>(st.nba_state)]);
  }
}

TEST_CASE("synthesized plans are structurally consistent") {
  Fixture fx({{"A", {1, 1}}, {"B", {4, 1}}, {"C", {1, 4}}}, {0, 0},
             {{"w", 2.0}, {"m", 1.0}}, "A.w && <>(C.m)");
  TransitionSystem ts = build_transition_system(fx.ws, fx.spec, *fx.travel);
  Formula goal =
      mk_always(mk_eventually(parse_ltl(fx.spec.task, ts.alphabet)));
  Nba nba = translate_to_nba(goal);
  Product p = build_product(ts, nba);
  Plan plan = synthesize_plan(ts, p, 0);

  REQUIRE(!plan.prefix.empty());
  REQUIRE(!plan.cycle.empty());
  // Prefix starts at an initial product state with zero first cost.
  bool initial = false;
  for (int s : p.initial) {
    if (s == plan.prefix.front().product_state) initial = true;
  }
  CHECK(initial);
  CHECK(plan.prefix.front().cost == 0.0);
  // The anchor is accepting and the cycle closes back onto it.
  int anchor = plan.prefix.back().product_state;
  CHECK(p.accepting[static_cast<std::size_t>(anchor)]);
  CHECK(plan.cycle.back().product_state == anchor);

  // Every hop is a product edge with exactly the recorded cost, and both
  // cost fields are the path-ordered sums of their steps.
  auto check_hop = [&](int from, const PlanStep& step) {
    bool found = false;
    for (const ProductEdge& e : p.edges[static_cast<std::size_t>(from)]) {
      if (e.target == step.product_state && e.cost == step.cost) found = true;
    }
    CHECK(found);
  };
  double acc = 0.0;
  for (std::size_t k = 1; k < plan.prefix.size(); ++k) {
    check_hop(plan.prefix[k - 1].product_state, plan.prefix[k]);
    acc += plan.prefix[k].cost;
  }
  CHECK(acc == plan.prefix_cost);
  acc = 0.0;
  int at = anchor;
  for (const PlanStep& step : plan.cycle) {
    check_hop(at, step);
    at = step.product_state;
    acc += step.cost;
  }
  CHECK(acc == plan.cycle_cost);

  CHECK(plan_satisfies(plan, ts, nba));

  // Pretty rendering is valid JSON naming the regions.
  nlohmann::json doc = nlohmann::json::parse(plan_json(plan, ts));
  CHECK(doc.contains("cycle_cost"));
}

TEST_CASE("cycle cost equals both brute-force oracles on a tiny instance") {
  Fixture fx({{"A", {1, 1}}, {"B", {3, 1}}}, {1, 1}, {{"w", 2.0}},
             "A.w && <>(B.w)");
  TransitionSystem ts = build_transition_system(fx.ws, fx.spec, *fx.travel);
  Formula goal =
      mk_always(mk_eventually(parse_ltl(fx.spec.task, ts.alphabet)));
  Nba nba = translate_to_nba(goal);
  Product p = build_product(ts, nba);
  Plan plan = synthesize_plan(ts, p, 0);

  double bf = min_accepting_cycle_bf(p);
  double dfs = min_accepting_cycle_dfs(p);
  CHECK(bf == dfs);
  CHECK(plan.cycle_cost == bf);
}

TEST_CASE("cycle cost matches the relaxation oracle on random instances") {
  int done = 0;
  for (std::uint64_t seed = 100; done < 8 && seed < 160; ++seed) {
    std::unique_ptr<SmallInstance> si = random_instance(seed);
    for (const PlannedAgent& pa : si->agents) {
      if (pa.product.states.size() > 200) continue;
      CHECK(pa.plan.cycle_cost == min_accepting_cycle_bf(pa.product));
      CHECK(plan_satisfies(pa.plan, pa.ts, pa.nba));
      ++done;
    }
  }
  CHECK(done >= 8);
}

TEST_CASE("mutated plans agree with the direct semantics oracle") {
  Fixture fx({{"A", {1, 1}}, {"B", {4, 1}}, {"C", {1, 4}}}, {1, 1},
             {{"w", 2.0}}, "A.w && <>(C.w)");
  TransitionSystem ts = build_transition_system(fx.ws, fx.spec, *fx.travel);
  Formula goal =
      mk_always(mk_eventually(parse_ltl(fx.spec.task, ts.alphabet)));
  Nba nba = translate_to_nba(goal);
  Product p = build_product(ts, nba);
  Plan plan = synthesize_plan(ts, p, 0);

  auto oracle_verdict = [&](const Plan& pl) {
    Lasso w;
    for (std::size_t i = 1; i < pl.prefix.size(); ++i) {
      w.prefix.push_back(ts.labels[static_cast<std::size_t>(pl.prefix[i].ts_state)]);
    }
    for (const PlanStep& s : pl.cycle) {
      w.cycle.push_back(ts.labels[static_cast<std::size_t>(s.ts_state)]);
    }
    return word_satisfies(goal, w);
  };

  CHECK(plan_satisfies(plan, ts, nba) == oracle_verdict(plan));
  CHECK(plan_satisfies(plan, ts, nba));

  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    Plan mut = plan;
    switch (rng() % 3) {
      case 0:  // retarget a random cycle step to a random ts state
        mut.cycle[rng() % mut.cycle.size()].ts_state =
            static_cast<int>(rng() % ts.states.size());
        break;
      case 1:  // drop a cycle step
        if (mut.cycle.size() > 1) {
          mut.cycle.erase(mut.cycle.begin() +
                          static_cast<long>(rng() % mut.cycle.size()));
        }
        break;
      default:  // duplicate a cycle step
        mut.cycle.insert(mut.cycle.begin() +
                             static_cast<long>(rng() % mut.cycle.size()),
                         mut.cycle[rng() % mut.cycle.size()]);
        break;
    }
    CHECK(plan_satisfies(mut, ts, nba) == oracle_verdict(mut));
  }
}

TEST_CASE("impossible tasks surface as infeasible") {
  // A contradiction never reaches an accepting cycle.
  Fixture fx({{"A", {1, 1}}}, {1, 1}, {{"w", 1.0}}, "A.w && !A.w");
  TransitionSystem ts = build_transition_system(fx.ws, fx.spec, *fx.travel);
  Formula goal =
      mk_always(mk_eventually(parse_ltl(fx.spec.task, ts.alphabet)));
  Nba nba = translate_to_nba(goal);
  Product p = build_product(ts, nba);
  CHECK_THROWS_AS(synthesize_plan(ts, p, 0), InfeasibleError);
}

TEST_CASE("a zero-duration best cycle is rejected, not returned") {
  // Two regions on one cell make region hops free, and the trivial task puts
  // an accepting cycle on them; recurring in no time must be refused.
  Fixture fx({{"A", {1, 1}}, {"B", {1, 1}}}, {1, 1}, {{"w", 1.0}}, "true");
  TransitionSystem ts = build_transition_system(fx.ws, fx.spec, *fx.travel);
  Formula goal =
      mk_always(mk_eventually(parse_ltl(fx.spec.task, ts.alphabet)));
  Nba nba = translate_to_nba(goal);
  Product p = build_product(ts, nba);
  CHECK_THROWS_AS(synthesize_plan(ts, p, 0), InfeasibleError);
}

TEST_CASE("full pipeline plans every bundled plant agent") {
  Scenario sc = load_scenario_file(std::string(MACOORD_SCENARIO_DIR) +
                                   "/plant.json");
  std::vector<PlannedAgent> agents = plan_agents(sc);
  REQUIRE(agents.size() == 8);
  for (const PlannedAgent& pa : agents) {
    CHECK(plan_satisfies(pa.plan, pa.ts, pa.nba));
    CHECK(pa.plan.cycle_cost > 0.0);
    CHECK(pa.pattern.cycle_len() >= 1);
    CHECK(pa.pattern.loop_cost() == pa.plan.cycle_cost);
  }
}
