#include "macoord/pipeline.hpp"

#include <future>

#include "macoord/errors.hpp"
#include "macoord/product.hpp"

namespace macoord {

PlannedAgent plan_agent(const Scenario& sc, const AgentSpec& spec) {
  PlannedAgent pa;
  pa.spec = spec;
  pa.travel = std::make_unique<TravelOracle>(sc.ws, sc.motion, spec.start,
                                             spec.heading);
  pa.ts = build_transition_system(sc.ws, spec, *pa.travel);
  pa.task = parse_ltl(spec.task, pa.ts.alphabet);
  pa.goal = mk_always(mk_eventually(pa.task));
  pa.nba = translate_to_nba(pa.goal);
  pa.product = build_product(pa.ts, pa.nba);
  pa.plan = synthesize_plan(pa.ts, pa.product, spec.id);
  if (!plan_satisfies(pa.plan, pa.ts, pa.nba)) {
    throw Error("internal: synthesized plan for agent " +
                std::to_string(spec.id) + " fails its own acceptance check");
  }
  pa.pattern = UnrolledPlan(pa.plan, pa.ts, *pa.travel);
  return pa;
}

std::vector<PlannedAgent> plan_agents(const Scenario& sc) {
  std::vector<std::future<PlannedAgent>> jobs;
  jobs.reserve(sc.agents.size());
  for (const AgentSpec& spec : sc.agents) {
    jobs.push_back(std::async(std::launch::async, [&sc, &spec] {
      return plan_agent(sc, spec);
    }));
  }
  std::vector<PlannedAgent> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace macoord
