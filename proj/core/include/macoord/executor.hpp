#pragma once

#include <string>
#include <vector>

#include "macoord/consensus.hpp"
#include "macoord/game.hpp"
#include "macoord/pipeline.hpp"
#include "macoord/scenario.hpp"

namespace macoord {

enum class EventType {
  MoveStart,
  MoveEnd,
  ActionStart,
  ActionEnd,
  ArriveRendezvous,
  CommStart,
  CommEnd,
};

std::string event_type_name(EventType t);

// One timestamped fact about the run.  agent is -1 for team-wide events.
// Events are ordered by time, with completions sorting before starts at
// equal times, then by agent id.
struct Event {
  EventType type = EventType::MoveStart;
  double t = 0.0;
  int agent = -1;
  int round = -1;
  Cell from;
  Cell to;
  std::string region;
  std::string action;
  double duration = 0.0;
};

// Piecewise position primitive: the agent sits at p0 (turn, action, wait)
// when p0 == p1, otherwise slides p0 -> p1 linearly over [t0, t1].
struct MotionPhase {
  double t0 = 0.0;
  double t1 = 0.0;
  Point p0;
  Point p1;
};

// Adds extra_seconds to the first action the agent performs within the
// given round's plan segment.  Unknown to the schedule computation, so it
// shows up as a late arrival that the rest of the team waits out.
struct Perturbation {
  int agent = 0;
  int round = 0;
  double extra_seconds = 0.0;
};

struct ConnectivitySample {
  double t = 0.0;
  std::vector<std::pair<int, int>> edges;  // pairs within range, a < b
  bool connected = false;
};

struct ConnectivityInterval {
  double a = 0.0;
  double b = 0.0;
};

struct ConnectivityLog {
  std::vector<ConnectivitySample> samples;
  std::vector<ConnectivityInterval> intervals;  // maximal connected stretches
};

struct ApiSample {
  double t = 0.0;
  int agent = 0;
  double estimate = 0.0;
  double truth_value = 0.0;
};

// One rendezvous: who met, under which window, where the game landed and
// what actually happened.  wall_seconds is the host-side schedule
// computation time; it is reporting-only and never feeds back into the run.
struct RoundRecord {
  int round = 0;
  std::vector<int> participants;
  double window_start = 0.0;
  double window_end = 0.0;
  std::vector<Strategy> profile;
  double phi = 0.0;
  std::vector<double> xi;  // scheduled per-participant cost of the profile
  int iterations = 0;
  bool converged = true;
  bool connected = true;
  std::vector<double> arrivals;  // realized
  double t_c = 0.0;              // realized
  std::vector<TraceEntry> trace;
  double wall_seconds = 0.0;
};

struct AgentResult {
  int agent = 0;
  double plan_prefix_cost = 0.0;
  double plan_cycle_cost = 0.0;
  std::vector<double> satisfaction;  // completion times of recurring goals
  double makespan = 0.0;             // largest gap between consecutive ones
  DeviationMetrics deviation;
};

struct RunResult {
  std::vector<Event> events;
  std::vector<RoundRecord> rounds;
  ConnectivityLog connectivity;
  std::vector<ApiSample> api;
  std::vector<AgentResult> agents;
  double horizon = 0.0;
};

struct RunOptions {
  ReduceMode reduce = ReduceMode::Direct;
  std::vector<Perturbation> perturbations;
  double tick = 0.1;     // connectivity sampling step
  double horizon = 0.0;  // plain plan-following runs: stop time (0 = auto)
};

// Largest gap between consecutive entries; +inf with fewer than two.
double realized_makespan(const std::vector<double>& instants);

// Window r passes when some connected stretch [a, b] starts early enough
// inside the window and still covers a full rendezvous duration:
// max(a, r*Tc) + Dc <= b and max(a, r*Tc) < (r+1)*Tc.
std::vector<bool> verify_sufficient_communication(const ConnectivityLog& log,
                                                  int rounds, double Tc,
                                                  double Dc);

// Discrete-event interpreter shared by the coordination schemes.  Keeps per
// agent a position, a clock and a cursor into the unrolled plan; emits
// events and position phases as the drivers push agents forward.
class SimEngine {
 public:
  SimEngine(const Scenario& sc, std::vector<PlannedAgent>& agents,
            const RunOptions& opt);

  int players() const { return static_cast<int>(rt_.size()); }
  double clock(int i) const { return rt_[i].clock; }
  Cell position(int i) const { return rt_[i].pos; }
  long long next_step(int i) const { return rt_[i].next_step; }
  const std::vector<MotionPhase>& phases(int i) const { return rt_[i].phases; }

  // Completes plan steps next_step..h (h may be next_step-1 for "none").
  void advance_plan(int i, long long h, int round);
  // One leg to the meeting cell; records the rendezvous arrival and locks
  // further diverts to after the next plan step.
  double goto_meeting(int i, Cell z, int round);
  // Plain travel outside the plan, without rendezvous bookkeeping.
  void travel_to(int i, Cell to, int round) { move_leg(i, to, round); }
  void hold_until(int i, double t);
  // Drives the participants through an agreed meeting: advance to the
  // divert step, travel to z, wait out the stragglers, run the window.
  // profile[k] belongs to who[k].  Fills the record's realized fields and
  // returns the window end time.
  double execute_meeting(const std::vector<int>& who,
                         const std::vector<Strategy>& profile, int round,
                         RoundRecord& rec);
  // Rendezvous window: comm events plus 10 Hz estimate averaging across the
  // participants' current positions.  Returns the connection flag.
  bool comm_window(const std::vector<int>& who, double t0, int round);
  // Continuous 10 Hz averaging over (t0, t1] on the global step grid.
  void comm_continuous(const std::vector<int>& who, double t0, double t1);
  // Copies recorded phases onto a follower travelling in lockstep.
  void mirror_phases(int follower, int source, std::size_t from_index);

  // Divert options within the window from the agent's current state,
  // ignoring any pending perturbations (they are surprises by design).
  AgentTimeline project(int i, double window_end) const;
  GameContext make_context(const std::vector<int>& who, double window_start,
                           double window_end) const;

  void record_round(RoundRecord r);
  void refresh_estimate(int i);  // own measurement at the current clock

  RunResult finish(double horizon);

 private:
  struct AgentRt {
    PlannedAgent* pa = nullptr;
    long long next_step = 1;
    long long min_divert = 0;
    double clock = 0.0;
    Cell pos;
    double estimate = 0.0;
    std::vector<std::pair<double, double>> history;  // (t, estimate)
    std::vector<double> satisfaction;
    std::vector<MotionPhase> phases;
  };

  void move_leg(int i, Cell to, int round);
  void do_action(int i, const UnrolledPlan::StepInfo& si, int round);
  Point position_at(int i, double t) const;

  const Scenario* sc_;
  RunOptions opt_;
  std::vector<AgentRt> rt_;
  std::vector<Event> events_;
  std::vector<RoundRecord> rounds_;
  std::vector<Perturbation> pending_;
};

// The full periodic-rendezvous scheme: per round a meeting game planned
// from realized progress, detours, a communication window, then plan
// resumption.  With rounds == 0 the plans run free of any rendezvous until
// the horizon.
RunResult run_simulation(const Scenario& sc, std::vector<PlannedAgent>& agents,
                         const RunOptions& opt = {});

}  // namespace macoord
