#pragma once

#include <vector>

#include "macoord/plan.hpp"
#include "macoord/travel.hpp"

namespace macoord {

// A plan flattened into an infinite step pattern.  Index j = 0 is the
// initial state; indices 1..anchor() walk the prefix; after that the cycle
// repeats with period cycle_len().  Each step carries the pure travel time
// from the previous step's cell and the duration of the action performed on
// entry (one of the two is zero for any single step).  Motion times use the
// owner's canonical headings, so they are the same doubles on every lap.
class UnrolledPlan {
 public:
  struct StepInfo {
    int region = -1;
    int action = 0;
    Cell cell;
    double motion_time = 0.0;
    double action_duration = 0.0;
    SymbolSet label = 0;
  };

  UnrolledPlan() = default;
  UnrolledPlan(const Plan& plan, const TransitionSystem& ts,
               TravelOracle& travel);

  const StepInfo& step(long long j) const;
  long long anchor() const { return anchor_; }
  long long cycle_len() const { return cycle_len_; }
  // Completing an anchor occurrence is one fulfillment of the recurring
  // goal; these sit at j = anchor() + multiples of cycle_len().
  bool is_anchor(long long j) const {
    return j >= anchor_ && (j - anchor_) % cycle_len_ == 0;
  }
  double loop_cost() const { return loop_cost_; }
  double prefix_cost() const { return prefix_cost_; }

 private:
  std::vector<StepInfo> head_;  // indices 0..anchor_
  std::vector<StepInfo> loop_;  // indices anchor_+1 .. anchor_+cycle_len_
  long long anchor_ = 0;
  long long cycle_len_ = 1;
  double loop_cost_ = 0.0;
  double prefix_cost_ = 0.0;
};

}  // namespace macoord
