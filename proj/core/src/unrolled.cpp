#include "macoord/unrolled.hpp"

namespace macoord {

UnrolledPlan::UnrolledPlan(const Plan& plan, const TransitionSystem& ts,
                           TravelOracle& travel) {
  auto info = [&](const PlanStep& s, Cell prev) {
    StepInfo out;
    out.region = s.region;
    out.action = s.action;
    out.cell = s.cell;
    out.motion_time = s.cell == prev ? 0.0 : travel.time(prev, s.cell);
    out.action_duration = ts.durations[s.action];
    out.label = ts.labels[s.ts_state];
    return out;
  };

  Cell prev = plan.prefix.front().cell;
  for (std::size_t i = 0; i < plan.prefix.size(); ++i) {
    head_.push_back(info(plan.prefix[i], prev));
    prev = plan.prefix[i].cell;
  }
  head_.front().motion_time = 0.0;
  head_.front().action_duration = 0.0;
  for (const PlanStep& s : plan.cycle) {
    loop_.push_back(info(s, prev));
    prev = s.cell;
  }
  anchor_ = static_cast<long long>(head_.size()) - 1;
  cycle_len_ = static_cast<long long>(loop_.size());
  loop_cost_ = plan.cycle_cost;
  prefix_cost_ = plan.prefix_cost;
}

const UnrolledPlan::StepInfo& UnrolledPlan::step(long long j) const {
  if (j <= anchor_) return head_[static_cast<std::size_t>(j)];
  return loop_[static_cast<std::size_t>((j - anchor_ - 1) % cycle_len_)];
}

}  // namespace macoord
