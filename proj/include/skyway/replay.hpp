#pragma once

#include <string>
#include <vector>

#include "skyway/plan.hpp"
#include "skyway/schedule.hpp"

namespace skyway {

/// One stop of the re-simulated timeline.
struct ReplayEvent {
  NodeId node = 0;
  double clock_in_h = 0.0;
  double clock_out_h = 0.0;
  double battery_in = 1.0;
  double battery_out = 1.0;
};

struct ReplayReport {
  std::vector<ReplayEvent> timeline;
  /// Violations, each naming the offending event or invocation index. Empty
  /// means the plan replays exactly (1e-9 h / 1e-9 battery tolerance).
  std::vector<std::string> issues;
  double delivery_time_h = 0.0;  // recomputed, not copied from the plan

  bool ok() const { return issues.empty(); }
};

/// Re-simulates a plan against the network, schedule, and drone model using
/// only the model primitives: battery from full charge through consume(),
/// recharge windows through ready_time(), drops on arrival. Every claimed
/// clock, wait, and battery value must match the simulation to 1e-9; packages
/// must drop exactly once at their destination; recharges must sit at
/// pad-bearing stations. Discrepancies are collected, not thrown.
ReplayReport replay(const CompositionPlan& plan, const SkywayNetwork& net,
                    const OccupancySchedule& sched, const DroneSpec& spec);

}  // namespace skyway
