#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skyway/network.hpp"

namespace skyway {

/// Absolute-clock busy window on one pad, in hours.
struct BusyInterval {
  double start_h = 0.0;
  double end_h = 0.0;
};

using PadTimetable = std::vector<BusyInterval>;  // sorted, disjoint

/// Earliest recharge window at a station.
struct ReadySlot {
  double start_h = 0.0;   // recharge begins (wait = start - arrival)
  double depart_h = 0.0;  // start + recharge_duration
};

/// Exogenous background traffic per station pad. The planned drone does not
/// reserve pads; it only queries free windows. Immutable after generation.
struct OccupancySchedule {
  /// station id -> one timetable per pad. Every station node of the source
  /// network has an entry; pure waypoints do not.
  std::map<NodeId, std::vector<PadTimetable>> stations;

  std::uint32_t pads_at(NodeId station) const;
  void validate() const;

  /// All pads free everywhere.
  static OccupancySchedule empty_for(const SkywayNetwork& net);
};

/// Earliest t >= arrival_h such that some pad is free for the whole window
/// [t, t + recharge_duration]. A recharge must fit one contiguous window on
/// one pad. Throws ValidationError for stations without pads.
ReadySlot ready_time(const OccupancySchedule& sched, NodeId station, double arrival_h,
                     double recharge_duration_h);

/// Poisson-like busy intervals of length busy_len_h per pad, targeting a busy
/// fraction of load_factor over [0, horizon]. Deterministic per seed.
OccupancySchedule generate_schedule(const SkywayNetwork& net, double horizon_h,
                                    double load_factor, double busy_len_h, std::uint64_t seed);

/// JSON format "skyway-sched/1": {stations: {"<id>": [[{start,end},...] per pad]}}.
void save_schedule(const OccupancySchedule& sched, const std::string& path);
OccupancySchedule load_schedule(const std::string& path);
std::string schedule_to_json(const OccupancySchedule& sched);
OccupancySchedule schedule_from_json(const std::string& text);

}  // namespace skyway
