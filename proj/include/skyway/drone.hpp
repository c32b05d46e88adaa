#pragma once

#include "skyway/network.hpp"

namespace skyway {

/// Drone performance envelope. Defaults mirror the DJI Matrice 300 profile
/// used throughout: 15.3 kg max payload, 82.8 km/h, 2.15 h recharge, and a
/// 3..33 km payload-dependent range.
struct DroneSpec {
  double max_payload_kg = 15.3;
  double max_speed_kmh = 82.8;
  double range_empty_km = 33.0;  // full battery, zero payload
  double range_full_km = 3.0;    // full battery, max payload
  double recharge_duration_h = 2.15;
  double drop_handling_time_h = 0.0;

  void validate() const;
};

struct Package {
  double weight_kg = 0.0;
  NodeId destination = 0;
};

/// Battery charge as a fraction of capacity, always in [0, 1].
struct BatteryState {
  double fraction = 1.0;
};

/// Full-battery range at the given payload: linear interpolation between
/// range_empty (payload 0) and range_full (payload max_payload).
double flight_range(const DroneSpec& spec, double payload_kg);

/// Constant-cruise travel time in hours.
double travel_time(const DroneSpec& spec, double length_km);

/// Battery after flying `length_km` with `payload_kg` on board. Throws
/// InfeasibleLegError when the leg exceeds the available range (1e-9 km slack).
BatteryState consume(const DroneSpec& spec, BatteryState battery, double payload_kg,
                     double length_km);

/// True iff consume() would succeed.
bool can_fly(const DroneSpec& spec, BatteryState battery, double payload_kg, double length_km);

}  // namespace skyway
