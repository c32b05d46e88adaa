#include "skyway/drone.hpp"

#include <algorithm>
#include <string>

#include "skyway/errors.hpp"

namespace skyway {

namespace {
constexpr double kRangeSlackKm = 1e-9;
}

void DroneSpec::validate() const {
  if (max_payload_kg <= 0.0) throw ValidationError("max_payload must be positive");
  if (max_speed_kmh <= 0.0) throw ValidationError("max_speed must be positive");
  if (range_full_km <= 0.0 || range_full_km > range_empty_km) {
    throw ValidationError("require 0 < range_full <= range_empty");
  }
  if (recharge_duration_h <= 0.0) throw ValidationError("recharge_duration must be positive");
  if (drop_handling_time_h < 0.0) throw ValidationError("drop_handling_time must be >= 0");
}

double flight_range(const DroneSpec& spec, double payload_kg) {
  if (payload_kg < 0.0) throw ValidationError("payload must be >= 0");
  if (payload_kg > spec.max_payload_kg) {
    throw ValidationError("payload " + std::to_string(payload_kg) + " kg exceeds max " +
                          std::to_string(spec.max_payload_kg) + " kg");
  }
  return spec.range_empty_km -
         (spec.range_empty_km - spec.range_full_km) * (payload_kg / spec.max_payload_kg);
}

double travel_time(const DroneSpec& spec, double length_km) {
  if (length_km < 0.0) throw ValidationError("length must be >= 0");
  return length_km / spec.max_speed_kmh;
}

BatteryState consume(const DroneSpec& spec, BatteryState battery, double payload_kg,
                     double length_km) {
  if (length_km < 0.0) throw ValidationError("length must be >= 0");
  const double range = flight_range(spec, payload_kg);
  const double available = battery.fraction * range;
  if (length_km > available + kRangeSlackKm) {
    throw InfeasibleLegError(length_km, available);
  }
  // The slack can push the fraction a hair below zero; clamp it back.
  return BatteryState{std::max(0.0, battery.fraction - length_km / range)};
}

bool can_fly(const DroneSpec& spec, BatteryState battery, double payload_kg, double length_km) {
  if (length_km < 0.0 || payload_kg < 0.0 || payload_kg > spec.max_payload_kg) return false;
  return length_km <= battery.fraction * flight_range(spec, payload_kg) + kRangeSlackKm;
}

}  // namespace skyway
