#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skyway/drone.hpp"
#include "skyway/network.hpp"

namespace skyway {

/// One delivery order: a source, 1..8 packages and a departure clock.
struct DeliveryRequest {
  NodeId src = 0;
  std::vector<Package> packages;
  double depart_clock_h = 0.0;

  std::vector<NodeId> destinations() const;
  double total_weight_kg() const;

  /// Enforces distinct destinations != src, positive weights, payload within
  /// the drone limit, and the 8-destination ordering-search cap.
  void validate(const SkywayNetwork& net, const DroneSpec& spec) const;
};

/// One composed drone service: a flight along a single skyway segment.
struct ServiceInvocation {
  SkywaySegment segment;  // from/to oriented in travel direction
  double depart_h = 0.0;
  double arrive_h = 0.0;
  BatteryState battery_after;
};

/// Recharge portion of a stop. Wait is queueing time before a pad frees up.
/// When a stop combines a drop with a recharge, the drop always comes first:
/// packages are handed over on arrival, then the drone requests a pad.
struct RechargeStop {
  double wait_h = 0.0;
};

/// Stop at a node. A stop may combine a drop with a recharge; a stop with
/// neither is a pass-through.
struct NodeEvent {
  NodeId node = 0;
  double clock_in_h = 0.0;
  double clock_out_h = 0.0;
  std::vector<std::size_t> drops;  // indices into the request's package list
  std::optional<RechargeStop> recharge;

  bool is_pass_through() const { return drops.empty() && !recharge; }
};

/// Alternating events/invocations: events.size() == invocations.size() + 1,
/// starting and ending with a NodeEvent.
struct Itinerary {
  std::vector<NodeEvent> events;
  std::vector<ServiceInvocation> invocations;

  NodeId start_node() const { return events.front().node; }
  NodeId end_node() const { return events.back().node; }
};

/// A complete composition: the itinerary plus delivery bookkeeping.
struct CompositionPlan {
  NodeId source = 0;
  double depart_clock_h = 0.0;
  std::vector<Package> packages;
  Itinerary itinerary;
  std::map<NodeId, double> per_destination_arrival_h;
  double delivery_time_h = 0.0;

  std::size_t recharge_count() const;
  double total_wait_h() const;
};

/// JSON format "skyway-plan/1".
std::string plan_to_json(const CompositionPlan& plan);
CompositionPlan plan_from_json(const std::string& text);
void save_plan(const CompositionPlan& plan, const std::string& path);
CompositionPlan load_plan(const std::string& path);

}  // namespace skyway
