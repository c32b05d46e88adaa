#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "skyway/plan.hpp"
#include "skyway/schedule.hpp"

namespace skyway {

/// Outcome of a point-to-point earliest-arrival query.
struct RcspResult {
  std::optional<Itinerary> itinerary;  // nullopt => no battery-feasible route
  double arrival_clock_h = std::numeric_limits<double>::infinity();
  BatteryState arrival_battery{0.0};
  std::size_t labels_expanded = 0;
  /// Frontier when infeasible: every node the search managed to reach.
  std::vector<NodeId> reached;

  bool feasible() const { return itinerary.has_value(); }
};

/// Time-dependent resource-constrained shortest path on the view: earliest
/// arrival at `to` from the given start state, searching over (node, battery)
/// labels. At every station the search branches on pass-through versus
/// land-and-recharge-to-full via ready_time; dominance keeps a label only if
/// no other label at the node is both earlier and at least as charged
/// (1e-9 battery slack). Correctness rests on ready_time being non-overtaking.
RcspResult rcsp_query(const NetworkView& view, const OccupancySchedule& sched,
                      const DroneSpec& spec, double payload_kg, NodeId from, NodeId to,
                      double start_clock_h, BatteryState start_battery);

/// Delivery-time matrix over the key nodes (src + destinations), realized as
/// a memoizing cache over rcsp_query. Keys quantize the start clock at 1e-6 h
/// and, because payload and remaining charge change the answer, the start
/// battery and payload as well.
class CostMatrix {
public:
  CostMatrix(const NetworkView& view, const OccupancySchedule& sched, const DroneSpec& spec,
             std::vector<NodeId> key_nodes);

  /// Minimal-arrival entry (from, to) for the given start state. Diagonal
  /// entries are the identity: arrival == start clock.
  const RcspResult& entry(NodeId from, NodeId to, double start_clock_h,
                          BatteryState start_battery, double payload_kg);

  const std::vector<NodeId>& key_nodes() const { return key_nodes_; }
  std::size_t entries_cached() const { return cache_.size(); }
  std::size_t labels_expanded() const { return labels_expanded_; }

private:
  struct Key {
    NodeId from, to;
    std::int64_t clock_q, battery_q, payload_q;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  const NetworkView* view_;
  const OccupancySchedule* sched_;
  const DroneSpec* spec_;
  std::vector<NodeId> key_nodes_;
  std::unordered_map<Key, RcspResult, KeyHash> cache_;
  std::size_t labels_expanded_ = 0;
};

CostMatrix build_cost_matrix(const NetworkView& view, const OccupancySchedule& sched,
                             const DroneSpec& spec, const DeliveryRequest& request);

struct ComposeDiagnostics {
  std::size_t subgraph_nodes = 0;
  std::size_t subgraph_segments = 0;
  std::size_t widening_rounds = 0;
  std::size_t labels_expanded = 0;
  std::size_t orders_evaluated = 0;
  std::size_t cost_matrix_entries = 0;
  double wall_seconds = 0.0;
  /// Initial per-destination shortest-route node sequences (empty entry when
  /// a destination was unreachable in the view).
  std::vector<std::vector<NodeId>> per_destination_paths;
  std::string infeasible_reason;
};

struct ComposeResult {
  std::optional<CompositionPlan> plan;  // nullopt => infeasible request
  ComposeDiagnostics diagnostics;

  bool feasible() const { return plan.has_value(); }
};

/// Ordering search: enumerates all K! destination visit orders and evaluates
/// each one exactly with the search engine (per-leg payload decreasing after
/// each drop, true start clocks). Ties in delivery time go to the
/// lexicographically smallest destination-id sequence.
ComposeResult best_plan(const NetworkView& view, const OccupancySchedule& sched,
                        const DroneSpec& spec, const DeliveryRequest& request);

/// Shared composition pipeline on an arbitrary view: per-destination paths,
/// cost matrix, then the ordering search. Both the sector heuristic and the
/// exhaustive baseline run exactly this, differing only in the view.
ComposeResult compose_on_view(const NetworkView& view, const OccupancySchedule& sched,
                              const DroneSpec& spec, const DeliveryRequest& request);

/// Sector-subgraph heuristic: bounds the search space with the smallest
/// sector covering the destination bearings (plus margins), then composes on
/// the induced subgraph. If any destination is unreachable there, the sector
/// widens iteratively (angle margin x2, radius margin +0.1) until the plan is
/// feasible or the subgraph is the whole network.
ComposeResult compose_heuristic(const SkywayNetwork& net, const OccupancySchedule& sched,
                                const DroneSpec& spec, const DeliveryRequest& request,
                                const Margins& margins = {});

}  // namespace skyway
