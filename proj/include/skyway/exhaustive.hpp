#pragma once

#include <optional>

#include "skyway/composer.hpp"

namespace skyway {

/// Exhaustive baseline: the same composition pipeline as the heuristic but
/// over the full network — no sector, no widening.
ComposeResult compose_exhaustive(const SkywayNetwork& net, const OccupancySchedule& sched,
                                 const DroneSpec& spec, const DeliveryRequest& request);

/// Independent verification oracle for tiny instances (<= 7 nodes, <= 2
/// destinations; throws ValidationError beyond that). Depth-first enumeration
/// of bounded action sequences (fly / recharge / forced drop on arrival),
/// each candidate simulated end-to-end through the drone-model and
/// station-sched primitives only — no code shared with the search engine.
/// Returns the global-minimum-delivery-time plan, ties broken by the
/// lexicographically smallest visited-node sequence; nullopt when no
/// candidate completes all drops.
std::optional<CompositionPlan> brute_force_oracle(const SkywayNetwork& net,
                                                  const OccupancySchedule& sched,
                                                  const DroneSpec& spec,
                                                  const DeliveryRequest& request);

}  // namespace skyway
