#include "skyway/composer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "skyway/errors.hpp"

namespace skyway {

namespace {

constexpr double kBatterySlack = 1e-9;
constexpr double kClockSlack = 1e-9;
constexpr double kTieEps = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// One leg of a fixed visit order: fly toward `target` carrying `payload_kg`,
/// then (optionally) drop. `package` is empty for plain point-to-point
/// queries, where reaching the target simply ends the search.
struct StageSpec {
  NodeId target = 0;
  double payload_kg = 0.0;
  double handling_h = 0.0;
  std::optional<std::size_t> package;
};

struct Label {
  enum class Kind : std::uint8_t { Start, Fly, Recharge, Drop };

  double clock = 0.0;
  double battery = 1.0;
  NodeId node = 0;
  std::uint32_t stage = 0;
  std::int32_t parent = -1;
  Kind kind = Kind::Start;
  std::uint32_t segment = 0;  // valid for Kind::Fly
  double wait_h = 0.0;        // valid for Kind::Recharge
  bool dead = false;
};

struct EngineOutcome {
  std::vector<Label> chain;  // root..goal; empty => infeasible
  std::size_t labels_expanded = 0;
  std::vector<NodeId> reached;

  bool feasible() const { return !chain.empty(); }
  const Label& goal() const { return chain.back(); }
};

/// Label-setting search over the (node, drops-done) product space. Pops by
/// clock, so the first label completing the last stage is the earliest
/// possible final arrival. Labels with clock beyond `prune_above` cannot beat
/// an already-known plan and are cut.
class StagedSearch {
public:
  StagedSearch(const NetworkView& view, const OccupancySchedule& sched, const DroneSpec& spec,
               const std::vector<StageSpec>& stages)
      : view_(view), sched_(sched), spec_(spec), stages_(stages) {
    pareto_.resize(view.net->nodes.size() * (stages.size() + 1));
  }

  EngineOutcome run(NodeId start, double start_clock, double start_battery, double prune_above,
                    bool collect_reached) {
    EngineOutcome out;
    push(Label{start_clock, start_battery, start, 0, -1, Label::Kind::Start, 0, 0.0, false});

    std::int32_t goal = -1;
    while (!queue_.empty()) {
      const std::int32_t idx = queue_.top().second;
      queue_.pop();
      if (pool_[idx].dead) continue;
      const Label label = pool_[idx];
      ++out.labels_expanded;

      if (label.stage == stages_.size()) {
        goal = idx;
        break;
      }
      const StageSpec& stage = stages_[label.stage];

      // Arriving at the stage target always hands the package over on the
      // spot. Charging or flying past before the drop cannot help: dropping
      // is instantaneous apart from handling and only sheds payload.
      if (label.node == stage.target) {
        push(Label{label.clock + stage.handling_h, label.battery, label.node, label.stage + 1,
                   idx, Label::Kind::Drop, 0, 0.0, false},
             prune_above);
        continue;
      }

      // Land and recharge to full. Only worthwhile below full charge.
      if (label.battery < 1.0 && view_.net->node(label.node).pads > 0 &&
          sched_.pads_at(label.node) > 0) {
        const ReadySlot slot =
            ready_time(sched_, label.node, label.clock, spec_.recharge_duration_h);
        push(Label{slot.depart_h, 1.0, label.node, label.stage, idx, Label::Kind::Recharge, 0,
                   slot.start_h - label.clock, false},
             prune_above);
      }

      // Fly any incident segment the battery allows.
      for (const std::uint32_t s : view_.adjacency[label.node]) {
        const SkywaySegment& seg = view_.net->segments[s];
        if (!can_fly(spec_, BatteryState{label.battery}, stage.payload_kg, seg.length_km)) {
          continue;
        }
        push(Label{label.clock + travel_time(spec_, seg.length_km),
                   consume(spec_, BatteryState{label.battery}, stage.payload_kg, seg.length_km)
                       .fraction,
                   seg.other(label.node), label.stage, idx, Label::Kind::Fly, s, 0.0, false},
             prune_above);
      }
    }

    if (goal >= 0) {
      for (std::int32_t i = goal; i >= 0; i = pool_[i].parent) {
        out.chain.push_back(pool_[i]);
      }
      std::reverse(out.chain.begin(), out.chain.end());
    } else if (collect_reached) {
      std::vector<char> seen(view_.net->nodes.size(), 0);
      for (const Label& l : pool_) seen[l.node] = 1;
      for (NodeId id = 0; id < seen.size(); ++id) {
        if (seen[id]) out.reached.push_back(id);
      }
    }
    return out;
  }

private:
  struct Entry {
    double clock;
    double battery;
    std::int32_t index;
  };

  void push(Label label, double prune_above = kInf) {
    if (label.clock > prune_above) return;
    auto& front = pareto_[label.node * (stages_.size() + 1) + label.stage];
    for (const Entry& e : front) {
      if (e.clock <= label.clock && e.battery + kBatterySlack >= label.battery) {
        return;  // dominated
      }
    }
    std::erase_if(front, [&](const Entry& e) {
      const bool gone = label.clock <= e.clock && label.battery + kBatterySlack >= e.battery;
      if (gone) pool_[e.index].dead = true;
      return gone;
    });
    const std::int32_t idx = static_cast<std::int32_t>(pool_.size());
    pool_.push_back(label);
    front.push_back({label.clock, label.battery, idx});
    queue_.emplace(label.clock, idx);
  }

  struct QueueOrder {
    // Ties resolved by insertion order for fully deterministic expansion.
    bool operator()(const std::pair<double, std::int32_t>& a,
                    const std::pair<double, std::int32_t>& b) const {
      if (a.first != b.first) return a.first > b.first;
      return a.second > b.second;
    }
  };

  const NetworkView& view_;
  const OccupancySchedule& sched_;
  const DroneSpec& spec_;
  const std::vector<StageSpec>& stages_;
  std::vector<Label> pool_;
  std::vector<std::vector<Entry>> pareto_;
  std::priority_queue<std::pair<double, std::int32_t>, std::vector<std::pair<double, std::int32_t>>,
                      QueueOrder>
      queue_;
};

/// Payload on board during each stage of the given visit order.
std::vector<StageSpec> stages_for_order(const DeliveryRequest& request,
                                        const std::vector<std::size_t>& order,
                                        const DroneSpec& spec) {
  std::vector<StageSpec> stages;
  stages.reserve(order.size());
  double payload = request.total_weight_kg();
  for (const std::size_t pkg : order) {
    stages.push_back(
        {request.packages[pkg].destination, payload, spec.drop_handling_time_h, pkg});
    payload -= request.packages[pkg].weight_kg;
  }
  return stages;
}

/// Rebuilds the alternating event/invocation structure from a label chain.
Itinerary itinerary_from_chain(const std::vector<Label>& chain, const NetworkView& view) {
  Itinerary it;
  NodeEvent current;
  current.node = chain.front().node;
  current.clock_in_h = chain.front().clock;
  double last_clock = chain.front().clock;

  for (std::size_t i = 1; i < chain.size(); ++i) {
    const Label& l = chain[i];
    switch (l.kind) {
      case Label::Kind::Fly: {
        current.clock_out_h = last_clock;
        it.events.push_back(std::move(current));
        const SkywaySegment& seg = view.net->segments[l.segment];
        ServiceInvocation inv;
        inv.segment = seg;
        if (seg.from != it.events.back().node) {
          std::swap(inv.segment.from, inv.segment.to);  // orient in travel direction
        }
        inv.depart_h = last_clock;
        inv.arrive_h = l.clock;
        inv.battery_after = BatteryState{l.battery};
        it.invocations.push_back(inv);
        current = NodeEvent{};
        current.node = l.node;
        current.clock_in_h = l.clock;
        break;
      }
      case Label::Kind::Recharge:
        current.recharge = RechargeStop{l.wait_h};
        last_clock = l.clock;
        continue;
      case Label::Kind::Drop:
        last_clock = l.clock;
        continue;
      case Label::Kind::Start:
        break;
    }
    last_clock = l.clock;
  }
  current.clock_out_h = last_clock;
  it.events.push_back(std::move(current));
  return it;
}

/// Records package drops onto the itinerary and derives per-destination
/// arrivals. The chain is re-walked because drops live on labels, not nodes.
CompositionPlan plan_from_chain(const std::vector<Label>& chain, const NetworkView& view,
                                const DeliveryRequest& request,
                                const std::vector<StageSpec>& stages) {
  CompositionPlan plan;
  plan.source = request.src;
  plan.depart_clock_h = request.depart_clock_h;
  plan.packages = request.packages;
  plan.itinerary = itinerary_from_chain(chain, view);

  // Map each Drop label onto the event active at that point of the chain.
  std::size_t event_idx = 0;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const Label& l = chain[i];
    if (l.kind == Label::Kind::Fly) {
      ++event_idx;
    } else if (l.kind == Label::Kind::Drop) {
      const StageSpec& stage = stages[chain[i - 1].stage];
      if (stage.package) {
        NodeEvent& ev = plan.itinerary.events[event_idx];
        ev.drops.push_back(*stage.package);
        plan.per_destination_arrival_h[stage.target] = ev.clock_in_h;
      }
    }
  }

  double last_arrival = plan.depart_clock_h;
  for (const auto& [node, clock] : plan.per_destination_arrival_h) {
    last_arrival = std::max(last_arrival, clock);
  }
  plan.delivery_time_h = last_arrival - plan.depart_clock_h;
  return plan;
}

void require_in_view(const NetworkView& view, NodeId id, const char* what) {
  if (!view.contains(id)) {
    throw ValidationError(std::string(what) + " node " + std::to_string(id) + " not in view");
  }
}

}  // namespace

RcspResult rcsp_query(const NetworkView& view, const OccupancySchedule& sched,
                      const DroneSpec& spec, double payload_kg, NodeId from, NodeId to,
                      double start_clock_h, BatteryState start_battery) {
  require_in_view(view, from, "query source");
  require_in_view(view, to, "query target");

  RcspResult result;
  if (from == to) {
    Itinerary it;
    it.events.push_back(NodeEvent{from, start_clock_h, start_clock_h, {}, std::nullopt});
    result.itinerary = std::move(it);
    result.arrival_clock_h = start_clock_h;
    result.arrival_battery = start_battery;
    return result;
  }

  const std::vector<StageSpec> stages{{to, payload_kg, 0.0, std::nullopt}};
  StagedSearch search(view, sched, spec, stages);
  EngineOutcome out = search.run(from, start_clock_h, start_battery.fraction, kInf, true);
  result.labels_expanded = out.labels_expanded;
  if (out.feasible()) {
    result.arrival_clock_h = out.goal().clock;
    result.arrival_battery = BatteryState{out.goal().battery};
    result.itinerary = itinerary_from_chain(out.chain, view);
  } else {
    result.reached = std::move(out.reached);
  }
  return result;
}

std::size_t CostMatrix::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ull;
  };
  mix(k.from);
  mix(k.to);
  mix(static_cast<std::uint64_t>(k.clock_q));
  mix(static_cast<std::uint64_t>(k.battery_q));
  mix(static_cast<std::uint64_t>(k.payload_q));
  return static_cast<std::size_t>(h);
}

CostMatrix::CostMatrix(const NetworkView& view, const OccupancySchedule& sched,
                       const DroneSpec& spec, std::vector<NodeId> key_nodes)
    : view_(&view), sched_(&sched), spec_(&spec), key_nodes_(std::move(key_nodes)) {
  for (const NodeId id : key_nodes_) require_in_view(view, id, "cost matrix key");
}

const RcspResult& CostMatrix::entry(NodeId from, NodeId to, double start_clock_h,
                                    BatteryState start_battery, double payload_kg) {
  const auto quant = [](double v, double step) {
    return static_cast<std::int64_t>(std::llround(v / step));
  };
  const Key key{from, to, quant(start_clock_h, 1e-6), quant(start_battery.fraction, 1e-9),
                quant(payload_kg, 1e-9)};
  const auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  RcspResult fresh =
      rcsp_query(*view_, *sched_, *spec_, payload_kg, from, to, start_clock_h, start_battery);
  labels_expanded_ += fresh.labels_expanded;
  return cache_.emplace(key, std::move(fresh)).first->second;
}

CostMatrix build_cost_matrix(const NetworkView& view, const OccupancySchedule& sched,
                             const DroneSpec& spec, const DeliveryRequest& request) {
  std::vector<NodeId> keys{request.src};
  for (const NodeId d : request.destinations()) keys.push_back(d);
  return CostMatrix(view, sched, spec, std::move(keys));
}

namespace {

/// Chains single-start matrix entries along one order. The result is a valid
/// plan's final arrival, used as an upper bound seeding the exact search.
double greedy_chain_bound(CostMatrix& matrix, const DeliveryRequest& request,
                          const std::vector<std::size_t>& order, const DroneSpec& spec) {
  NodeId at = request.src;
  double clock = request.depart_clock_h;
  BatteryState battery{1.0};
  double payload = request.total_weight_kg();
  double final_arrival = kInf;
  for (const std::size_t pkg : order) {
    const NodeId target = request.packages[pkg].destination;
    const RcspResult& leg = matrix.entry(at, target, clock, battery, payload);
    if (!leg.feasible()) return kInf;
    final_arrival = leg.arrival_clock_h;
    clock = leg.arrival_clock_h + spec.drop_handling_time_h;
    battery = leg.arrival_battery;
    payload -= request.packages[pkg].weight_kg;
    at = target;
  }
  return final_arrival;
}

ComposeResult ordering_search(const NetworkView& view, const OccupancySchedule& sched,
                              const DroneSpec& spec, const DeliveryRequest& request,
                              CostMatrix& matrix, ComposeDiagnostics diag) {
  // Permutations in lexicographic destination-id order; ties on delivery time
  // keep the first (i.e. lexicographically smallest) order.
  std::vector<std::size_t> order(request.packages.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return request.packages[a].destination < request.packages[b].destination;
  });

  std::optional<CompositionPlan> best;
  double best_final = kInf;
  do {
    ++diag.orders_evaluated;
    const double bound = std::min(best_final, greedy_chain_bound(matrix, request, order, spec));
    const std::vector<StageSpec> stages = stages_for_order(request, order, spec);
    StagedSearch search(view, sched, spec, stages);
    // The bound is a final *arrival* clock; the goal label additionally
    // carries the last drop's handling time, so admit up to that much more.
    EngineOutcome out = search.run(request.src, request.depart_clock_h, 1.0,
                                   bound + spec.drop_handling_time_h + kClockSlack, false);
    diag.labels_expanded += out.labels_expanded;
    if (!out.feasible()) continue;
    // Goal clock includes the final drop's handling; compare on arrival.
    const double final_arrival = out.goal().clock - spec.drop_handling_time_h;
    if (final_arrival < best_final - kTieEps) {
      best_final = final_arrival;
      best = plan_from_chain(out.chain, view, request, stages);
    }
  } while (std::next_permutation(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return request.packages[a].destination < request.packages[b].destination;
  }));

  diag.labels_expanded += matrix.labels_expanded();
  diag.cost_matrix_entries = matrix.entries_cached();
  ComposeResult result;
  if (!best) {
    diag.infeasible_reason = "no battery-feasible composition for any visit order";
  }
  result.plan = std::move(best);
  result.diagnostics = std::move(diag);
  return result;
}

/// Aggregate outcome of the full-payload seed routes.
struct SeedOutcome {
  bool all = true;
  bool any = false;
};

/// Shortest route to each destination at full payload. Routed through the
/// matrix so the ordering search reuses them; the node paths land in the
/// diagnostics (empty path = no route).
SeedOutcome seed_paths(CostMatrix& matrix, const DeliveryRequest& request,
                       ComposeDiagnostics& diag) {
  SeedOutcome out;
  const double payload = request.total_weight_kg();
  for (const NodeId dst : request.destinations()) {
    const RcspResult& r =
        matrix.entry(request.src, dst, request.depart_clock_h, BatteryState{1.0}, payload);
    std::vector<NodeId> path;
    if (r.feasible()) {
      for (const NodeEvent& e : r.itinerary->events) path.push_back(e.node);
    }
    out.all = out.all && r.feasible();
    out.any = out.any || r.feasible();
    diag.per_destination_paths.push_back(std::move(path));
  }
  return out;
}

/// Nodes reachable from `src` over member-internal segments short enough to
/// fly on a full charge at `payload_kg`. Reaching a node this way is
/// necessary for any real trajectory at that payload or heavier: the battery
/// never exceeds a full charge, so no longer segment can ever be flown.
std::vector<char> flyable_reach(const NetworkView& full, const std::vector<char>& member,
                                const DroneSpec& spec, double payload_kg, NodeId src) {
  const double range_km = flight_range(spec, payload_kg);
  std::vector<char> seen(full.net->nodes.size(), 0);
  if (src >= member.size() || !member[src]) return seen;
  std::vector<NodeId> stack{src};
  seen[src] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (const std::uint32_t s : full.adjacency[u]) {
      const SkywaySegment& seg = full.net->segments[s];
      if (seg.length_km > range_km) continue;
      const NodeId v = seg.other(u);
      if (!member[v] || seen[v]) continue;
      seen[v] = 1;
      stack.push_back(v);
    }
  }
  return seen;
}

/// Necessary condition for any composition within the member set: each
/// destination must be flyable-reachable carrying just its own package,
/// since the payload en route to it is never lighter than that. Packages of
/// equal weight share one sweep (the common benchmark case).
bool min_weight_gate(const NetworkView& full, const std::vector<char>& member,
                     const DroneSpec& spec, const DeliveryRequest& request, NodeId& blocked) {
  std::vector<std::pair<double, std::vector<char>>> sweeps;
  for (const Package& p : request.packages) {
    const std::vector<char>* seen = nullptr;
    for (const auto& sweep : sweeps) {
      if (sweep.first == p.weight_kg) {
        seen = &sweep.second;
        break;
      }
    }
    if (seen == nullptr) {
      sweeps.emplace_back(p.weight_kg,
                          flyable_reach(full, member, spec, p.weight_kg, request.src));
      seen = &sweeps.back().second;
    }
    if (!(*seen)[p.destination]) {
      blocked = p.destination;
      return false;
    }
  }
  return true;
}

/// One widening round of the heuristic on a candidate subgraph. One sound
/// shortcut settles hopeless views before the ordering search is paid for: a
/// feasible plan's first drop needs some destination reachable at the full
/// departure payload, so if every seed route is infeasible no composition
/// exists in this view. Otherwise the complete ordering search decides (a
/// destination missing its seed route may still be served after earlier
/// drops lighten the payload).
ComposeResult compose_round(const NetworkView& view, const OccupancySchedule& sched,
                            const DroneSpec& spec, const DeliveryRequest& request) {
  ComposeResult result;
  ComposeDiagnostics diag;
  diag.subgraph_nodes = view.node_count();
  diag.subgraph_segments = view.segment_ids.size();

  CostMatrix matrix = build_cost_matrix(view, sched, spec, request);
  const SeedOutcome seeds = seed_paths(matrix, request, diag);
  if (!seeds.any) {
    diag.labels_expanded += matrix.labels_expanded();
    diag.cost_matrix_entries = matrix.entries_cached();
    diag.infeasible_reason = "no destination reachable at departure payload";
    result.diagnostics = std::move(diag);
    return result;
  }
  return ordering_search(view, sched, spec, request, matrix, std::move(diag));
}

}  // namespace

ComposeResult best_plan(const NetworkView& view, const OccupancySchedule& sched,
                        const DroneSpec& spec, const DeliveryRequest& request) {
  require_in_view(view, request.src, "request source");
  for (const NodeId d : request.destinations()) require_in_view(view, d, "request destination");
  CostMatrix matrix = build_cost_matrix(view, sched, spec, request);
  return ordering_search(view, sched, spec, request, matrix, ComposeDiagnostics{});
}

ComposeResult compose_on_view(const NetworkView& view, const OccupancySchedule& sched,
                              const DroneSpec& spec, const DeliveryRequest& request) {
  ComposeDiagnostics diag;
  diag.subgraph_nodes = view.node_count();
  diag.subgraph_segments = view.segment_ids.size();

  // Initial shortest route to each destination at full payload. These orient
  // the composition, surface unreachable destinations early and pre-warm the
  // matrix for the ordering search.
  CostMatrix matrix = build_cost_matrix(view, sched, spec, request);
  seed_paths(matrix, request, diag);
  return ordering_search(view, sched, spec, request, matrix, std::move(diag));
}

ComposeResult compose_heuristic(const SkywayNetwork& net, const OccupancySchedule& sched,
                                const DroneSpec& spec, const DeliveryRequest& request,
                                const Margins& margins) {
  const auto t0 = std::chrono::steady_clock::now();
  request.validate(net, spec);

  const Vec2 src_pos = net.node(request.src).position;
  std::vector<Vec2> dst_pos;
  std::vector<char> forced(net.nodes.size(), 0);
  forced[request.src] = 1;
  for (const NodeId d : request.destinations()) {
    dst_pos.push_back(net.node(d).position);
    forced[d] = 1;
  }

  const NetworkView full = full_view(net);  // gate adjacency + final-round view
  std::vector<char> member(net.nodes.size(), 0);
  Margins m = margins;
  std::size_t rounds = 0;
  std::size_t labels_prior_rounds = 0;
  std::size_t prev_node_count = 0;
  ComposeResult result;
  while (true) {
    const Sector sector = sector_cover(src_pos, dst_pos, m);
    std::size_t node_count = 0;
    for (const Node& n : net.nodes) {
      member[n.id] = (forced[n.id] != 0 || sector.contains(n.position)) ? 1 : 0;
      node_count += member[n.id];
    }
    const bool is_full = node_count == net.nodes.size();

    // Margins only ever grow, so the sector region — and with it the member
    // set — is monotone; an unchanged node count means the identical
    // subgraph, and re-searching it cannot change the outcome.
    const bool fresh = node_count != prev_node_count || is_full;
    if (fresh) {
      prev_node_count = node_count;
      NodeId blocked = 0;
      if (!min_weight_gate(full, member, spec, request, blocked)) {
        result = ComposeResult{};
        result.diagnostics.subgraph_nodes = node_count;
        result.diagnostics.subgraph_segments = static_cast<std::size_t>(std::count_if(
            net.segments.begin(), net.segments.end(),
            [&member](const SkywaySegment& s) { return member[s.from] && member[s.to]; }));
        result.diagnostics.infeasible_reason =
            "destination " + std::to_string(blocked) + " unreachable even at minimum payload";
      } else {
        std::optional<NetworkView> local;
        if (!is_full) {
          local = induced_subgraph(
              net, [&member](const Node& n) { return member[n.id] != 0; }, {});
        }
        result = compose_round(is_full ? full : *local, sched, spec, request);
      }
      if (result.feasible() || is_full) {
        result.diagnostics.widening_rounds = rounds;
        result.diagnostics.labels_expanded += labels_prior_rounds;
        break;
      }
      labels_prior_rounds += result.diagnostics.labels_expanded;
    }

    m.angle_margin_rad *= 2.0;
    m.radius_margin += 0.1;
    ++rounds;
  }

  result.diagnostics.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace skyway
