#include "skyway/exhaustive.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <limits>

#include "skyway/errors.hpp"

namespace skyway {

ComposeResult compose_exhaustive(const SkywayNetwork& net, const OccupancySchedule& sched,
                                 const DroneSpec& spec, const DeliveryRequest& request) {
  const auto t0 = std::chrono::steady_clock::now();
  request.validate(net, spec);
  ComposeResult result = compose_on_view(full_view(net), sched, spec, request);
  result.diagnostics.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

namespace {

// Enumeration caps. Generous for <= 7 nodes: optimal tours there take a
// handful of flights and at most a couple of recharges per delivery leg, and
// branch-and-bound trims almost everything once a first candidate lands.
constexpr int kMaxVisitsPerNode = 4;  // per delivery leg
constexpr int kMaxRecharges = 6;      // per delivery leg
constexpr int kMaxActions = 64;       // per delivery leg

struct TraceStep {
  enum class Kind : std::uint8_t { Fly, Recharge, Drop } kind;
  NodeId node = 0;       // node arrived at / acted on
  std::uint32_t segment = 0;
  double clock = 0.0;    // clock after the action
  double battery = 1.0;  // battery after the action
  double wait_h = 0.0;   // Recharge only
  std::size_t package = 0;  // Drop only
};

/// One full depth-first enumeration over action sequences for a fixed
/// destination order. Keeps the incumbent across orders for pruning.
class Enumerator {
public:
  Enumerator(const SkywayNetwork& net, const OccupancySchedule& sched, const DroneSpec& spec,
             const DeliveryRequest& request)
      : net_(net), sched_(sched), spec_(spec), request_(request) {
    for (const SkywaySegment& seg : net.segments) {
      incident_[seg.from].push_back(static_cast<std::uint32_t>(&seg - net.segments.data()));
      incident_[seg.to].push_back(static_cast<std::uint32_t>(&seg - net.segments.data()));
    }
  }

  void run_order(const std::vector<std::size_t>& order) {
    order_ = &order;
    payloads_.clear();
    double payload = request_.total_weight_kg();
    for (const std::size_t pkg : order) {
      payloads_.push_back(payload);
      payload -= request_.packages[pkg].weight_kg;
    }
    trace_.clear();
    seq_.assign(1, request_.src);
    std::array<std::uint8_t, 8> visits{};
    visits[request_.src] = 1;
    walk(request_.src, request_.depart_clock_h, 1.0, 0, visits, 0, 0);
  }

  bool found() const { return best_clock_ < std::numeric_limits<double>::infinity(); }
  double best_final_arrival() const { return best_clock_; }
  const std::vector<TraceStep>& best_trace() const { return best_trace_; }
  const std::vector<std::size_t>& best_order() const { return best_order_; }

private:
  void walk(NodeId node, double clock, double battery, std::size_t stage,
            std::array<std::uint8_t, 8>& visits, int recharges, int actions) {
    if (stage == order_->size()) {
      finish(clock);
      return;
    }
    const NodeId target = request_.packages[(*order_)[stage]].destination;

    // Delivery is immediate on arrival: hand over, then carry on lighter.
    if (node == target) {
      const double done = clock + spec_.drop_handling_time_h;
      trace_.push_back({TraceStep::Kind::Drop, node, 0, done, battery, 0.0, (*order_)[stage]});
      std::array<std::uint8_t, 8> fresh{};
      fresh[node] = 1;
      walk(node, done, battery, stage + 1, fresh, 0, 0);
      trace_.pop_back();
      return;
    }

    // Every remaining completion flies at least once more, so it arrives
    // strictly after `clock`; equal-clock states survive for the tie-break.
    if (clock > best_clock_) return;
    if (actions >= kMaxActions) return;

    if (battery < 1.0 && net_.node(node).pads > 0 && sched_.pads_at(node) > 0 &&
        recharges < kMaxRecharges) {
      const ReadySlot slot = ready_time(sched_, node, clock, spec_.recharge_duration_h);
      trace_.push_back(
          {TraceStep::Kind::Recharge, node, 0, slot.depart_h, 1.0, slot.start_h - clock, 0});
      walk(node, slot.depart_h, 1.0, stage, visits, recharges + 1, actions + 1);
      trace_.pop_back();
    }

    for (const std::uint32_t s : incident_[node]) {
      const SkywaySegment& seg = net_.segments[s];
      const NodeId next = seg.other(node);
      if (visits[next] >= kMaxVisitsPerNode) continue;
      if (!can_fly(spec_, BatteryState{battery}, payloads_[stage], seg.length_km)) continue;
      const double t = clock + travel_time(spec_, seg.length_km);
      const double b = consume(spec_, BatteryState{battery}, payloads_[stage], seg.length_km)
                           .fraction;
      ++visits[next];
      trace_.push_back({TraceStep::Kind::Fly, next, s, t, b, 0.0, 0});
      seq_.push_back(next);
      walk(next, t, b, stage, visits, recharges, actions + 1);
      seq_.pop_back();
      trace_.pop_back();
      --visits[next];
    }
  }

  void finish(double final_clock) {
    // The last trace step is the final drop; compare on its arrival clock.
    const double arrival = final_clock - spec_.drop_handling_time_h;
    if (arrival > best_clock_) return;
    if (arrival == best_clock_ && !std::lexicographical_compare(seq_.begin(), seq_.end(),
                                                                best_seq_.begin(),
                                                                best_seq_.end())) {
      return;
    }
    best_clock_ = arrival;
    best_trace_ = trace_;
    best_seq_ = seq_;
    best_order_ = *order_;
  }

  const SkywayNetwork& net_;
  const OccupancySchedule& sched_;
  const DroneSpec& spec_;
  const DeliveryRequest& request_;
  std::array<std::vector<std::uint32_t>, 8> incident_;
  const std::vector<std::size_t>* order_ = nullptr;
  std::vector<double> payloads_;  // on-board weight during each stage
  std::vector<TraceStep> trace_;
  std::vector<NodeId> seq_;  // visited nodes, for the lexicographic tie-break
  double best_clock_ = std::numeric_limits<double>::infinity();
  std::vector<TraceStep> best_trace_;
  std::vector<NodeId> best_seq_;
  std::vector<std::size_t> best_order_;
};

CompositionPlan plan_from_trace(const SkywayNetwork& net, const DeliveryRequest& request,
                                const std::vector<TraceStep>& trace, double final_arrival) {
  CompositionPlan plan;
  plan.source = request.src;
  plan.depart_clock_h = request.depart_clock_h;
  plan.packages = request.packages;
  plan.delivery_time_h = final_arrival - request.depart_clock_h;

  Itinerary& it = plan.itinerary;
  NodeEvent current;
  current.node = request.src;
  current.clock_in_h = request.depart_clock_h;
  double last_clock = request.depart_clock_h;

  for (const TraceStep& step : trace) {
    switch (step.kind) {
      case TraceStep::Kind::Fly: {
        current.clock_out_h = last_clock;
        it.events.push_back(current);
        const SkywaySegment& seg = net.segments[step.segment];
        ServiceInvocation inv;
        inv.segment = seg;
        if (inv.segment.to != step.node) std::swap(inv.segment.from, inv.segment.to);
        inv.depart_h = last_clock;
        inv.arrive_h = step.clock;
        inv.battery_after = BatteryState{step.battery};
        it.invocations.push_back(inv);
        current = NodeEvent{};
        current.node = step.node;
        current.clock_in_h = step.clock;
        break;
      }
      case TraceStep::Kind::Recharge:
        current.recharge = RechargeStop{step.wait_h};
        break;
      case TraceStep::Kind::Drop:
        current.drops.push_back(step.package);
        plan.per_destination_arrival_h[request.packages[step.package].destination] =
            current.clock_in_h;
        break;
    }
    last_clock = step.clock;
  }
  current.clock_out_h = last_clock;
  it.events.push_back(current);
  return plan;
}

}  // namespace

std::optional<CompositionPlan> brute_force_oracle(const SkywayNetwork& net,
                                                  const OccupancySchedule& sched,
                                                  const DroneSpec& spec,
                                                  const DeliveryRequest& request) {
  if (net.nodes.size() > 7) {
    throw ValidationError("oracle limit: network larger than 7 nodes");
  }
  if (request.packages.size() > 2) {
    throw ValidationError("oracle limit: more than 2 destinations");
  }
  request.validate(net, spec);

  Enumerator enumerator(net, sched, spec, request);
  std::vector<std::size_t> order(request.packages.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return request.packages[a].destination < request.packages[b].destination;
  });
  do {
    enumerator.run_order(order);
  } while (std::next_permutation(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return request.packages[a].destination < request.packages[b].destination;
  }));

  if (!enumerator.found()) return std::nullopt;
  return plan_from_trace(net, request, enumerator.best_trace(), enumerator.best_final_arrival());
}

}  // namespace skyway
