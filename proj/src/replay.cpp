#include "skyway/replay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace skyway {

namespace {

constexpr double kTol = 1e-9;

bool close(double a, double b) { return std::abs(a - b) <= kTol; }

std::string fmt(const char* where, std::size_t index, const std::string& what) {
  std::ostringstream os;
  os << where << " " << index << ": " << what;
  return os.str();
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ReplayReport replay(const CompositionPlan& plan, const SkywayNetwork& net,
                    const OccupancySchedule& sched, const DroneSpec& spec) {
  ReplayReport report;
  auto issue = [&report](const char* where, std::size_t index, const std::string& what) {
    report.issues.push_back(fmt(where, index, what));
  };

  const std::size_t n_events = plan.itinerary.events.size();
  if (n_events == 0) {
    report.issues.push_back("plan: no events");
    return report;
  }
  if (plan.itinerary.invocations.size() + 1 != n_events) {
    report.issues.push_back("plan: events/invocations do not alternate (" +
                            std::to_string(n_events) + " events, " +
                            std::to_string(plan.itinerary.invocations.size()) + " invocations)");
    return report;
  }
  for (std::size_t i = 0; i < n_events; ++i) {
    if (plan.itinerary.events[i].node >= net.nodes.size()) {
      issue("event", i, "unknown node " + std::to_string(plan.itinerary.events[i].node));
      return report;
    }
  }

  std::map<std::pair<NodeId, NodeId>, double> segment_length;
  for (const SkywaySegment& seg : net.segments) {
    segment_length[std::minmax(seg.from, seg.to)] = seg.length_km;
  }

  const NodeEvent& first = plan.itinerary.events.front();
  if (first.node != plan.source) {
    issue("event", 0, "starts at node " + std::to_string(first.node) + ", plan source is " +
                          std::to_string(plan.source));
  }
  if (!close(first.clock_in_h, plan.depart_clock_h)) {
    issue("event", 0, "clock_in " + num(first.clock_in_h) + " != departure " +
                          num(plan.depart_clock_h));
  }

  double payload = 0.0;
  for (const Package& p : plan.packages) payload += p.weight_kg;
  std::vector<int> drop_count(plan.packages.size(), 0);
  double battery = 1.0;
  double last_arrival = plan.depart_clock_h;

  for (std::size_t i = 0; i < n_events; ++i) {
    const NodeEvent& ev = plan.itinerary.events[i];
    ReplayEvent out;
    out.node = ev.node;
    out.clock_in_h = ev.clock_in_h;
    out.battery_in = battery;

    // Drops happen on arrival, then handling, then any recharge.
    for (const std::size_t pkg : ev.drops) {
      if (pkg >= plan.packages.size()) {
        issue("event", i, "drop of unknown package " + std::to_string(pkg));
        continue;
      }
      if (++drop_count[pkg] > 1) {
        issue("event", i, "package " + std::to_string(pkg) + " dropped more than once");
        continue;
      }
      const NodeId dest = plan.packages[pkg].destination;
      if (dest != ev.node) {
        issue("event", i, "package " + std::to_string(pkg) + " dropped at node " +
                              std::to_string(ev.node) + ", destined for " + std::to_string(dest));
      }
      payload -= plan.packages[pkg].weight_kg;
      last_arrival = std::max(last_arrival, ev.clock_in_h);
      const auto it = plan.per_destination_arrival_h.find(dest);
      if (it == plan.per_destination_arrival_h.end()) {
        issue("event", i, "destination " + std::to_string(dest) + " missing from arrival map");
      } else if (!close(it->second, ev.clock_in_h)) {
        issue("event", i, "arrival map says " + num(it->second) + ", replay says " +
                              num(ev.clock_in_h) + " for destination " + std::to_string(dest));
      }
    }

    double clock = ev.clock_in_h +
                   spec.drop_handling_time_h * static_cast<double>(ev.drops.size());
    if (ev.recharge) {
      if (net.node(ev.node).pads == 0 || sched.pads_at(ev.node) == 0) {
        issue("event", i, "recharge at node " + std::to_string(ev.node) + " which has no pads");
      } else {
        const ReadySlot slot = ready_time(sched, ev.node, clock, spec.recharge_duration_h);
        const double wait = slot.start_h - clock;
        if (!close(ev.recharge->wait_h, wait)) {
          issue("event", i, "recharge wait " + num(ev.recharge->wait_h) +
                                ", schedule requires " + num(wait));
        }
        clock = slot.depart_h;
        battery = 1.0;
      }
    }
    if (!close(ev.clock_out_h, clock)) {
      issue("event", i, "clock_out " + num(ev.clock_out_h) + ", replay says " + num(clock));
    }
    out.clock_out_h = ev.clock_out_h;
    out.battery_out = battery;
    report.timeline.push_back(out);

    if (i + 1 == n_events) break;
    const ServiceInvocation& inv = plan.itinerary.invocations[i];
    const NodeEvent& next = plan.itinerary.events[i + 1];

    if (inv.segment.from != ev.node || inv.segment.to != next.node) {
      issue("invocation", i, "flies " + std::to_string(inv.segment.from) + "->" +
                                 std::to_string(inv.segment.to) + ", events say " +
                                 std::to_string(ev.node) + "->" + std::to_string(next.node));
      return report;  // the walk is broken beyond this point
    }
    const auto seg = segment_length.find(std::minmax(inv.segment.from, inv.segment.to));
    if (seg == segment_length.end()) {
      issue("invocation", i, "no skyway segment between " + std::to_string(inv.segment.from) +
                                 " and " + std::to_string(inv.segment.to));
      return report;
    }
    const double length = seg->second;
    if (!close(inv.segment.length_km, length)) {
      issue("invocation", i, "segment length " + num(inv.segment.length_km) +
                                 ", network says " + num(length));
    }
    if (!close(inv.depart_h, ev.clock_out_h)) {
      issue("invocation", i, "departs at " + num(inv.depart_h) + ", event ends at " +
                                 num(ev.clock_out_h));
    }
    const double arrive = inv.depart_h + travel_time(spec, length);
    if (!close(inv.arrive_h, arrive)) {
      issue("invocation", i, "arrives at " + num(inv.arrive_h) + ", replay says " + num(arrive));
    }
    if (!close(next.clock_in_h, inv.arrive_h)) {
      issue("event", i + 1, "clock_in " + num(next.clock_in_h) +
                                " != invocation arrival " + num(inv.arrive_h));
    }
    if (!can_fly(spec, BatteryState{battery}, payload, length)) {
      issue("invocation", i, "leg of " + num(length) + " km exceeds remaining range at " +
                                 num(battery) + " battery with " + num(payload) + " kg");
      return report;  // battery state is meaningless from here on
    }
    battery = consume(spec, BatteryState{battery}, payload, length).fraction;
    if (!close(inv.battery_after.fraction, battery)) {
      issue("invocation", i, "battery_after " + num(inv.battery_after.fraction) +
                                 ", replay says " + num(battery));
    }
  }

  for (std::size_t pkg = 0; pkg < plan.packages.size(); ++pkg) {
    if (drop_count[pkg] == 0) {
      report.issues.push_back("plan: package " + std::to_string(pkg) + " never dropped");
    }
  }
  if (plan.per_destination_arrival_h.size() != plan.packages.size()) {
    report.issues.push_back("plan: arrival map has " +
                            std::to_string(plan.per_destination_arrival_h.size()) +
                            " entries for " + std::to_string(plan.packages.size()) +
                            " packages");
  }
  report.delivery_time_h = last_arrival - plan.depart_clock_h;
  if (!close(plan.delivery_time_h, report.delivery_time_h)) {
    report.issues.push_back("plan: delivery_time " + num(plan.delivery_time_h) +
                            ", replay says " + num(report.delivery_time_h));
  }
  return report;
}

}  // namespace skyway
