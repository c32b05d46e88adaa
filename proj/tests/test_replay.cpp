#include <algorithm>
#include <string>

#include "doctest.h"
#include "skyway/composer.hpp"
#include "skyway/exhaustive.hpp"
#include "skyway/replay.hpp"
#include "skyway/rng.hpp"
#include "skyway/schedule.hpp"

using namespace skyway;

namespace {

struct Fixture {
  SkywayNetwork net;
  OccupancySchedule sched;
  DroneSpec spec;
  CompositionPlan plan;
};

// A plan with at least one recharge (with nonzero wait) and one pass-through,
// so every replay check path gets exercised by the mutation cases below.
Fixture recharge_fixture() {
  Fixture f;
  f.net.bounds = Rect{12.0, 12.0};
  f.net.nodes = {{0, {0.0, 0.0}, 0}, {1, {3.0, 0.0}, 0}, {2, {6.0, 0.0}, 1}, {3, {9.0, 0.0}, 0}};
  f.net.segments = {{0, 1, 3.0}, {1, 2, 3.0}, {2, 3, 3.0}};
  f.net.validate();
  f.sched = OccupancySchedule::empty_for(f.net);
  f.sched.stations[2][0] = {{0.0, 1.0}};  // the only pad, busy until 1.0 h

  // range(13.26) = 7 km: reaches node 2 on one charge but not node 3 (9 km),
  // so the drone must recharge at 2, queueing behind the busy window.
  const ComposeResult result =
      compose_heuristic(f.net, f.sched, f.spec, DeliveryRequest{0, {{13.26, 3}}, 0.0});
  REQUIRE(result.feasible());
  f.plan = *result.plan;
  REQUIRE(f.plan.recharge_count() == 1);
  REQUIRE(f.plan.total_wait_h() > 0.0);
  return f;
}

bool mentions(const ReplayReport& report, const std::string& needle) {
  return std::any_of(report.issues.begin(), report.issues.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("composed plans replay without violations") {
  Fixture f = recharge_fixture();
  const ReplayReport report = replay(f.plan, f.net, f.sched, f.spec);
  CHECK(report.ok());
  CHECK(report.delivery_time_h == f.plan.delivery_time_h);
  CHECK(report.timeline.size() == f.plan.itinerary.events.size());
  // Re-simulated clocks must match the plan's claims exactly here (identical
  // primitives), and in general to 1e-9.
  for (std::size_t i = 0; i < report.timeline.size(); ++i) {
    CHECK(report.timeline[i].clock_in_h ==
          doctest::Approx(f.plan.itinerary.events[i].clock_in_h).epsilon(1e-12));
  }
}

TEST_CASE("replay accepts a trivial empty delivery") {
  SkywayNetwork net;
  net.bounds = Rect{5.0, 5.0};
  net.nodes = {{0, {0.0, 0.0}, 4}, {1, {3.0, 0.0}, 4}};
  net.segments = {{0, 1, 3.0}};
  net.validate();
  const auto sched = OccupancySchedule::empty_for(net);

  CompositionPlan plan;
  plan.source = 0;
  plan.depart_clock_h = 1.5;
  plan.itinerary.events.push_back({0, 1.5, 1.5, {}, std::nullopt});
  const ReplayReport report = replay(plan, net, sched, DroneSpec{});
  CHECK(report.ok());
  CHECK(report.delivery_time_h == 0.0);
}

TEST_CASE("replay flags corrupted battery bookkeeping") {
  Fixture f = recharge_fixture();
  f.plan.itinerary.invocations[0].battery_after.fraction += 1e-6;
  const ReplayReport report = replay(f.plan, f.net, f.sched, f.spec);
  CHECK_FALSE(report.ok());
  CHECK(mentions(report, "invocation 0"));
  CHECK(mentions(report, "battery"));
}

TEST_CASE("replay flags a falsified recharge wait") {
  Fixture f = recharge_fixture();
  bool touched = false;
  for (auto& ev : f.plan.itinerary.events) {
    if (ev.recharge) {
      ev.recharge->wait_h -= 0.5;  // pretend the queue was shorter
      touched = true;
    }
  }
  REQUIRE(touched);
  const ReplayReport report = replay(f.plan, f.net, f.sched, f.spec);
  CHECK_FALSE(report.ok());
  CHECK(mentions(report, "wait"));
}

TEST_CASE("replay flags a dropped-package omission") {
  Fixture f = recharge_fixture();
  for (auto& ev : f.plan.itinerary.events) ev.drops.clear();
  const ReplayReport report = replay(f.plan, f.net, f.sched, f.spec);
  CHECK_FALSE(report.ok());
  CHECK(mentions(report, "never dropped"));
}

TEST_CASE("replay flags drops at the wrong node") {
  Fixture f = recharge_fixture();
  auto& events = f.plan.itinerary.events;
  // Move the final drop one stop earlier.
  REQUIRE(events.back().drops.size() == 1);
  events[events.size() - 2].drops = events.back().drops;
  events.back().drops.clear();
  const ReplayReport report = replay(f.plan, f.net, f.sched, f.spec);
  CHECK_FALSE(report.ok());
  CHECK(mentions(report, "destined for"));
}

TEST_CASE("replay flags inconsistent delivery-time and arrival claims") {
  Fixture f = recharge_fixture();
  SUBCASE("delivery total") {
    f.plan.delivery_time_h += 0.25;
    CHECK(mentions(replay(f.plan, f.net, f.sched, f.spec), "delivery_time"));
  }
  SUBCASE("per-destination arrival") {
    REQUIRE(!f.plan.per_destination_arrival_h.empty());
    f.plan.per_destination_arrival_h.begin()->second -= 1e-3;
    CHECK_FALSE(replay(f.plan, f.net, f.sched, f.spec).ok());
  }
}

TEST_CASE("replay flags itineraries that leave the network") {
  Fixture f = recharge_fixture();
  f.plan.itinerary.invocations[1].segment.length_km += 0.5;
  const ReplayReport report = replay(f.plan, f.net, f.sched, f.spec);
  CHECK_FALSE(report.ok());
  CHECK(mentions(report, "segment"));
}

TEST_CASE("oracle plans satisfy the same replay contract") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    SkywayNetwork net = generate_network(5, {25.0, 25.0}, 14.0, 2,
                                         mix_seed(5, static_cast<std::uint64_t>(trial), 0));
    const OccupancySchedule sched =
        generate_schedule(net, 24.0, 0.4, 1.0, mix_seed(5, static_cast<std::uint64_t>(trial), 1));
    const NodeId src = static_cast<NodeId>(rng.next_below(5));
    NodeId dst = static_cast<NodeId>(rng.next_below(5));
    if (dst == src) dst = (dst + 1) % 5;
    const DeliveryRequest request{src, {{4.0 + rng.next_unit() * 8.0, dst}}, 0.0};

    const auto oracle = brute_force_oracle(net, sched, DroneSpec{}, request);
    if (!oracle) continue;
    const ReplayReport report = replay(*oracle, net, sched, DroneSpec{});
    INFO("trial ", trial);
    CHECK(report.ok());
  }
}
