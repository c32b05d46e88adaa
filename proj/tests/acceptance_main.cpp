// Release gate: every check below must print [PASS] for the build to ship.
// Each criterion states its tolerance inline and is exercised end to end
// against the public API, with no shortcuts through internals.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "skyway/bench.hpp"
#include "skyway/config.hpp"
#include "skyway/exhaustive.hpp"
#include "skyway/network_io.hpp"
#include "skyway/replay.hpp"
#include "skyway/rng.hpp"

using namespace skyway;

namespace {

int g_failures = 0;

void report(int number, bool ok, const std::string& name, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << name;
  if (!detail.empty()) std::cout << " — " << detail;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

struct TinyInstance {
  SkywayNetwork net;
  OccupancySchedule sched;
  DeliveryRequest request;
};

// Random instance small enough for the brute-force oracle: 4..7 nodes,
// 1..2 destinations, mixed pad availability and payloads.
TinyInstance draw_tiny(std::uint64_t seed) {
  Rng rng(seed);
  TinyInstance t;
  const std::size_t n = 4 + static_cast<std::size_t>(rng.next_below(4));
  const std::uint32_t pads = static_cast<std::uint32_t>(rng.next_below(3));
  t.net = generate_network(n, {30.0, 30.0}, 12.0 + rng.next_unit() * 14.0, pads,
                           mix_seed(seed, 1, 0));
  t.sched = generate_schedule(t.net, 24.0, rng.next_unit() * 0.8, 0.5 + rng.next_unit() * 2.0,
                              mix_seed(seed, 2, 0));
  t.request.src = static_cast<NodeId>(rng.next_below(n));
  const std::size_t dests = 1 + rng.next_below(2);
  while (t.request.packages.size() < dests) {
    const NodeId d = static_cast<NodeId>(rng.next_below(n));
    bool fresh = d != t.request.src;
    for (const auto& p : t.request.packages) fresh = fresh && p.destination != d;
    if (fresh) t.request.packages.push_back({2.0 + rng.next_unit() * 6.0, d});
  }
  t.request.depart_clock_h = rng.next_unit() * 4.0;
  return t;
}

// Mid-size random instance for the full-cover and replay criteria.
struct Instance {
  SkywayNetwork net;
  OccupancySchedule sched;
  DeliveryRequest request;
};

Instance draw_instance(std::uint64_t seed, std::size_t n, std::size_t dests, double weight) {
  Rng rng(seed);
  Instance t;
  t.net = generate_network(n, {60.0, 60.0}, 20.0, 4, mix_seed(seed, 1, 0));
  t.sched = generate_schedule(t.net, 48.0, 0.5, 2.15, mix_seed(seed, 2, 0));
  t.request.src = static_cast<NodeId>(rng.next_below(n));
  while (t.request.packages.size() < dests) {
    const NodeId d = static_cast<NodeId>(rng.next_below(n));
    bool fresh = d != t.request.src;
    for (const auto& p : t.request.packages) fresh = fresh && p.destination != d;
    if (fresh) t.request.packages.push_back({weight, d});
  }
  t.request.depart_clock_h = rng.next_unit() * 6.0;
  return t;
}

// exec_time_s is the one column allowed to differ between identical runs.
std::string strip_exec(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::size_t pos = 0;
    int field = 0;
    std::string kept;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::string f = line.substr(pos, comma - pos);
      if (field != 6) {
        if (!kept.empty()) kept += ',';
        kept += f;
      }
      ++field;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    out += kept;
    out += '\n';
  }
  return out;
}

void criterion_1_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const int kInstances = 200;
  int feasible = 0, mismatched = 0;
  double max_delta = 0.0;
  for (int i = 0; i < kInstances; ++i) {
    const TinyInstance t = draw_tiny(mix_seed(17, static_cast<std::uint64_t>(i), 0));
    const ComposeResult engine = compose_exhaustive(t.net, t.sched, DroneSpec{}, t.request);
    const auto oracle = brute_force_oracle(t.net, t.sched, DroneSpec{}, t.request);
    if (engine.feasible() != oracle.has_value()) {
      ++mismatched;
      continue;
    }
    if (!oracle) continue;
    ++feasible;
    const double delta = std::abs(engine.plan->delivery_time_h - oracle->delivery_time_h);
    max_delta = std::max(max_delta, delta);
    if (delta > 1e-9) ++mismatched;
  }
  const double secs = seconds_since(t0);
  const bool ok = mismatched == 0 && feasible >= 50 && secs < 60.0;
  report(1, ok, "exhaustive composer matches the brute-force oracle",
         fmt(kInstances) + " instances, " + fmt(feasible) + " feasible, " + fmt(mismatched) +
             " mismatches, max |Δ| " + fmt(max_delta) + " h (tol 1e-9), " + fmt(secs) + " s");
}

void criterion_2_full_cover_identity() {
  // With margins this large the destination sector always covers the whole
  // network, so the heuristic must reduce to the exhaustive composer exactly —
  // byte-identical plan files.
  const Margins full{3.15, 1000.0};
  int identical = 0, differing = 0, feasible = 0;
  const int kInstances = 50;
  for (int i = 0; i < kInstances; ++i) {
    Rng rng(mix_seed(23, static_cast<std::uint64_t>(i), 0));
    const std::size_t n = 8 + static_cast<std::size_t>(rng.next_below(7));
    const std::size_t dests = 2 + rng.next_below(2);
    const Instance t =
        draw_instance(mix_seed(23, static_cast<std::uint64_t>(i), 1), n, dests, 1.0);
    const ComposeResult heur = compose_heuristic(t.net, t.sched, DroneSpec{}, t.request, full);
    const ComposeResult exh = compose_exhaustive(t.net, t.sched, DroneSpec{}, t.request);
    if (heur.feasible() != exh.feasible()) {
      ++differing;
      continue;
    }
    if (!heur.feasible()) continue;
    ++feasible;
    if (plan_to_json(*heur.plan) == plan_to_json(*exh.plan)) {
      ++identical;
    } else {
      ++differing;
    }
  }
  const bool ok = differing == 0 && feasible >= 40;
  report(2, ok, "full-cover sector reproduces the exhaustive plan byte-for-byte",
         fmt(feasible) + "/" + fmt(kInstances) + " feasible, " + fmt(identical) +
             " identical, " + fmt(differing) + " differing");
}

BenchResult sweep_with_seed(std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.seed = seed;
  return run_benchmark(cfg);
}

void criterion_3_quality_on_default_sweep(const BenchResult& sweep) {
  const auto t0 = std::chrono::steady_clock::now();
  int pairs = 0, violations = 0, feasibility_splits = 0;
  double gap_sum = 0.0;
  for (std::size_t i = 0; i + 1 < sweep.trials.size(); i += 2) {
    const TrialRecord& h = sweep.trials[i];
    const TrialRecord& e = sweep.trials[i + 1];
    if (h.feasible != e.feasible) {
      ++feasibility_splits;
      continue;
    }
    if (!h.feasible) continue;
    ++pairs;
    if (h.delivery_time_h < e.delivery_time_h - 1e-9) ++violations;
    gap_sum += (h.delivery_time_h - e.delivery_time_h) / e.delivery_time_h * 100.0;
  }
  const double secs = seconds_since(t0);
  const bool ok = violations == 0 && feasibility_splits == 0 && pairs > 0 && secs < 600.0;
  report(3, ok, "heuristic never beats the exhaustive baseline on the default sweep",
         fmt(pairs) + " feasible pairs, " + fmt(violations) + " violations, " +
             fmt(feasibility_splits) + " feasibility splits, mean gap " +
             fmt(pairs ? gap_sum / pairs : 0.0) + "%");
}

void criterion_4_performance_scaling() {
  // Three independent master seeds; for each, per-size mean exec times of both
  // composers. The heuristic must be faster at every n >= 20 for every seed,
  // and the exhaustive composer must scale worse from n=10 to n=35.
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  bool faster_everywhere = true;
  bool steeper_growth = true;
  std::string detail;
  for (const std::uint64_t seed : seeds) {
    const BenchResult sweep = sweep_with_seed(seed);
    std::map<std::uint32_t, std::pair<double, double>> mean;  // n -> (heur, exh)
    for (const SizeSummary& s : sweep.report.sizes) {
      auto& slot = mean[s.n_nodes];
      (s.algo == "heuristic" ? slot.first : slot.second) = s.mean_exec_s;
    }
    for (const auto& [n, times] : mean) {
      if (n >= 20 && times.first >= times.second) faster_everywhere = false;
    }
    const double heur_growth = mean[35].first / mean[10].first;
    const double exh_growth = mean[35].second / mean[10].second;
    if (!(exh_growth > heur_growth)) steeper_growth = false;
    detail += "seed " + fmt(seed) + ": growth heur x" + fmt(heur_growth) + " vs exh x" +
              fmt(exh_growth) + "; ";
  }
  report(4, faster_everywhere && steeper_growth,
         "heuristic is faster at n>=20 and scales flatter from n=10 to n=35", detail);
}

void criterion_5_protocol_defaults() {
  const ExperimentConfig cfg;
  const AppConfig app;
  bool ok = true;
  std::string what;
  const auto expect = [&](bool cond, const std::string& label) {
    if (!cond) {
      ok = false;
      what += label + " ";
    }
  };
  expect(cfg.node_counts == std::vector<std::uint32_t>{10, 15, 20, 25, 30, 35}, "sizes");
  expect(cfg.trials_for(30) == 15, "trials(30)");
  expect(cfg.trials_for(10) == 5, "trials(10)");
  expect(cfg.trials_for(35) == 18, "trials(35)");
  expect(cfg.destinations_per_request == 3, "destinations");
  expect(cfg.runs_fraction == 0.5, "runs_fraction");
  expect(cfg.bounds.width_km == 50.0 && cfg.bounds.height_km == 50.0, "bounds");
  expect(cfg.max_segment_len_km == 20.0, "max_segment");
  expect(cfg.pads_per_station == 4, "pads");
  expect(cfg.schedule_load_factor == 0.5, "load");
  expect(cfg.schedule_busy_len_h == 2.15, "busy_len");
  expect(cfg.package_weight_kg == 1.0, "weight");
  expect(cfg.drone.max_payload_kg == 15.3, "payload_cap");
  expect(cfg.drone.max_speed_kmh == 82.8, "speed");
  expect(cfg.drone.range_empty_km == 33.0 && cfg.drone.range_full_km == 3.0, "range");
  expect(cfg.drone.recharge_duration_h == 2.15, "recharge");
  expect(config_to_json(app) == config_to_json(config_from_json("{}")), "config_defaults");
  report(5, ok, "stock profile reproduces the benchmark protocol",
         ok ? "sizes 10..35, ceil(n/2) trials, reference drone and schedule constants"
            : "mismatch: " + what);
}

void criterion_6_replay_everything() {
  int plans = 0, violations = 0;
  for (int i = 0; i < 40; ++i) {
    Rng rng(mix_seed(31, static_cast<std::uint64_t>(i), 0));
    const std::size_t n = 10 + static_cast<std::size_t>(rng.next_below(16));
    const Instance t =
        draw_instance(mix_seed(31, static_cast<std::uint64_t>(i), 1), n, 3, 1.0);
    for (const bool exhaustive : {false, true}) {
      const ComposeResult result =
          exhaustive ? compose_exhaustive(t.net, t.sched, DroneSpec{}, t.request)
                     : compose_heuristic(t.net, t.sched, DroneSpec{}, t.request, Margins{});
      if (!result.feasible()) continue;
      ++plans;
      const ReplayReport r = replay(*result.plan, t.net, t.sched, DroneSpec{});
      if (!r.ok()) ++violations;
    }
  }
  report(6, violations == 0 && plans >= 60,
         "every composed plan survives independent replay (1e-9)",
         fmt(plans) + " plans, " + fmt(violations) + " violations");
}

void criterion_7_drone_envelope() {
  const DroneSpec spec;
  bool ok = flight_range(spec, 0.0) == 33.0 && flight_range(spec, 15.3) == 3.0 &&
            flight_range(spec, 15.3 / 2.0) == 18.0;
  Rng rng(41);
  std::vector<double> payloads;
  for (int i = 0; i < 1000; ++i) payloads.push_back(rng.next_unit() * 15.3);
  std::sort(payloads.begin(), payloads.end());
  int breaks = 0;
  for (std::size_t i = 1; i < payloads.size(); ++i) {
    if (flight_range(spec, payloads[i]) > flight_range(spec, payloads[i - 1])) ++breaks;
  }
  ok = ok && breaks == 0;
  report(7, ok, "flight range hits 33/3 km exactly and decreases with payload",
         "endpoints exact, midpoint 18 km, " + fmt(breaks) + " monotonicity breaks in 1000");
}

void criterion_8_schedule_non_overtaking() {
  int violations = 0, checked = 0;
  for (int s = 0; s < 100; ++s) {
    Rng rng(mix_seed(53, static_cast<std::uint64_t>(s), 0));
    const SkywayNetwork net = generate_network(
        4, {20.0, 20.0}, 40.0, 1 + static_cast<std::uint32_t>(rng.next_below(4)),
        mix_seed(53, static_cast<std::uint64_t>(s), 1));
    const OccupancySchedule sched =
        generate_schedule(net, 48.0, rng.next_unit() * 0.9, 0.3 + rng.next_unit() * 2.5,
                          mix_seed(53, static_cast<std::uint64_t>(s), 2));
    const NodeId station = net.nodes[rng.next_below(net.nodes.size())].id;
    for (int p = 0; p < 100; ++p) {
      const double a1 = rng.next_unit() * 40.0;
      const double a2 = a1 + rng.next_unit() * 8.0;
      const ReadySlot s1 = ready_time(sched, station, a1, 2.15);
      const ReadySlot s2 = ready_time(sched, station, a2, 2.15);
      ++checked;
      if (s1.start_h > s2.start_h || s1.depart_h > s2.depart_h) ++violations;
    }
  }
  report(8, violations == 0 && checked == 10000,
         "ready_time never lets a later arrival depart earlier",
         fmt(checked) + " ordered arrival pairs, " + fmt(violations) + " overtakes");
}

void criterion_9_benchmark_determinism(const BenchResult& first) {
  const BenchResult second = sweep_with_seed(1);
  const bool same =
      strip_exec(trials_to_csv(first.trials)) == strip_exec(trials_to_csv(second.trials));
  const bool same_summary_shape =
      summary_to_csv(aggregate(first.trials)).size() == summary_to_csv(first.report).size();
  report(9, same && same_summary_shape,
         "same-seed benchmark reruns are identical apart from exec_time",
         same ? "trials.csv matches across runs" : "trials.csv diverged");
}

}  // namespace

int main() {
  std::cout << "skyway acceptance gate\n" << std::string(70, '-') << "\n";
  const auto t0 = std::chrono::steady_clock::now();

  criterion_1_oracle_equivalence();
  criterion_2_full_cover_identity();

  const BenchResult default_sweep = sweep_with_seed(1);
  criterion_3_quality_on_default_sweep(default_sweep);
  criterion_4_performance_scaling();
  criterion_5_protocol_defaults();
  criterion_6_replay_everything();
  criterion_7_drone_envelope();
  criterion_8_schedule_non_overtaking();
  criterion_9_benchmark_determinism(default_sweep);

  std::cout << std::string(70, '-') << "\n";
  if (g_failures == 0) {
    std::cout << "all 9 criteria passed in " << fmt(seconds_since(t0)) << " s\n";
    return 0;
  }
  std::cout << g_failures << " criteria FAILED\n";
  return 1;
}
