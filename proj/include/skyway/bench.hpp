#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skyway/composer.hpp"
#include "skyway/replay.hpp"

namespace skyway {

/// Full experiment profile. Defaults reproduce the benchmark protocol:
/// sizes 10..35, ceil(0.5·n) trials per size, 3 destinations per request,
/// 4 pads per station, and the stock drone envelope. The 50×50 km area keeps
/// station spacing within the payload-dependent flight range, so default
/// sweeps measure actual deliveries at every size rather than dead instances.
struct ExperimentConfig {
  std::vector<std::uint32_t> node_counts{10, 15, 20, 25, 30, 35};
  std::uint32_t destinations_per_request = 3;
  double runs_fraction = 0.5;
  std::uint64_t seed = 1;

  Rect bounds{50.0, 50.0};
  double max_segment_len_km = 20.0;
  std::uint32_t pads_per_station = 4;

  double schedule_horizon_h = 48.0;
  double schedule_load_factor = 0.5;
  double schedule_busy_len_h = 2.15;

  double package_weight_kg = 1.0;
  DroneSpec drone;
  Margins margins;

  /// Run trials concurrently. Records stay deterministic but exec_time
  /// columns are no longer comparable across trials.
  bool parallel = false;

  std::size_t trials_for(std::uint32_t n_nodes) const;
  void validate() const;
};

struct TrialRecord {
  std::uint32_t n_nodes = 0;
  std::uint32_t trial = 0;
  std::uint64_t seed = 0;  // per-trial derived seed
  std::string algo;        // "heuristic" or "exhaustive"
  bool feasible = false;
  double delivery_time_h = 0.0;  // meaningful iff feasible
  double exec_time_s = 0.0;
  std::size_t subgraph_nodes = 0;
  std::size_t labels_expanded = 0;
};

/// Per-size per-algorithm aggregate, one summary.csv row.
struct SizeSummary {
  std::uint32_t n_nodes = 0;
  std::string algo;
  std::size_t runs = 0;
  double feasible_rate = 0.0;
  double mean_delivery_h = 0.0;  // over feasible trials
  double mean_exec_s = 0.0;
  double stddev_exec_s = 0.0;  // population stddev
  /// Heuristic rows: mean of (heuristic − exhaustive)/exhaustive × 100 over
  /// trials where both were feasible. Exhaustive rows: 0 by construction.
  double mean_gap_pct = 0.0;
};

struct BenchReport {
  std::vector<SizeSummary> sizes;
};

struct BenchResult {
  std::vector<TrialRecord> trials;
  BenchReport report;
};

/// Runs the full sweep: per size a seeded network and schedule, then
/// ceil(runs_fraction·n) trials with random src/destinations, both composers
/// on identical instances, every plan checked by replay. Infeasible trials
/// become feasible=false records; the sweep never aborts on them.
BenchResult run_benchmark(const ExperimentConfig& cfg);

/// Recomputes the report from records alone (used for CSV round-trips).
BenchReport aggregate(const std::vector<TrialRecord>& trials);

std::string trials_to_csv(const std::vector<TrialRecord>& trials);
std::vector<TrialRecord> trials_from_csv(const std::string& text);
std::string summary_to_csv(const BenchReport& report);

/// Writes trials.csv and summary.csv under out_dir (which must exist).
void emit_csv(const std::vector<TrialRecord>& trials, const BenchReport& report,
              const std::string& out_dir);

}  // namespace skyway
