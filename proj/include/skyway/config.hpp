#pragma once

#include <string>

#include "skyway/bench.hpp"

namespace skyway {

/// Application configuration: one JSON document with sections `drone`,
/// `network`, `schedule`, `experiment`, `margins`. Every key is optional and
/// falls back to the defaults below, which reproduce the stock experiment
/// profile; unknown keys are rejected with their full path.
struct AppConfig {
  DroneSpec drone;

  struct NetworkSection {
    Rect bounds{50.0, 50.0};
    double max_segment_len_km = 20.0;
    std::uint32_t pads_per_station = 4;
  } network;

  struct ScheduleSection {
    double horizon_h = 48.0;
    double load_factor = 0.5;
    double busy_len_h = 2.15;
  } schedule;

  struct ExperimentSection {
    std::vector<std::uint32_t> node_counts{10, 15, 20, 25, 30, 35};
    std::uint32_t destinations_per_request = 3;
    double runs_fraction = 0.5;
    std::uint64_t seed = 1;
    double package_weight_kg = 1.0;
    bool parallel = false;
  } experiment;

  Margins margins;

  /// Assembles the benchmark profile from all sections.
  ExperimentConfig to_experiment() const;
};

AppConfig config_from_json(const std::string& text);
std::string config_to_json(const AppConfig& cfg);
AppConfig load_config(const std::string& path);

}  // namespace skyway
