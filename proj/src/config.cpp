#include "skyway/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "skyway/errors.hpp"

namespace skyway {

namespace {

using nlohmann::json;

/// Section reader that type-checks each key, tracks which keys were consumed,
/// and rejects leftovers with their full path.
class Section {
public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ParseError("section must be a JSON object", path_);
  }

  template <typename T>
  void read(const char* key, T& into) {
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    consumed_.push_back(key);
    try {
      into = it->get<T>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("wrong type: ") + e.what(), path_ + "." + key);
    }
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (std::find(consumed_.begin(), consumed_.end(), key) == consumed_.end()) {
        throw ParseError("unknown key", path_ + "." + key);
      }
    }
  }

private:
  const json& j_;
  std::string path_;
  std::vector<std::string> consumed_;
};

}  // namespace

ExperimentConfig AppConfig::to_experiment() const {
  ExperimentConfig cfg;
  cfg.node_counts = experiment.node_counts;
  cfg.destinations_per_request = experiment.destinations_per_request;
  cfg.runs_fraction = experiment.runs_fraction;
  cfg.seed = experiment.seed;
  cfg.bounds = network.bounds;
  cfg.max_segment_len_km = network.max_segment_len_km;
  cfg.pads_per_station = network.pads_per_station;
  cfg.schedule_horizon_h = schedule.horizon_h;
  cfg.schedule_load_factor = schedule.load_factor;
  cfg.schedule_busy_len_h = schedule.busy_len_h;
  cfg.package_weight_kg = experiment.package_weight_kg;
  cfg.drone = drone;
  cfg.margins = margins;
  cfg.parallel = experiment.parallel;
  return cfg;
}

AppConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), "config");
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object", "config");

  AppConfig cfg;
  std::vector<std::string> known;
  if (const auto it = j.find("drone"); it != j.end()) {
    known.push_back("drone");
    Section s(*it, "drone");
    s.read("max_payload_kg", cfg.drone.max_payload_kg);
    s.read("max_speed_kmh", cfg.drone.max_speed_kmh);
    s.read("range_empty_km", cfg.drone.range_empty_km);
    s.read("range_full_km", cfg.drone.range_full_km);
    s.read("recharge_duration_h", cfg.drone.recharge_duration_h);
    s.read("drop_handling_time_h", cfg.drone.drop_handling_time_h);
    s.finish();
  }
  if (const auto it = j.find("network"); it != j.end()) {
    known.push_back("network");
    Section s(*it, "network");
    std::vector<double> bounds{cfg.network.bounds.width_km, cfg.network.bounds.height_km};
    s.read("bounds_km", bounds);
    if (bounds.size() != 2) {
      throw ParseError("bounds_km must be [width, height]", "network.bounds_km");
    }
    cfg.network.bounds = Rect{bounds[0], bounds[1]};
    s.read("max_segment_len_km", cfg.network.max_segment_len_km);
    s.read("pads_per_station", cfg.network.pads_per_station);
    s.finish();
  }
  if (const auto it = j.find("schedule"); it != j.end()) {
    known.push_back("schedule");
    Section s(*it, "schedule");
    s.read("horizon_h", cfg.schedule.horizon_h);
    s.read("load_factor", cfg.schedule.load_factor);
    s.read("busy_len_h", cfg.schedule.busy_len_h);
    s.finish();
  }
  if (const auto it = j.find("experiment"); it != j.end()) {
    known.push_back("experiment");
    Section s(*it, "experiment");
    s.read("node_counts", cfg.experiment.node_counts);
    s.read("destinations_per_request", cfg.experiment.destinations_per_request);
    s.read("runs_fraction", cfg.experiment.runs_fraction);
    s.read("seed", cfg.experiment.seed);
    s.read("package_weight_kg", cfg.experiment.package_weight_kg);
    s.read("parallel", cfg.experiment.parallel);
    s.finish();
  }
  if (const auto it = j.find("margins"); it != j.end()) {
    known.push_back("margins");
    Section s(*it, "margins");
    s.read("angle_margin_rad", cfg.margins.angle_margin_rad);
    s.read("radius_margin", cfg.margins.radius_margin);
    s.finish();
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError("unknown section", std::string("config.") + key);
    }
  }
  return cfg;
}

std::string config_to_json(const AppConfig& cfg) {
  json j;
  j["drone"] = {{"max_payload_kg", cfg.drone.max_payload_kg},
                {"max_speed_kmh", cfg.drone.max_speed_kmh},
                {"range_empty_km", cfg.drone.range_empty_km},
                {"range_full_km", cfg.drone.range_full_km},
                {"recharge_duration_h", cfg.drone.recharge_duration_h},
                {"drop_handling_time_h", cfg.drone.drop_handling_time_h}};
  j["network"] = {{"bounds_km", {cfg.network.bounds.width_km, cfg.network.bounds.height_km}},
                  {"max_segment_len_km", cfg.network.max_segment_len_km},
                  {"pads_per_station", cfg.network.pads_per_station}};
  j["schedule"] = {{"horizon_h", cfg.schedule.horizon_h},
                   {"load_factor", cfg.schedule.load_factor},
                   {"busy_len_h", cfg.schedule.busy_len_h}};
  j["experiment"] = {{"node_counts", cfg.experiment.node_counts},
                     {"destinations_per_request", cfg.experiment.destinations_per_request},
                     {"runs_fraction", cfg.experiment.runs_fraction},
                     {"seed", cfg.experiment.seed},
                     {"package_weight_kg", cfg.experiment.package_weight_kg},
                     {"parallel", cfg.experiment.parallel}};
  j["margins"] = {{"angle_margin_rad", cfg.margins.angle_margin_rad},
                  {"radius_margin", cfg.margins.radius_margin}};
  return j.dump(2) + "\n";
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

}  // namespace skyway
