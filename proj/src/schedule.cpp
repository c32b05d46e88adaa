#include "skyway/schedule.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "skyway/errors.hpp"
#include "skyway/rng.hpp"

namespace skyway {

std::uint32_t OccupancySchedule::pads_at(NodeId station) const {
  const auto it = stations.find(station);
  return it == stations.end() ? 0 : static_cast<std::uint32_t>(it->second.size());
}

void OccupancySchedule::validate() const {
  for (const auto& [station, pads] : stations) {
    for (const PadTimetable& pad : pads) {
      double prev_end = -std::numeric_limits<double>::infinity();
      for (const BusyInterval& iv : pad) {
        if (!(iv.start_h < iv.end_h)) {
          throw ValidationError("busy interval with start >= end at station " +
                                std::to_string(station));
        }
        if (iv.start_h < prev_end) {
          throw ValidationError("overlapping or unsorted busy intervals at station " +
                                std::to_string(station));
        }
        prev_end = iv.end_h;
      }
    }
  }
}

OccupancySchedule OccupancySchedule::empty_for(const SkywayNetwork& net) {
  OccupancySchedule sched;
  for (const Node& n : net.nodes) {
    if (n.is_station()) {
      sched.stations[n.id].resize(n.pads);
    }
  }
  return sched;
}

namespace {

/// Earliest start >= arrival with a free window of `duration` on this pad.
double pad_ready(const PadTimetable& pad, double arrival, double duration) {
  double candidate = arrival;
  for (const BusyInterval& iv : pad) {
    if (iv.end_h <= candidate) continue;
    if (candidate + duration <= iv.start_h) break;
    candidate = iv.end_h;
  }
  return candidate;
}

}  // namespace

ReadySlot ready_time(const OccupancySchedule& sched, NodeId station, double arrival_h,
                     double recharge_duration_h) {
  const auto it = sched.stations.find(station);
  if (it == sched.stations.end() || it->second.empty()) {
    throw ValidationError("station " + std::to_string(station) + " has no recharging pads");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const PadTimetable& pad : it->second) {
    best = std::min(best, pad_ready(pad, arrival_h, recharge_duration_h));
  }
  return ReadySlot{best, best + recharge_duration_h};
}

OccupancySchedule generate_schedule(const SkywayNetwork& net, double horizon_h,
                                    double load_factor, double busy_len_h, std::uint64_t seed) {
  if (load_factor < 0.0 || load_factor > 1.0) {
    throw ValidationError("load_factor must be in [0, 1]");
  }
  if (horizon_h < 0.0 || busy_len_h <= 0.0) {
    throw ValidationError("horizon must be >= 0 and busy interval length positive");
  }

  OccupancySchedule sched = OccupancySchedule::empty_for(net);
  if (load_factor == 0.0) return sched;

  // Exponential idle gaps sized so the duty cycle approximates load_factor.
  const double mean_gap = load_factor >= 1.0
                              ? 0.0
                              : busy_len_h * (1.0 - load_factor) / load_factor;
  for (auto& [station, pads] : sched.stations) {
    for (std::size_t p = 0; p < pads.size(); ++p) {
      Rng rng(mix_seed(seed, station, p));
      double clock = 0.0;
      while (true) {
        const double start = clock + (mean_gap > 0.0 ? rng.next_exponential(mean_gap) : 0.0);
        if (start >= horizon_h) break;
        pads[p].push_back({start, start + busy_len_h});
        clock = start + busy_len_h;
      }
    }
  }
  sched.validate();
  return sched;
}

namespace {
using nlohmann::json;
}

std::string schedule_to_json(const OccupancySchedule& sched) {
  json stations = json::object();
  for (const auto& [station, pads] : sched.stations) {
    json pad_arr = json::array();
    for (const PadTimetable& pad : pads) {
      json ivs = json::array();
      for (const BusyInterval& iv : pad) {
        ivs.push_back({{"start", iv.start_h}, {"end", iv.end_h}});
      }
      pad_arr.push_back(std::move(ivs));
    }
    stations[std::to_string(station)] = std::move(pad_arr);
  }
  json j;
  j["format"] = "skyway-sched/1";
  j["stations"] = std::move(stations);
  return j.dump(2) + "\n";
}

OccupancySchedule schedule_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), "schedule file");
  }
  if (!j.contains("format") || j["format"].get<std::string>() != "skyway-sched/1") {
    throw ParseError("unsupported format, expected skyway-sched/1", "format");
  }
  if (!j.contains("stations")) throw ParseError("missing key 'stations'", "top level");

  OccupancySchedule sched;
  try {
    for (const auto& [key, pad_arr] : j["stations"].items()) {
      const NodeId station = static_cast<NodeId>(std::stoul(key));
      std::vector<PadTimetable> pads;
      for (const json& ivs : pad_arr) {
        PadTimetable pad;
        for (const json& iv : ivs) {
          pad.push_back({iv.at("start").get<double>(), iv.at("end").get<double>()});
        }
        pads.push_back(std::move(pad));
      }
      sched.stations[station] = std::move(pads);
    }
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed schedule file: ") + e.what(), "stations");
  }
  sched.validate();
  return sched;
}

void save_schedule(const OccupancySchedule& sched, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << schedule_to_json(sched);
  if (!out) throw IoError("write failed: " + path);
}

OccupancySchedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return schedule_from_json(ss.str());
}

}  // namespace skyway
