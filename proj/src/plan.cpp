#include "skyway/plan.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "skyway/errors.hpp"

namespace skyway {

std::vector<NodeId> DeliveryRequest::destinations() const {
  std::vector<NodeId> out;
  out.reserve(packages.size());
  for (const Package& p : packages) out.push_back(p.destination);
  return out;
}

double DeliveryRequest::total_weight_kg() const {
  return std::accumulate(packages.begin(), packages.end(), 0.0,
                         [](double acc, const Package& p) { return acc + p.weight_kg; });
}

void DeliveryRequest::validate(const SkywayNetwork& net, const DroneSpec& spec) const {
  if (src >= net.nodes.size()) throw ValidationError("unknown source node");
  if (packages.empty()) throw ValidationError("request has no packages");
  if (packages.size() > 8) {
    throw ValidationError("at most 8 destinations supported by the ordering search");
  }
  std::set<NodeId> seen;
  for (const Package& p : packages) {
    if (p.destination >= net.nodes.size()) throw ValidationError("unknown destination node");
    if (p.destination == src) throw ValidationError("destination equals source");
    if (!seen.insert(p.destination).second) {
      throw ValidationError("duplicate destination " + std::to_string(p.destination));
    }
    if (p.weight_kg <= 0.0) throw ValidationError("package weight must be positive");
  }
  if (total_weight_kg() > spec.max_payload_kg) {
    throw ValidationError("total payload exceeds drone capacity");
  }
}

std::size_t CompositionPlan::recharge_count() const {
  return static_cast<std::size_t>(
      std::count_if(itinerary.events.begin(), itinerary.events.end(),
                    [](const NodeEvent& e) { return e.recharge.has_value(); }));
}

double CompositionPlan::total_wait_h() const {
  double total = 0.0;
  for (const NodeEvent& e : itinerary.events) {
    if (e.recharge) total += e.recharge->wait_h;
  }
  return total;
}

namespace {
using nlohmann::json;
}

std::string plan_to_json(const CompositionPlan& plan) {
  json j;
  j["format"] = "skyway-plan/1";
  j["source"] = plan.source;
  j["depart_clock_h"] = plan.depart_clock_h;
  j["delivery_time_h"] = plan.delivery_time_h;

  json packages = json::array();
  for (const Package& p : plan.packages) {
    packages.push_back({{"weight_kg", p.weight_kg}, {"destination", p.destination}});
  }
  j["packages"] = std::move(packages);

  json arrivals = json::object();
  for (const auto& [node, clock] : plan.per_destination_arrival_h) {
    arrivals[std::to_string(node)] = clock;
  }
  j["per_destination_arrival_h"] = std::move(arrivals);

  json events = json::array();
  for (const NodeEvent& e : plan.itinerary.events) {
    json ev;
    ev["node"] = e.node;
    ev["clock_in_h"] = e.clock_in_h;
    ev["clock_out_h"] = e.clock_out_h;
    ev["drops"] = e.drops;
    ev["recharge"] = e.recharge ? json{{"wait_h", e.recharge->wait_h}} : json(nullptr);
    events.push_back(std::move(ev));
  }
  j["events"] = std::move(events);

  json invocations = json::array();
  for (const ServiceInvocation& inv : plan.itinerary.invocations) {
    invocations.push_back({{"from", inv.segment.from},
                           {"to", inv.segment.to},
                           {"length_km", inv.segment.length_km},
                           {"depart_h", inv.depart_h},
                           {"arrive_h", inv.arrive_h},
                           {"battery_after", inv.battery_after.fraction}});
  }
  j["invocations"] = std::move(invocations);
  return j.dump(2) + "\n";
}

CompositionPlan plan_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), "plan file");
  }
  if (!j.contains("format") || j["format"].get<std::string>() != "skyway-plan/1") {
    throw ParseError("unsupported format, expected skyway-plan/1", "format");
  }

  CompositionPlan plan;
  try {
    plan.source = j.at("source").get<NodeId>();
    plan.depart_clock_h = j.at("depart_clock_h").get<double>();
    plan.delivery_time_h = j.at("delivery_time_h").get<double>();
    for (const json& p : j.at("packages")) {
      plan.packages.push_back(
          {p.at("weight_kg").get<double>(), p.at("destination").get<NodeId>()});
    }
    for (const auto& [key, clock] : j.at("per_destination_arrival_h").items()) {
      plan.per_destination_arrival_h[static_cast<NodeId>(std::stoul(key))] =
          clock.get<double>();
    }
    for (const json& e : j.at("events")) {
      NodeEvent ev;
      ev.node = e.at("node").get<NodeId>();
      ev.clock_in_h = e.at("clock_in_h").get<double>();
      ev.clock_out_h = e.at("clock_out_h").get<double>();
      ev.drops = e.at("drops").get<std::vector<std::size_t>>();
      if (!e.at("recharge").is_null()) {
        ev.recharge = RechargeStop{e.at("recharge").at("wait_h").get<double>()};
      }
      plan.itinerary.events.push_back(std::move(ev));
    }
    for (const json& i : j.at("invocations")) {
      ServiceInvocation inv;
      inv.segment.from = i.at("from").get<NodeId>();
      inv.segment.to = i.at("to").get<NodeId>();
      inv.segment.length_km = i.at("length_km").get<double>();
      inv.depart_h = i.at("depart_h").get<double>();
      inv.arrive_h = i.at("arrive_h").get<double>();
      inv.battery_after.fraction = i.at("battery_after").get<double>();
      plan.itinerary.invocations.push_back(inv);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed plan file: ") + e.what(), "plan file");
  }

  if (plan.itinerary.events.size() != plan.itinerary.invocations.size() + 1) {
    throw ParseError("plan must alternate events and invocations", "events");
  }
  return plan;
}

void save_plan(const CompositionPlan& plan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << plan_to_json(plan);
  if (!out) throw IoError("write failed: " + path);
}

CompositionPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return plan_from_json(ss.str());
}

}  // namespace skyway
