#include "skyway/network_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "skyway/errors.hpp"

namespace skyway {

namespace {

using nlohmann::json;

json require_key(const json& j, const char* key, const char* section) {
  if (!j.contains(key)) {
    throw ParseError(std::string("missing key '") + key + "'", section);
  }
  return j.at(key);
}

}  // namespace

std::string network_to_json(const SkywayNetwork& net) {
  json j;
  j["format"] = "skyway-net/1";
  j["bounds"] = {{"width_km", net.bounds.width_km}, {"height_km", net.bounds.height_km}};
  json nodes = json::array();
  for (const Node& n : net.nodes) {
    nodes.push_back({{"id", n.id},
                     {"x_km", n.position.x_km},
                     {"y_km", n.position.y_km},
                     {"pads", n.pads}});
  }
  j["nodes"] = std::move(nodes);
  json segments = json::array();
  for (const SkywaySegment& s : net.segments) {
    segments.push_back({{"from", s.from}, {"to", s.to}});
  }
  j["segments"] = std::move(segments);
  return j.dump(2) + "\n";
}

SkywayNetwork network_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), "network file");
  }

  if (require_key(j, "format", "top level").get<std::string>() != "skyway-net/1") {
    throw ParseError("unsupported format, expected skyway-net/1", "format");
  }

  SkywayNetwork net;
  try {
    const json b = require_key(j, "bounds", "top level");
    net.bounds.width_km = require_key(b, "width_km", "bounds").get<double>();
    net.bounds.height_km = require_key(b, "height_km", "bounds").get<double>();

    const json nodes = require_key(j, "nodes", "top level");
    for (const json& n : nodes) {
      Node node;
      node.id = require_key(n, "id", "nodes").get<NodeId>();
      node.position.x_km = require_key(n, "x_km", "nodes").get<double>();
      node.position.y_km = require_key(n, "y_km", "nodes").get<double>();
      node.pads = require_key(n, "pads", "nodes").get<std::uint32_t>();
      net.nodes.push_back(node);
    }

    const json segments = require_key(j, "segments", "top level");
    for (const json& s : segments) {
      SkywaySegment seg;
      seg.from = require_key(s, "from", "segments").get<NodeId>();
      seg.to = require_key(s, "to", "segments").get<NodeId>();
      if (seg.from >= net.nodes.size() || seg.to >= net.nodes.size()) {
        throw ParseError("segment references unknown node id", "segments");
      }
      // Lengths are derived state; recompute from positions.
      seg.length_km = distance_km(net.nodes[seg.from].position, net.nodes[seg.to].position);
      net.segments.push_back(seg);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed network file: ") + e.what(), "network file");
  }

  net.validate();
  return net;
}

void save_network(const SkywayNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << network_to_json(net);
  if (!out) throw IoError("write failed: " + path);
}

SkywayNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return network_from_json(ss.str());
}

}  // namespace skyway
