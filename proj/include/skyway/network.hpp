#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "skyway/geometry.hpp"

namespace skyway {

/// Node ids are dense 0..n-1 within a network.
using NodeId = std::uint32_t;

struct Node {
  NodeId id = 0;
  Vec2 position;
  /// Recharging pads. 0 means the node is a pure waypoint/target.
  std::uint32_t pads = 0;

  bool is_station() const { return pads > 0; }
};

/// One skyway segment, i.e. one atomic drone service. Undirected.
struct SkywaySegment {
  NodeId from = 0;
  NodeId to = 0;
  double length_km = 0.0;

  NodeId other(NodeId n) const { return n == from ? to : from; }
};

/// Immutable after construction; safe to share across threads.
struct SkywayNetwork {
  Rect bounds;
  std::vector<Node> nodes;
  std::vector<SkywaySegment> segments;

  const Node& node(NodeId id) const { return nodes.at(id); }
  std::size_t size() const { return nodes.size(); }

  /// Checks ids dense, segment lengths Euclidean (1e-9), no duplicates,
  /// positions inside bounds, graph connected. Throws ValidationError.
  void validate() const;

  bool is_connected() const;
};

/// Subset view over a parent network. Preserves original NodeIds; keeps only
/// segments with both endpoints retained. May be disconnected.
struct NetworkView {
  const SkywayNetwork* net = nullptr;
  std::vector<char> in_view;                        // indexed by NodeId
  std::vector<std::uint32_t> segment_ids;           // indices into net->segments
  std::vector<std::vector<std::uint32_t>> adjacency;  // NodeId -> segment indices

  bool contains(NodeId id) const { return id < in_view.size() && in_view[id]; }
  std::size_t node_count() const;
  bool covers_full_network() const;
  /// True when every target is reachable from src over view segments.
  bool connects(NodeId src, const std::vector<NodeId>& targets) const;
};

using NodePredicate = std::function<bool(const Node&)>;

NetworkView induced_subgraph(const SkywayNetwork& net, const NodePredicate& keep,
                             const std::vector<NodeId>& forced);

NetworkView full_view(const SkywayNetwork& net);

/// Random geometric network: n nodes uniform in bounds, an edge between every
/// pair within max_segment_len; if that leaves components, the shortest
/// bridging edges (an MST pass over components) are added. Deterministic per
/// seed.
SkywayNetwork generate_network(std::uint32_t n_nodes, Rect bounds, double max_segment_len_km,
                               std::uint32_t pads_per_station, std::uint64_t seed);

}  // namespace skyway
