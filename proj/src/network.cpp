#include "skyway/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "skyway/errors.hpp"
#include "skyway/rng.hpp"

namespace skyway {

namespace {

std::vector<std::vector<std::uint32_t>> build_adjacency(std::size_t n_nodes,
                                                        const std::vector<SkywaySegment>& segments) {
  std::vector<std::vector<std::uint32_t>> adj(n_nodes);
  for (std::uint32_t s = 0; s < segments.size(); ++s) {
    adj[segments[s].from].push_back(s);
    adj[segments[s].to].push_back(s);
  }
  return adj;
}

std::vector<char> reach_from(NodeId start, std::size_t n_nodes,
                             const std::vector<SkywaySegment>& segments) {
  auto adj = build_adjacency(n_nodes, segments);
  std::vector<char> seen(n_nodes, 0);
  std::vector<NodeId> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (std::uint32_t s : adj[u]) {
      const NodeId v = segments[s].other(u);
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

// Union-find over node ids, used for component bookkeeping.
struct Dsu {
  std::vector<NodeId> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  NodeId find(NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

void SkywayNetwork::validate() const {
  if (nodes.size() < 2) throw ValidationError("network needs at least 2 nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.id != i) {
      throw ValidationError("node ids must be dense 0..n-1, found id " + std::to_string(n.id) +
                            " at index " + std::to_string(i));
    }
    if (!std::isfinite(n.position.x_km) || !std::isfinite(n.position.y_km)) {
      throw ValidationError("node " + std::to_string(n.id) + " has non-finite position");
    }
    if (!bounds.contains(n.position)) {
      throw ValidationError("node " + std::to_string(n.id) + " lies outside bounds");
    }
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const SkywaySegment& s : segments) {
    if (s.from >= nodes.size() || s.to >= nodes.size()) {
      throw ValidationError("segment references unknown node");
    }
    if (s.from == s.to) throw ValidationError("segment is a self-loop");
    const auto key = std::minmax(s.from, s.to);
    if (!seen.insert(key).second) {
      throw ValidationError("duplicate segment " + std::to_string(key.first) + "-" +
                            std::to_string(key.second));
    }
    const double expect = distance_km(nodes[s.from].position, nodes[s.to].position);
    if (s.length_km <= 0.0 || std::abs(s.length_km - expect) > 1e-9) {
      throw ValidationError("segment " + std::to_string(s.from) + "-" + std::to_string(s.to) +
                            " length does not match endpoint distance");
    }
  }
  if (!is_connected()) throw ValidationError("network is disconnected");
}

bool SkywayNetwork::is_connected() const {
  if (nodes.empty()) return false;
  const auto seen = reach_from(0, nodes.size(), segments);
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

std::size_t NetworkView::node_count() const {
  return static_cast<std::size_t>(std::count(in_view.begin(), in_view.end(), 1));
}

bool NetworkView::covers_full_network() const {
  return node_count() == net->nodes.size() && segment_ids.size() == net->segments.size();
}

bool NetworkView::connects(NodeId src, const std::vector<NodeId>& targets) const {
  if (!contains(src)) return false;
  std::vector<char> seen(net->nodes.size(), 0);
  std::vector<NodeId> stack{src};
  seen[src] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (std::uint32_t s : adjacency[u]) {
      const NodeId v = net->segments[s].other(u);
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return std::all_of(targets.begin(), targets.end(),
                     [&](NodeId t) { return t < seen.size() && seen[t]; });
}

NetworkView induced_subgraph(const SkywayNetwork& net, const NodePredicate& keep,
                             const std::vector<NodeId>& forced) {
  NetworkView view;
  view.net = &net;
  view.in_view.assign(net.nodes.size(), 0);
  for (const Node& n : net.nodes) {
    if (keep(n)) view.in_view[n.id] = 1;
  }
  for (NodeId id : forced) {
    if (id >= net.nodes.size()) throw ValidationError("forced node not in network");
    view.in_view[id] = 1;
  }
  view.adjacency.resize(net.nodes.size());
  for (std::uint32_t s = 0; s < net.segments.size(); ++s) {
    const SkywaySegment& seg = net.segments[s];
    if (view.in_view[seg.from] && view.in_view[seg.to]) {
      view.segment_ids.push_back(s);
      view.adjacency[seg.from].push_back(s);
      view.adjacency[seg.to].push_back(s);
    }
  }
  return view;
}

NetworkView full_view(const SkywayNetwork& net) {
  return induced_subgraph(
      net, [](const Node&) { return true; }, {});
}

SkywayNetwork generate_network(std::uint32_t n_nodes, Rect bounds, double max_segment_len_km,
                               std::uint32_t pads_per_station, std::uint64_t seed) {
  if (n_nodes < 2) throw ValidationError("generate_network requires n_nodes >= 2");
  if (bounds.width_km <= 0.0 || bounds.height_km <= 0.0) {
    throw ValidationError("generate_network requires positive bounds");
  }
  if (max_segment_len_km <= 0.0) {
    throw ValidationError("generate_network requires positive max_segment_len");
  }

  SkywayNetwork net;
  net.bounds = bounds;
  Rng rng(seed);
  net.nodes.reserve(n_nodes);
  for (NodeId id = 0; id < n_nodes; ++id) {
    Node n;
    n.id = id;
    n.position = {rng.next_in(0.0, bounds.width_km), rng.next_in(0.0, bounds.height_km)};
    n.pads = pads_per_station;
    net.nodes.push_back(n);
  }

  Dsu components(n_nodes);
  for (NodeId i = 0; i < n_nodes; ++i) {
    for (NodeId j = i + 1; j < n_nodes; ++j) {
      const double d = distance_km(net.nodes[i].position, net.nodes[j].position);
      if (d > 0.0 && d <= max_segment_len_km) {
        net.segments.push_back({i, j, d});
        components.unite(i, j);
      }
    }
  }

  // Bridge remaining components with the shortest inter-component edges
  // (Kruskal over all cross pairs).
  struct Candidate {
    double d;
    NodeId i, j;
  };
  std::vector<Candidate> candidates;
  for (NodeId i = 0; i < n_nodes; ++i) {
    for (NodeId j = i + 1; j < n_nodes; ++j) {
      if (components.find(i) != components.find(j)) {
        candidates.push_back({distance_km(net.nodes[i].position, net.nodes[j].position), i, j});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  for (const Candidate& c : candidates) {
    if (components.unite(c.i, c.j)) {
      net.segments.push_back({c.i, c.j, c.d});
    }
  }

  std::sort(net.segments.begin(), net.segments.end(),
            [](const SkywaySegment& a, const SkywaySegment& b) {
              if (a.from != b.from) return a.from < b.from;
              return a.to < b.to;
            });
  net.validate();
  return net;
}

}  // namespace skyway
