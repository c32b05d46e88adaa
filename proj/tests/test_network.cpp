#include <set>

#include "doctest.h"
#include "skyway/errors.hpp"
#include "skyway/network.hpp"
#include "skyway/network_io.hpp"

using namespace skyway;

TEST_CASE("two nodes in a small box yield the single possible segment") {
  const SkywayNetwork net = generate_network(2, Rect{10.0, 10.0}, 20.0, 4, 7);
  CHECK(net.nodes.size() == 2);
  CHECK(net.segments.size() == 1);
  CHECK(net.segments[0].length_km ==
        doctest::Approx(distance_km(net.nodes[0].position, net.nodes[1].position)));
}

TEST_CASE("generated networks are valid, connected, and in bounds") {
  for (const std::uint32_t n : {5u, 12u, 35u}) {
    const SkywayNetwork net = generate_network(n, Rect{100.0, 100.0}, 20.0, 4, n);
    CAPTURE(n);
    CHECK_NOTHROW(net.validate());
    CHECK(net.is_connected());
    CHECK(net.nodes.size() == n);
    for (const Node& node : net.nodes) {
      CHECK(net.bounds.contains(node.position));
      CHECK(node.pads == 4);
      CHECK(node.is_station());
    }
  }
}

TEST_CASE("every node pair within the segment cap is connected directly") {
  const SkywayNetwork net = generate_network(20, Rect{60.0, 60.0}, 15.0, 4, 3);
  std::set<std::pair<NodeId, NodeId>> present;
  for (const SkywaySegment& s : net.segments) {
    present.insert(std::minmax(s.from, s.to));
  }
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < net.nodes.size(); ++j) {
      const double d = distance_km(net.nodes[i].position, net.nodes[j].position);
      if (d <= 15.0) {
        CHECK(present.count({static_cast<NodeId>(i), static_cast<NodeId>(j)}) == 1);
      }
    }
  }
}

TEST_CASE("generation is deterministic per seed") {
  const SkywayNetwork a = generate_network(15, Rect{80.0, 80.0}, 18.0, 4, 123);
  const SkywayNetwork b = generate_network(15, Rect{80.0, 80.0}, 18.0, 4, 123);
  const SkywayNetwork c = generate_network(15, Rect{80.0, 80.0}, 18.0, 4, 124);
  CHECK(network_to_json(a) == network_to_json(b));
  CHECK(network_to_json(a) != network_to_json(c));
}

TEST_CASE("generator rejects degenerate parameters") {
  CHECK_THROWS_AS(generate_network(1, Rect{10.0, 10.0}, 5.0, 4, 1), ValidationError);
  CHECK_THROWS_AS(generate_network(5, Rect{0.0, 10.0}, 5.0, 4, 1), ValidationError);
  CHECK_THROWS_AS(generate_network(5, Rect{10.0, 10.0}, 0.0, 4, 1), ValidationError);
}

TEST_CASE("network validation catches broken invariants") {
  SkywayNetwork net = generate_network(6, Rect{40.0, 40.0}, 30.0, 2, 9);

  SUBCASE("self loop") {
    net.segments.push_back({2, 2, 0.0});
    CHECK_THROWS_AS(net.validate(), ValidationError);
  }
  SUBCASE("duplicate segment") {
    net.segments.push_back(net.segments.front());
    CHECK_THROWS_AS(net.validate(), ValidationError);
  }
  SUBCASE("length disagrees with geometry") {
    net.segments.front().length_km += 0.5;
    CHECK_THROWS_AS(net.validate(), ValidationError);
  }
  SUBCASE("node out of bounds") {
    net.nodes[3].position.x_km = 1000.0;
    CHECK_THROWS_AS(net.validate(), ValidationError);
  }
  SUBCASE("disconnected") {
    // Cutting all segments that touch node 0 isolates it.
    std::erase_if(net.segments,
                  [](const SkywaySegment& s) { return s.from == 0 || s.to == 0; });
    CHECK_THROWS_AS(net.validate(), ValidationError);
  }
}

TEST_CASE("network files round-trip byte-identically") {
  const SkywayNetwork net = generate_network(10, Rect{70.0, 70.0}, 25.0, 4, 31);
  const std::string text = network_to_json(net);
  const SkywayNetwork back = network_from_json(text);
  CHECK(network_to_json(back) == text);
  CHECK(back.nodes.size() == net.nodes.size());
  CHECK(back.segments.size() == net.segments.size());
}

TEST_CASE("network parsing fails loudly on malformed input") {
  CHECK_THROWS_AS(network_from_json("not json"), ParseError);
  CHECK_THROWS_AS(network_from_json("{}"), ParseError);
  CHECK_THROWS_AS(network_from_json(R"({"format":"skyway-net/9"})"), ParseError);
  CHECK_THROWS_AS(load_network("/nonexistent/net.json"), IoError);

  const SkywayNetwork net = generate_network(5, Rect{30.0, 30.0}, 40.0, 4, 2);
  std::string text = network_to_json(net);
  text.resize(text.size() / 2);  // truncate mid-document
  CHECK_THROWS_AS(network_from_json(text), ParseError);
}

TEST_CASE("induced subgraph keeps forced nodes and interior segments") {
  const SkywayNetwork net = generate_network(12, Rect{100.0, 100.0}, 35.0, 4, 5);

  // Keep the left half of the area, but force node 11 in regardless.
  const NetworkView view = induced_subgraph(
      net, [](const Node& n) { return n.position.x_km <= 50.0; }, {11});
  CHECK(view.contains(11));
  for (const Node& n : net.nodes) {
    if (n.position.x_km <= 50.0) CHECK(view.contains(n.id));
  }
  for (const std::uint32_t s : view.segment_ids) {
    CHECK(view.contains(net.segments[s].from));
    CHECK(view.contains(net.segments[s].to));
  }
  // Segments with an excluded endpoint stay out.
  for (std::uint32_t s = 0; s < net.segments.size(); ++s) {
    const bool both_in = view.contains(net.segments[s].from) &&
                         view.contains(net.segments[s].to);
    const bool listed =
        std::find(view.segment_ids.begin(), view.segment_ids.end(), s) != view.segment_ids.end();
    CHECK(both_in == listed);
  }
}

TEST_CASE("an all-pass predicate reproduces the full view exactly") {
  const SkywayNetwork net = generate_network(14, Rect{90.0, 90.0}, 30.0, 4, 8);
  const NetworkView all = induced_subgraph(net, [](const Node&) { return true; }, {});
  const NetworkView full = full_view(net);
  CHECK(all.covers_full_network());
  CHECK(all.in_view == full.in_view);
  CHECK(all.segment_ids == full.segment_ids);
  CHECK(all.adjacency == full.adjacency);
}

TEST_CASE("view connectivity checks reachability inside the view only") {
  const SkywayNetwork net = generate_network(10, Rect{100.0, 100.0}, 40.0, 4, 21);
  const NetworkView full = full_view(net);
  CHECK(full.connects(0, {1, 2, 9}));

  // A view holding only two far-apart nodes has no connecting segments.
  const NetworkView pair = induced_subgraph(
      net, [](const Node& n) { return n.id == 0 || n.id == 9; }, {});
  const bool direct = std::any_of(
      net.segments.begin(), net.segments.end(), [](const SkywaySegment& s) {
        return std::minmax(s.from, s.to) == std::minmax<NodeId>(0, 9);
      });
  CHECK(pair.connects(0, {9}) == direct);
}
