#pragma once

#include <string>

#include "skyway/network.hpp"

namespace skyway {

/// File format: JSON, top-level keys `format` ("skyway-net/1"), `bounds`,
/// `nodes` [{id, x_km, y_km, pads}], `segments` [{from, to}]. Segment lengths
/// are recomputed on load and validated against node positions.
void save_network(const SkywayNetwork& net, const std::string& path);
SkywayNetwork load_network(const std::string& path);

std::string network_to_json(const SkywayNetwork& net);
SkywayNetwork network_from_json(const std::string& text);

}  // namespace skyway
