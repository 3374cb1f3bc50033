#pragma once

#include <string>

#include "commnet/attack_sim.hpp"
#include "commnet/topology.hpp"

namespace commnet {

// Node-link JSON document (format_version 1). Canonical: nodes ascending by
// id, links sorted by (min id, max id, kind); equal networks serialize to
// equal bytes.
std::string export_json(const Network& net);

// Inverse of export_json. The document is validated; structural violations
// throw InvalidNetwork rather than being silently accepted.
Network import_json(const std::string& text);

// Undirected Graphviz DOT: node shape keyed by class, sibling edges dashed,
// entrypoints highlighted.
std::string export_dot(const Network& net);

// CSV with header "compromised_devices,count,fraction" and one row for every
// count in 0..device_count (zero-count rows included).
std::string export_histogram_csv(const CompromiseDistribution& dist);

}  // namespace commnet
