#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "commnet/hyperparams.hpp"
#include "commnet/spec_model.hpp"

namespace commnet {

using NodeId = uint32_t;

enum class EdgeKind { hierarchy, sibling };
std::string_view to_string(EdgeKind k);
EdgeKind edge_kind_from_string(std::string_view s);

struct Node {
  NodeId id = 0;
  NodeClass node_class = NodeClass::device;
  std::string category_id;
  uint32_t level = 0;              // 0 = leaf layer; root has the maximum
  std::string equipment_id;        // empty unless a grid-bound device
  bool is_entrypoint = false;
  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  EdgeKind kind = EdgeKind::hierarchy;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct NetworkMeta {
  std::string spec_name;
  std::string grid_name;  // empty when generated without a grid
  GenHyperparams hyperparams;
  friend bool operator==(const NetworkMeta&, const NetworkMeta&) = default;
};

// A generated communication network. Hierarchy edges form a spanning tree
// rooted at the single root node; sibling edges only ever connect children
// of the same parent.
struct Network {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  NetworkMeta meta;
  friend bool operator==(const Network&, const Network&) = default;
};

// Normalizes each edge to a <= b and sorts by (a, b, kind). Generator output
// and imports are always canonical, making equal networks compare equal and
// serialize to equal bytes.
void canonicalize_edges(std::vector<Edge>& edges);

// Checks every structural invariant and returns one message per violation
// (empty = valid). Violations are data, not errors.
std::vector<std::string> validate_network(const Network& net);

// Nodes sharing any edge (either kind) with `id`, sorted ascending.
std::vector<NodeId> neighbors(const Network& net, NodeId id);

size_t device_count(const Network& net);
size_t aggregator_count(const Network& net);

// Read-only CSR adjacency over both edge kinds, built once and shared.
class AdjacencyIndex {
 public:
  explicit AdjacencyIndex(const Network& net);
  std::span<const NodeId> operator[](NodeId id) const {
    return {list_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }
  size_t node_count() const { return offsets_.size() - 1; }

 private:
  std::vector<size_t> offsets_;
  std::vector<NodeId> list_;
};

}  // namespace commnet
