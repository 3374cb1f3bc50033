#include "commnet/topology.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "commnet/errors.hpp"

namespace commnet {

std::string_view to_string(EdgeKind k) {
  return k == EdgeKind::hierarchy ? "hierarchy" : "sibling";
}

EdgeKind edge_kind_from_string(std::string_view s) {
  if (s == "hierarchy") return EdgeKind::hierarchy;
  if (s == "sibling") return EdgeKind::sibling;
  throw SchemaViolation("", "unknown edge kind '" + std::string(s) + "'");
}

namespace {

// Union-find over dense node ids.
class DisjointSets {
 public:
  explicit DisjointSets(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  size_t find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(size_t a, size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<size_t> parent_;
};

}  // namespace

void canonicalize_edges(std::vector<Edge>& edges) {
  for (auto& e : edges) {
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b, x.kind) < std::tie(y.a, y.b, y.kind);
  });
}

std::vector<std::string> validate_network(const Network& net) {
  std::vector<std::string> out;
  const size_t n = net.nodes.size();
  if (n == 0) {
    out.push_back("network has no nodes");
    return out;
  }

  bool ids_dense = true;
  for (size_t i = 0; i < n; ++i) {
    if (net.nodes[i].id != i) {
      out.push_back("node ids must be dense 0..n-1 in order; position " + std::to_string(i) +
                    " holds id " + std::to_string(net.nodes[i].id));
      ids_dense = false;
      break;
    }
  }
  if (!ids_dense) return out;  // everything below addresses nodes by id

  std::vector<NodeId> roots;
  for (const auto& node : net.nodes) {
    if (node.node_class == NodeClass::root) roots.push_back(node.id);
    if (node.node_class == NodeClass::device && node.level != 0) {
      out.push_back("device " + std::to_string(node.id) + " has level " +
                    std::to_string(node.level) + " (devices sit at level 0)");
    }
    if (node.node_class != NodeClass::device && node.level == 0) {
      out.push_back(std::string(to_string(node.node_class)) + " " + std::to_string(node.id) +
                    " has level 0");
    }
    if (node.node_class != NodeClass::device && !node.equipment_id.empty()) {
      out.push_back("non-device " + std::to_string(node.id) + " is bound to equipment '" +
                    node.equipment_id + "'");
    }
  }

  if (roots.size() != 1) {
    std::string ids;
    for (NodeId r : roots) ids += (ids.empty() ? "" : ", ") + std::to_string(r);
    out.push_back("exactly one root required; found " + std::to_string(roots.size()) +
                  (roots.empty() ? "" : " (ids " + ids + ")"));
  } else {
    const uint32_t max_level =
        std::max_element(net.nodes.begin(), net.nodes.end(), [](const Node& a, const Node& b) {
          return a.level < b.level;
        })->level;
    if (net.nodes[roots[0]].level != max_level) {
      out.push_back("root " + std::to_string(roots[0]) + " at level " +
                    std::to_string(net.nodes[roots[0]].level) +
                    " is not the maximum level " + std::to_string(max_level));
    }
  }

  // Edge sanity and duplicates.
  std::set<std::tuple<NodeId, NodeId, EdgeKind>> seen;
  size_t hierarchy_edges = 0;
  bool edges_ok = true;
  for (const auto& e : net.edges) {
    if (e.a >= n || e.b >= n) {
      out.push_back("edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                    ") references a missing node");
      edges_ok = false;
      continue;
    }
    if (e.a == e.b) {
      out.push_back("self-loop at node " + std::to_string(e.a));
      edges_ok = false;
      continue;
    }
    const auto key = std::make_tuple(std::min(e.a, e.b), std::max(e.a, e.b), e.kind);
    if (!seen.insert(key).second) {
      out.push_back("duplicate " + std::string(to_string(e.kind)) + " edge (" +
                    std::to_string(e.a) + ", " + std::to_string(e.b) + ")");
      edges_ok = false;
      continue;
    }
    if (e.kind == EdgeKind::hierarchy) {
      ++hierarchy_edges;
      if (net.nodes[e.a].level == net.nodes[e.b].level) {
        out.push_back("hierarchy edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                      ") connects nodes of equal level");
      }
    }
  }

  // Parent rule: every non-root node has exactly one hierarchy edge upward.
  std::vector<int> parent(n, -1);
  bool parents_ok = edges_ok;
  if (edges_ok) {
    std::vector<size_t> up_edges(n, 0);
    for (const auto& e : net.edges) {
      if (e.kind != EdgeKind::hierarchy) continue;
      const NodeId lower = net.nodes[e.a].level < net.nodes[e.b].level ? e.a : e.b;
      const NodeId upper = lower == e.a ? e.b : e.a;
      if (net.nodes[lower].level == net.nodes[upper].level) continue;  // reported above
      ++up_edges[lower];
      parent[lower] = static_cast<int>(upper);
    }
    for (const auto& node : net.nodes) {
      if (node.node_class == NodeClass::root) continue;
      if (up_edges[node.id] != 1) {
        out.push_back("node " + std::to_string(node.id) + " has " +
                      std::to_string(up_edges[node.id]) + " hierarchy parents (expected 1)");
        parents_ok = false;
      }
    }
  }

  // The hierarchy edges must form a spanning tree.
  if (edges_ok) {
    if (hierarchy_edges != n - 1) {
      out.push_back("hierarchy edge count " + std::to_string(hierarchy_edges) +
                    " != node count - 1 (" + std::to_string(n - 1) + ")");
    }
    DisjointSets sets(n);
    for (const auto& e : net.edges) {
      if (e.kind == EdgeKind::hierarchy) sets.unite(e.a, e.b);
    }
    const size_t rep = sets.find(0);
    for (size_t i = 1; i < n; ++i) {
      if (sets.find(i) != rep) {
        out.push_back("hierarchy edges do not connect the network (node " + std::to_string(i) +
                      " unreachable from node 0)");
        break;
      }
    }
  }

  // Sibling edges must stay within one parent group.
  if (parents_ok) {
    for (const auto& e : net.edges) {
      if (e.kind != EdgeKind::sibling) continue;
      if (parent[e.a] < 0 || parent[e.a] != parent[e.b]) {
        out.push_back("sibling edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                      ") connects nodes with different parents");
      }
    }
  }

  return out;
}

std::vector<NodeId> neighbors(const Network& net, NodeId id) {
  if (id >= net.nodes.size()) {
    throw UnknownNode("unknown node id " + std::to_string(id));
  }
  std::vector<NodeId> out;
  for (const auto& e : net.edges) {
    if (e.a == id) out.push_back(e.b);
    if (e.b == id) out.push_back(e.a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

size_t device_count(const Network& net) {
  return static_cast<size_t>(std::count_if(net.nodes.begin(), net.nodes.end(), [](const Node& n) {
    return n.node_class == NodeClass::device;
  }));
}

size_t aggregator_count(const Network& net) {
  return static_cast<size_t>(std::count_if(net.nodes.begin(), net.nodes.end(), [](const Node& n) {
    return n.node_class == NodeClass::aggregator;
  }));
}

AdjacencyIndex::AdjacencyIndex(const Network& net) {
  const size_t n = net.nodes.size();
  std::vector<size_t> degree(n, 0);
  for (const auto& e : net.edges) {
    ++degree[e.a];
    ++degree[e.b];
  }
  offsets_.assign(n + 1, 0);
  for (size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  list_.resize(offsets_[n]);
  std::vector<size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : net.edges) {
    list_[cursor[e.a]++] = e.b;
    list_[cursor[e.b]++] = e.a;
  }
}

}  // namespace commnet
