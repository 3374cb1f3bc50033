#include "commnet/export_io.hpp"

#include <algorithm>
#include <charconv>

#include "commnet/errors.hpp"
#include "json_util.hpp"

namespace commnet {

using detail::child_path;
using detail::index_path;
using detail::json;
using detail::ObjectReader;
using detail::ojson;

namespace {

ojson meta_to_json(const NetworkMeta& meta) {
  ojson m;
  m["spec_name"] = meta.spec_name;
  if (meta.grid_name.empty()) {
    m["grid_name"] = nullptr;
  } else {
    m["grid_name"] = meta.grid_name;
  }
  m["seed"] = meta.hyperparams.seed;
  ojson hp;
  hp["n_devices"] = meta.hyperparams.n_devices;
  hp["sibling_mode"] = std::string(to_string(meta.hyperparams.sibling_mode));
  hp["flat"] = meta.hyperparams.flat;
  hp["children_per_parent"] = meta.hyperparams.children_per_parent;
  hp["children_deviation"] = meta.hyperparams.children_deviation;
  hp["n_entrypoints"] = meta.hyperparams.n_entrypoints;
  m["hyperparams"] = std::move(hp);
  return m;
}

NetworkMeta meta_from_json(const json& j) {
  ObjectReader r(j, "meta");
  NetworkMeta meta;
  meta.spec_name = r.require_string("spec_name");
  const json& grid = r.require("grid_name");
  if (grid.is_string()) {
    meta.grid_name = grid.get<std::string>();
  } else if (!grid.is_null()) {
    throw SchemaViolation("meta.grid_name", "expected a string or null");
  }
  meta.hyperparams.seed = r.require_uint("seed");
  ObjectReader hr(r.require("hyperparams"), "meta.hyperparams");
  meta.hyperparams.n_devices = hr.require_uint("n_devices");
  meta.hyperparams.sibling_mode = sibling_mode_from_string(hr.require_string("sibling_mode"));
  meta.hyperparams.flat = hr.require_bool("flat");
  meta.hyperparams.children_per_parent = static_cast<int>(hr.require_uint("children_per_parent"));
  meta.hyperparams.children_deviation = static_cast<int>(hr.require_uint("children_deviation"));
  meta.hyperparams.n_entrypoints = static_cast<uint32_t>(hr.require_uint("n_entrypoints"));
  hr.done();
  r.done();
  return meta;
}

}  // namespace

std::string export_json(const Network& net) {
  ojson doc;
  doc["format_version"] = 1;
  doc["meta"] = meta_to_json(net.meta);

  ojson nodes = ojson::array();
  for (const auto& node : net.nodes) {
    ojson nj;
    nj["id"] = node.id;
    nj["class"] = std::string(to_string(node.node_class));
    nj["category"] = node.category_id;
    nj["level"] = node.level;
    nj["entrypoint"] = node.is_entrypoint;
    if (!node.equipment_id.empty()) nj["equipment"] = node.equipment_id;
    nodes.push_back(std::move(nj));
  }
  doc["nodes"] = std::move(nodes);

  std::vector<Edge> sorted(net.edges);
  canonicalize_edges(sorted);
  ojson links = ojson::array();
  for (const auto& e : sorted) {
    ojson ej;
    ej["a"] = e.a;
    ej["b"] = e.b;
    ej["kind"] = std::string(to_string(e.kind));
    links.push_back(std::move(ej));
  }
  doc["links"] = std::move(links);
  return doc.dump(2) + "\n";
}

Network import_json(const std::string& text) {
  json j = detail::parse_document(text);
  if (!j.is_object() || !j.contains("format_version") ||
      !j["format_version"].is_number_unsigned() || j["format_version"].get<uint64_t>() != 1) {
    throw MalformedJson("missing or unsupported format_version (expected 1)");
  }

  ObjectReader r(j, "");
  r.require("format_version");
  Network net;
  net.meta = meta_from_json(r.require("meta"));

  const json& nodes = r.require_array("nodes");
  for (size_t i = 0; i < nodes.size(); ++i) {
    ObjectReader nr(nodes[i], index_path("nodes", i));
    Node node;
    node.id = static_cast<NodeId>(nr.require_uint("id"));
    try {
      node.node_class = node_class_from_string(nr.require_string("class"));
    } catch (const SchemaViolation& e) {
      throw SchemaViolation(child_path(index_path("nodes", i), "class"), e.reason);
    }
    node.category_id = nr.require_string("category");
    node.level = static_cast<uint32_t>(nr.require_uint("level"));
    node.is_entrypoint = nr.require_bool("entrypoint");
    if (const json* eq = nr.optional("equipment")) {
      if (!eq->is_string()) {
        throw SchemaViolation(child_path(index_path("nodes", i), "equipment"),
                              "expected a string");
      }
      node.equipment_id = eq->get<std::string>();
    }
    nr.done();
    net.nodes.push_back(std::move(node));
  }

  const json& links = r.require_array("links");
  for (size_t i = 0; i < links.size(); ++i) {
    ObjectReader er(links[i], index_path("links", i));
    Edge edge;
    edge.a = static_cast<NodeId>(er.require_uint("a"));
    edge.b = static_cast<NodeId>(er.require_uint("b"));
    try {
      edge.kind = edge_kind_from_string(er.require_string("kind"));
    } catch (const SchemaViolation& e) {
      throw SchemaViolation(child_path(index_path("links", i), "kind"), e.reason);
    }
    er.done();
    net.edges.push_back(edge);
  }
  r.done();

  std::sort(net.nodes.begin(), net.nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  canonicalize_edges(net.edges);

  const std::vector<std::string> violations = validate_network(net);
  if (!violations.empty()) throw InvalidNetwork(violations);
  return net;
}

std::string export_dot(const Network& net) {
  std::string out = "graph communication_network {\n";
  out += "  node [fontname=\"Helvetica\"];\n";
  for (const auto& node : net.nodes) {
    const char* shape = "box";
    if (node.node_class == NodeClass::aggregator) shape = "ellipse";
    if (node.node_class == NodeClass::root) shape = "doubleoctagon";
    out += "  n" + std::to_string(node.id) + " [label=\"" + node.category_id + " #" +
           std::to_string(node.id) + "\", shape=" + shape;
    if (node.is_entrypoint) out += ", color=red, penwidth=2";
    out += "];\n";
  }
  std::vector<Edge> sorted(net.edges);
  canonicalize_edges(sorted);
  for (const auto& e : sorted) {
    out += "  n" + std::to_string(e.a) + " -- n" + std::to_string(e.b);
    if (e.kind == EdgeKind::sibling) out += " [style=dashed]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string export_histogram_csv(const CompromiseDistribution& dist) {
  if (dist.n_trials == 0) throw InvariantViolation("empty distribution");
  std::string out = "compromised_devices,count,fraction\n";
  for (uint32_t k = 0; k <= dist.device_count; ++k) {
    auto it = dist.histogram.find(k);
    const uint64_t count = it == dist.histogram.end() ? 0 : it->second;
    const double fraction = static_cast<double>(count) / static_cast<double>(dist.n_trials);
    out += std::to_string(k) + "," + std::to_string(count) + "," + format_double(fraction) + "\n";
  }
  return out;
}

}  // namespace commnet
