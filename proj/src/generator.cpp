#include "commnet/generator.hpp"

#include <algorithm>
#include <unordered_set>

#include "commnet/errors.hpp"

namespace commnet {

namespace {

// Substream tags under the master seed.
constexpr uint64_t kStreamCategories = 0x01;
constexpr uint64_t kStreamGroupSizes = 0x02;
constexpr uint64_t kStreamEntrypoints = 0x03;

NodeId add_node(Network& net, NodeClass cls, const Category& category, uint32_t level,
                std::string equipment_id = {}) {
  const auto id = static_cast<NodeId>(net.nodes.size());
  net.nodes.push_back(Node{id, cls, category.id, level, std::move(equipment_id), false});
  return id;
}

void wire_siblings(Network& net, std::span<const NodeId> group, SiblingMode mode) {
  switch (mode) {
    case SiblingMode::none:
      return;
    case SiblingMode::adjacent:
      for (size_t i = 1; i < group.size(); ++i) {
        net.edges.push_back(Edge{group[i - 1], group[i], EdgeKind::sibling});
      }
      return;
    case SiblingMode::all:
      for (size_t i = 0; i < group.size(); ++i) {
        for (size_t j = i + 1; j < group.size(); ++j) {
          net.edges.push_back(Edge{group[i], group[j], EdgeKind::sibling});
        }
      }
      return;
  }
}

NodeId make_aggregator(Network& net, std::span<const NodeId> group, uint32_t level,
                       const NetworkSpec& spec, const GenHyperparams& hp, Rng& category_rng) {
  const Category& cat = sample_category(category_rng, spec.aggregator_categories);
  const NodeId agg = add_node(net, NodeClass::aggregator, cat, level);
  for (NodeId child : group) {
    net.edges.push_back(Edge{agg, child, EdgeKind::hierarchy});
  }
  wire_siblings(net, group, hp.sibling_mode);
  return agg;
}

void check_hyperparams(const GenHyperparams& hp) {
  if (hp.children_per_parent < 2) {
    throw InvariantViolation("children_per_parent must be >= 2");
  }
  if (hp.children_deviation < 0) {
    throw InvariantViolation("children_deviation must be >= 0");
  }
}

}  // namespace

GenHyperparams defaults_for(const NetworkSpec& spec) {
  GenHyperparams hp;
  hp.sibling_mode = spec.default_sibling_mode;
  hp.flat = spec.default_flat;
  return hp;
}

int64_t n_children(Rng& rng, const GenHyperparams& hp, uint64_t remaining) {
  if (hp.flat) return static_cast<int64_t>(remaining);
  const int64_t k =
      hp.children_per_parent + rng.int_in(-hp.children_deviation, hp.children_deviation);
  return std::min(k, static_cast<int64_t>(remaining));
}

std::vector<NodeId> build_layer(Network& net, const std::vector<NodeId>& components,
                                const NetworkSpec& spec, const GenHyperparams& hp,
                                Rng& category_rng, Rng& size_rng) {
  uint32_t level = 0;
  for (NodeId c : components) level = std::max(level, net.nodes[c].level);
  ++level;

  std::vector<NodeId> out;
  bool made_aggregator = false;
  size_t cursor = 0;
  while (cursor < components.size()) {
    const uint64_t remaining = components.size() - cursor;
    const int64_t k = n_children(size_rng, hp, remaining);
    if (k <= 1) {
      // Carry one component up a level unaggregated.
      out.push_back(components[cursor]);
      ++cursor;
      continue;
    }
    const std::span<const NodeId> group(components.data() + cursor, static_cast<size_t>(k));
    out.push_back(make_aggregator(net, group, level, spec, hp, category_rng));
    cursor += static_cast<size_t>(k);
    made_aggregator = true;
  }

  if (!made_aggregator) {
    // Every draw carried; aggregate a leading group so the walk terminates.
    const size_t g = std::min(static_cast<size_t>(hp.children_per_parent), out.size());
    const std::span<const NodeId> group(out.data(), g);
    const NodeId agg = make_aggregator(net, group, level, spec, hp, category_rng);
    std::vector<NodeId> forced;
    forced.push_back(agg);
    forced.insert(forced.end(), out.begin() + static_cast<long>(g), out.end());
    return forced;
  }
  return out;
}

Network assign_entrypoints(Network net, uint32_t n, Rng& rng) {
  const uint64_t total = net.nodes.size();
  if (n > total) {
    throw TooManyEntrypoints("requested " + std::to_string(n) + " entrypoints in a network of " +
                             std::to_string(total) + " nodes");
  }
  for (auto& node : net.nodes) node.is_entrypoint = false;
  // Floyd's sampling: n distinct ids, uniform, without materializing 0..total.
  std::unordered_set<uint64_t> chosen;
  for (uint64_t j = total - n; j < total; ++j) {
    const uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  for (uint64_t id : chosen) net.nodes[id].is_entrypoint = true;
  return net;
}

Network generate(const NetworkSpec& spec, const GenHyperparams& hp, const Grid* grid,
                 std::vector<std::string>* warnings) {
  check_hyperparams(hp);

  Rng category_rng(derive_seed(hp.seed, kStreamCategories));
  Rng size_rng(derive_seed(hp.seed, kStreamGroupSizes));
  Rng entry_rng(derive_seed(hp.seed, kStreamEntrypoints));

  Network net;
  net.meta.spec_name = spec.name;
  net.meta.grid_name = grid ? grid->name : "";
  net.meta.hyperparams = hp;

  std::vector<NodeId> components;
  if (grid) {
    std::vector<char> ever_eligible(spec.device_categories.size(), 0);
    std::vector<size_t> eligible;
    for (const Equipment& equipment : grid->equipment) {
      eligible.clear();
      double eligible_weight = 0.0;
      for (size_t i = 0; i < spec.device_categories.size(); ++i) {
        const Category& cat = spec.device_categories[i];
        if (!equipment_matches(equipment, cat)) continue;
        ever_eligible[i] = 1;
        eligible.push_back(i);
        eligible_weight += cat.weight;
      }
      if (eligible.empty() || eligible_weight <= 0.0) {
        if (warnings) {
          warnings->push_back("equipment '" + equipment.id +
                              "' skipped: no eligible device category");
        }
        continue;
      }
      const Category& cat = sample_category(category_rng, spec.device_categories, &eligible);
      const int splits = n_splits(equipment, cat, warnings);
      for (int s = 0; s < splits; ++s) {
        components.push_back(add_node(net, NodeClass::device, cat, 0, equipment.id));
      }
    }
    if (components.empty()) {
      throw EmptyNetwork("no devices: every equipment item was skipped (grid '" + grid->name +
                         "')");
    }
    if (warnings) {
      for (size_t i = 0; i < spec.device_categories.size(); ++i) {
        const Category& cat = spec.device_categories[i];
        if (!cat.compatibility.empty() && !ever_eligible[i]) {
          warnings->push_back("device category '" + cat.id +
                              "' matched no equipment in grid '" + grid->name + "'");
        }
      }
    }
  } else {
    if (hp.n_devices == 0) {
      throw EmptyNetwork("n_devices must be positive when no grid is given");
    }
    components.reserve(hp.n_devices);
    for (uint64_t i = 0; i < hp.n_devices; ++i) {
      const Category& cat = sample_category(category_rng, spec.device_categories);
      components.push_back(add_node(net, NodeClass::device, cat, 0));
    }
  }

  while (components.size() > 1) {
    components = build_layer(net, components, spec, hp, category_rng, size_rng);
  }

  const NodeId top = components.front();
  const NodeId root =
      add_node(net, NodeClass::root, spec.root_category, net.nodes[top].level + 1);
  net.edges.push_back(Edge{root, top, EdgeKind::hierarchy});
  canonicalize_edges(net.edges);

  return assign_entrypoints(std::move(net), hp.n_entrypoints, entry_rng);
}

}  // namespace commnet
