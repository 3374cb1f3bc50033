#pragma once

#include <vector>

#include "commnet/grid_model.hpp"
#include "commnet/hyperparams.hpp"
#include "commnet/topology.hpp"

namespace commnet {

// Hyperparameters with the spec's own defaults applied (sibling mode, flat).
GenHyperparams defaults_for(const NetworkSpec& spec);

// Procedurally generates a network from (spec, hyperparams, optional grid).
// Fully deterministic in its inputs: category draws, group sizes and
// entrypoint placement use independent substreams of hp.seed, so e.g. the
// entrypoint count never perturbs the topology.
//
// Without a grid, hp.n_devices leaf devices are created, categories drawn by
// weight. With a grid, equipment is walked in file order; for each item the
// device categories are masked by compatibility, one is drawn from the
// renormalized weights, and n_splits() devices are created bound to that
// equipment. Equipment with no eligible category is skipped with a warning.
//
// Leaves are then aggregated level by level until a single component
// remains, the root is attached to it, and hp.n_entrypoints distinct nodes
// are flagged uniformly at random.
Network generate(const NetworkSpec& spec, const GenHyperparams& hp,
                 const Grid* grid = nullptr,
                 std::vector<std::string>* warnings = nullptr);

// Group size for the next aggregator: `remaining` when flat, otherwise
// children_per_parent plus a uniform integer in [-deviation, +deviation],
// capped at `remaining`. A result <= 1 signals a carry-up (the next
// component moves one level up unaggregated).
int64_t n_children(Rng& rng, const GenHyperparams& hp, uint64_t remaining);

// One aggregation pass over `components` (node ids, left to right): draws a
// group size per step, creates an aggregator over each group (appending
// nodes and edges to `net`), wires the group's siblings, and carries single
// components up on draws <= 1. If a full pass creates no aggregator, the
// first min(children_per_parent, n) carried components are force-aggregated
// so the component count strictly decreases.
std::vector<NodeId> build_layer(Network& net, const std::vector<NodeId>& components,
                                const NetworkSpec& spec, const GenHyperparams& hp,
                                Rng& category_rng, Rng& size_rng);

// Flags exactly `n` distinct nodes as entrypoints, uniformly without
// replacement; any previous flags are cleared.
Network assign_entrypoints(Network net, uint32_t n, Rng& rng);

}  // namespace commnet
