#include "commnet/attack_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "commnet/errors.hpp"

namespace commnet {

std::string_view to_string(Terminal t) {
  switch (t) {
    case Terminal::full_compromise: return "full_compromise";
    case Terminal::budget_exhausted: return "budget_exhausted";
    case Terminal::dead_end: return "dead_end";
    case Terminal::entry_failed: return "entry_failed";
  }
  return "?";
}

double effort_quantile(const DefenseProfile& profile, double u) {
  const auto& pts = profile.effort_cdf;
  if (u <= pts.front().cum_prob) return pts.front().effort;
  size_t i = 1;
  while (pts[i].cum_prob < u) ++i;  // exists: last cum_prob is 1.0 and u <= 1
  const double c0 = pts[i - 1].cum_prob;
  const double c1 = pts[i].cum_prob;
  const double t = (u - c0) / (c1 - c0);
  return pts[i - 1].effort + t * (pts[i].effort - pts[i - 1].effort);
}

double sample_effort(Rng& rng, const DefenseProfile& profile) {
  return effort_quantile(profile, rng.next_unit());
}

namespace {

// Per-node defense lookup, resolved once per campaign.
struct ProfileTable {
  std::vector<const DefenseProfile*> defense;
  std::vector<uint8_t> is_device;
};

ProfileTable build_profile_table(const Network& net, const NetworkSpec& spec) {
  std::unordered_map<std::string_view, const Category*> by_id;
  auto index = [&by_id](const Category& c) { by_id.emplace(c.id, &c); };
  for (const auto& c : spec.device_categories) index(c);
  for (const auto& c : spec.aggregator_categories) index(c);
  index(spec.root_category);

  ProfileTable table;
  table.defense.reserve(net.nodes.size());
  table.is_device.reserve(net.nodes.size());
  for (const auto& node : net.nodes) {
    auto it = by_id.find(node.category_id);
    if (it == by_id.end()) {
      throw UnknownCategory("node " + std::to_string(node.id) + " has category '" +
                            node.category_id + "' which specification '" + spec.name +
                            "' does not define");
    }
    table.defense.push_back(&it->second->defense);
    table.is_device.push_back(node.node_class == NodeClass::device ? 1 : 0);
  }
  return table;
}

// Scratch buffers reused across trials of one worker.
struct WalkScratch {
  std::vector<uint8_t> compromised;
  std::vector<uint8_t> failed;
  std::vector<uint8_t> in_frontier;
  std::vector<NodeId> frontier;
};

AttackResult walk(const AdjacencyIndex& adj, const ProfileTable& table, NodeId entry,
                  double budget, Rng& rng, WalkScratch& scratch) {
  const size_t n = adj.node_count();
  scratch.compromised.assign(n, 0);
  scratch.failed.assign(n, 0);
  scratch.in_frontier.assign(n, 0);
  scratch.frontier.clear();

  AttackResult result;
  result.entrypoint = entry;

  // Entry attempt: effort always spent (capped at the budget).
  double cumulative = sample_effort(rng, *table.defense[entry]);
  if (!rng.bernoulli(table.defense[entry]->success_prob)) {
    result.effort_spent = std::min(cumulative, budget);
    result.terminal = Terminal::entry_failed;
    return result;
  }
  size_t n_compromised = 1;
  scratch.compromised[entry] = 1;
  result.compromised_devices = table.is_device[entry];

  auto extend_frontier = [&](NodeId from) {
    for (NodeId nb : adj[from]) {
      if (!scratch.compromised[nb] && !scratch.failed[nb] && !scratch.in_frontier[nb]) {
        scratch.in_frontier[nb] = 1;
        scratch.frontier.push_back(nb);
      }
    }
  };
  extend_frontier(entry);

  while (true) {
    if (n_compromised == n) {
      result.terminal = Terminal::full_compromise;
      break;
    }
    if (scratch.frontier.empty()) {
      result.terminal = Terminal::dead_end;
      break;
    }
    const size_t pick = rng.below(scratch.frontier.size());
    const NodeId target = scratch.frontier[pick];
    const double effort = sample_effort(rng, *table.defense[target]);
    if (cumulative + effort > budget) {
      // Abandoned mid-attempt: target is neither compromised nor failed.
      cumulative = budget;
      result.terminal = Terminal::budget_exhausted;
      break;
    }
    cumulative += effort;
    scratch.frontier[pick] = scratch.frontier.back();
    scratch.frontier.pop_back();
    scratch.in_frontier[target] = 0;
    if (rng.bernoulli(table.defense[target]->success_prob)) {
      scratch.compromised[target] = 1;
      ++n_compromised;
      result.compromised_devices += table.is_device[target];
      extend_frontier(target);
    } else {
      scratch.failed[target] = 1;
    }
  }

  result.compromised_total = static_cast<uint32_t>(n_compromised);
  result.effort_spent = std::min(cumulative, budget);
  return result;
}

void check_config(const AttackConfig& cfg) {
  if (!(cfg.budget > 0)) throw InvariantViolation("attack budget must be positive");
  if (cfg.trials_per_entrypoint < 1) {
    throw InvariantViolation("trials_per_entrypoint must be >= 1");
  }
}

std::vector<NodeId> resolve_entrypoints(const Network& net, const AttackConfig& cfg) {
  std::vector<NodeId> out;
  switch (cfg.entrypoint_mode) {
    case EntrypointMode::flagged:
      for (const auto& node : net.nodes) {
        if (node.is_entrypoint) out.push_back(node.id);
      }
      if (out.empty()) throw NoEntrypoints("network has no flagged entrypoints");
      return out;
    case EntrypointMode::sweep_devices:
      for (const auto& node : net.nodes) {
        if (node.node_class == NodeClass::device) out.push_back(node.id);
      }
      if (out.empty()) throw NoEntrypoints("network has no device nodes to sweep");
      return out;
    case EntrypointMode::single:
      if (cfg.entry_node >= net.nodes.size()) {
        throw UnknownNode("unknown entry node id " + std::to_string(cfg.entry_node));
      }
      out.push_back(cfg.entry_node);
      return out;
  }
  return out;
}

Rng trial_rng(uint64_t seed, NodeId entry, uint32_t trial) {
  return Rng(derive_seed(derive_seed(seed, entry), trial));
}

}  // namespace

AttackResult run_attack(const Network& net, const NetworkSpec& spec, NodeId entry,
                        const AttackConfig& cfg, Rng& rng) {
  if (entry >= net.nodes.size()) {
    throw UnknownNode("unknown entry node id " + std::to_string(entry));
  }
  check_config(cfg);
  const AdjacencyIndex adj(net);
  const ProfileTable table = build_profile_table(net, spec);
  WalkScratch scratch;
  return walk(adj, table, entry, cfg.budget, rng, scratch);
}

CompromiseDistribution run_campaign(const Network& net, const NetworkSpec& spec,
                                    const AttackConfig& cfg, unsigned jobs) {
  check_config(cfg);
  const std::vector<NodeId> entrypoints = resolve_entrypoints(net, cfg);
  const AdjacencyIndex adj(net);
  const ProfileTable table = build_profile_table(net, spec);

  const uint64_t total = static_cast<uint64_t>(entrypoints.size()) * cfg.trials_per_entrypoint;

  auto run_range = [&](uint64_t begin, uint64_t end,
                       std::unordered_map<uint32_t, uint64_t>& hist) {
    WalkScratch scratch;
    for (uint64_t t = begin; t < end; ++t) {
      const NodeId entry = entrypoints[t / cfg.trials_per_entrypoint];
      const auto trial = static_cast<uint32_t>(t % cfg.trials_per_entrypoint);
      Rng rng = trial_rng(cfg.seed, entry, trial);
      const AttackResult r = walk(adj, table, entry, cfg.budget, rng, scratch);
      ++hist[r.compromised_devices];
    }
  };

  CompromiseDistribution dist;
  if (jobs <= 1 || total < 2) {
    std::unordered_map<uint32_t, uint64_t> hist;
    run_range(0, total, hist);
    dist.histogram.insert(hist.begin(), hist.end());
  } else {
    const unsigned workers = std::min<uint64_t>(jobs, total);
    std::vector<std::unordered_map<uint32_t, uint64_t>> hists(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const uint64_t begin = total * w / workers;
      const uint64_t end = total * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { run_range(begin, end, hists[w]); });
    }
    for (auto& th : pool) th.join();
    for (const auto& h : hists) {
      for (const auto& [k, v] : h) dist.histogram[k] += v;
    }
  }

  dist.n_trials = total;
  dist.device_count = static_cast<uint32_t>(device_count(net));
  dist.meta.spec_name = spec.name;
  dist.meta.network = net.meta;
  dist.meta.config = cfg;
  return dist;
}

Summary summarize(const CompromiseDistribution& dist) {
  if (dist.n_trials == 0) throw InvariantViolation("empty distribution");
  Summary s;
  s.n_trials = dist.n_trials;
  s.device_count = dist.device_count;
  s.min = dist.histogram.begin()->first;
  s.max = dist.histogram.rbegin()->first;

  double weighted = 0.0;
  for (const auto& [k, c] : dist.histogram) weighted += static_cast<double>(k) * c;
  s.mean = weighted / static_cast<double>(dist.n_trials);

  // Order statistic at 0-based rank r.
  auto at_rank = [&dist](uint64_t r) -> uint32_t {
    uint64_t seen = 0;
    for (const auto& [k, c] : dist.histogram) {
      seen += c;
      if (seen > r) return k;
    }
    return dist.histogram.rbegin()->first;
  };
  const uint64_t n = dist.n_trials;
  if (n % 2 == 1) {
    s.median = at_rank(n / 2);
  } else {
    s.median = 0.5 * (at_rank(n / 2 - 1) + at_rank(n / 2));
  }
  auto nearest_rank = [&](double q) -> uint32_t {
    const auto r = static_cast<uint64_t>(std::ceil(q * static_cast<double>(n)));
    return at_rank(r == 0 ? 0 : r - 1);
  };
  s.q25 = nearest_rank(0.25);
  s.q75 = nearest_rank(0.75);

  auto mass = [&dist](uint32_t k) {
    auto it = dist.histogram.find(k);
    return it == dist.histogram.end() ? uint64_t{0} : it->second;
  };
  s.frac_zero = static_cast<double>(mass(0)) / static_cast<double>(n);
  s.frac_full = static_cast<double>(mass(dist.device_count)) / static_cast<double>(n);
  return s;
}

}  // namespace commnet
