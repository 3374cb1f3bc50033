#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "commnet/topology.hpp"

namespace commnet {

enum class EntrypointMode { flagged, sweep_devices, single };

struct AttackConfig {
  double budget = 0.0;  // effort units; must be > 0
  uint32_t trials_per_entrypoint = 1;
  EntrypointMode entrypoint_mode = EntrypointMode::flagged;
  NodeId entry_node = 0;  // used by EntrypointMode::single
  uint64_t seed = 0;
  friend bool operator==(const AttackConfig&, const AttackConfig&) = default;
};

enum class Terminal { full_compromise, budget_exhausted, dead_end, entry_failed };
std::string_view to_string(Terminal t);

struct AttackResult {
  NodeId entrypoint = 0;
  uint32_t compromised_devices = 0;
  uint32_t compromised_total = 0;
  double effort_spent = 0.0;
  Terminal terminal = Terminal::dead_end;
};

struct CampaignMeta {
  std::string spec_name;  // spec supplying the defense profiles
  NetworkMeta network;
  AttackConfig config;
  friend bool operator==(const CampaignMeta&, const CampaignMeta&) = default;
};

// Histogram over trials of how many devices each attack compromised.
struct CompromiseDistribution {
  std::map<uint32_t, uint64_t> histogram;  // compromised device count -> trials
  uint64_t n_trials = 0;
  uint32_t device_count = 0;
  CampaignMeta meta;
};

// Inverse-transform of the piecewise-linear effort CDF at probability u.
double effort_quantile(const DefenseProfile& profile, double u);
double sample_effort(Rng& rng, const DefenseProfile& profile);

// One randomized attack from `entry`.
//
// The entry is attempted first: its effort is always spent (capped at the
// budget) and a failed entry terminates with entry_failed. From then on the
// attacker keeps a frontier of every node adjacent to the compromised set
// (both edge kinds) that is neither compromised nor previously failed, picks
// a frontier node uniformly, spends a sampled effort and succeeds with the
// node's category success probability. Failed nodes are never retried. The
// walk ends when all nodes are compromised (full_compromise), the frontier
// empties (dead_end), or an attempt would push cumulative effort past the
// budget (budget_exhausted; the attempt is abandoned and effort is capped at
// the budget, so raising the budget only ever extends the same walk).
AttackResult run_attack(const Network& net, const NetworkSpec& spec, NodeId entry,
                        const AttackConfig& cfg, Rng& rng);

// Monte Carlo campaign: trials_per_entrypoint attacks per resolved
// entrypoint, each on an independent substream derived from
// (cfg.seed, entrypoint id, trial index). The histogram is therefore
// independent of execution order; `jobs` > 1 runs trials in parallel with a
// result identical to the sequential run.
CompromiseDistribution run_campaign(const Network& net, const NetworkSpec& spec,
                                    const AttackConfig& cfg, unsigned jobs = 1);

struct Summary {
  uint64_t n_trials = 0;
  uint32_t device_count = 0;
  double mean = 0.0;
  double median = 0.0;   // midpoint of the two middle order statistics for even n
  double q25 = 0.0;      // nearest-rank
  double q75 = 0.0;
  uint32_t min = 0;
  uint32_t max = 0;
  double frac_zero = 0.0;  // trials with no device compromised
  double frac_full = 0.0;  // trials compromising every device
};

Summary summarize(const CompromiseDistribution& dist);

}  // namespace commnet
