#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "commnet/attack_sim.hpp"
#include "commnet/errors.hpp"
#include "commnet/generator.hpp"

using namespace commnet;

namespace {

// Spec with pinned success probabilities and deterministic single-point
// effort CDFs (device 5, aggregator 7, root 9 effort units).
NetworkSpec pinned_spec(double device_success, double agg_success, double root_success) {
  const std::string text = R"({
    "spec_version": 1, "name": "pinned",
    "device": { "categories": [{ "id": "dev", "defense": { "effort_cdf": [[5.0,1.0]], "success_prob": )" +
                           std::to_string(device_success) + R"( } }] },
    "aggregator": { "categories": [{ "id": "agg", "defense": { "effort_cdf": [[7.0,1.0]], "success_prob": )" +
                           std::to_string(agg_success) + R"( } }] },
    "root": { "id": "cc", "defense": { "effort_cdf": [[9.0,1.0]], "success_prob": )" +
                           std::to_string(root_success) + R"( } }
  })";
  return parse_spec(text);
}

// Star: one aggregator over `devices` leaves, sibling mode none.
Network star_network(const NetworkSpec& spec, uint64_t devices) {
  GenHyperparams hp;
  hp.n_devices = devices;
  hp.flat = true;
  hp.sibling_mode = SiblingMode::none;
  hp.n_entrypoints = 1;
  hp.seed = 1;
  return generate(spec, hp);
}

}  // namespace

TEST_CASE("effort_quantile inverts the piecewise-linear CDF") {
  const DefenseProfile uniform{{{0.0, 0.0}, {10.0, 1.0}}, 0.5};
  CHECK(effort_quantile(uniform, 0.5) == doctest::Approx(5.0));
  CHECK(effort_quantile(uniform, 0.0) == doctest::Approx(0.0));
  CHECK(effort_quantile(uniform, 1.0) == doctest::Approx(10.0));

  const DefenseProfile two_seg{{{0.0, 0.0}, {4.0, 0.5}, {20.0, 1.0}}, 0.5};
  CHECK(effort_quantile(two_seg, 0.75) == doctest::Approx(12.0));

  // atom at the first point
  const DefenseProfile atom{{{3.0, 0.25}, {5.0, 1.0}}, 0.5};
  CHECK(effort_quantile(atom, 0.1) == doctest::Approx(3.0));
  CHECK(effort_quantile(atom, 0.25) == doctest::Approx(3.0));
}

TEST_CASE("sample_effort matches the CDF mean and quantiles") {
  const DefenseProfile uniform{{{0.0, 0.0}, {10.0, 1.0}}, 0.5};
  Rng rng(101);
  const int n = 100000;
  std::vector<double> samples(n);
  double sum = 0.0;
  for (auto& s : samples) {
    s = sample_effort(rng, uniform);
    sum += s;
  }
  CHECK(std::abs(sum / n - 5.0) < 0.05);

  std::sort(samples.begin(), samples.end());
  for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double empirical = samples[static_cast<size_t>(q * n)];
    CHECK(std::abs(empirical - 10.0 * q) < 0.1);  // hand inversion of the uniform CDF
  }
}

TEST_CASE("nothing can fail: full compromise of every node") {
  const NetworkSpec spec = pinned_spec(1.0, 1.0, 1.0);
  const Network net = star_network(spec, 5);
  AttackConfig cfg;
  cfg.budget = 1e12;
  Rng rng(5);
  const AttackResult r = run_attack(net, spec, 0, cfg, rng);
  CHECK(r.terminal == Terminal::full_compromise);
  CHECK(r.compromised_devices == device_count(net));
  CHECK(r.compromised_total == net.nodes.size());
}

TEST_CASE("entry failure spends capped effort and compromises nothing") {
  const NetworkSpec spec = pinned_spec(0.0, 1.0, 1.0);
  const Network net = star_network(spec, 5);
  AttackConfig cfg;
  cfg.budget = 3.0;  // below the device effort of 5
  Rng rng(5);
  const AttackResult r = run_attack(net, spec, 0, cfg, rng);
  CHECK(r.terminal == Terminal::entry_failed);
  CHECK(r.compromised_devices == 0);
  CHECK(r.compromised_total == 0);
  CHECK(r.effort_spent == doctest::Approx(3.0));  // min(sample, budget)
}

TEST_CASE("bottleneck: an unfailable entry behind a dead aggregator") {
  const NetworkSpec spec = pinned_spec(1.0, 0.0, 1.0);
  const Network net = star_network(spec, 5);
  AttackConfig cfg;
  cfg.budget = 1e9;
  Rng rng(5);
  const AttackResult r = run_attack(net, spec, 0, cfg, rng);
  CHECK(r.terminal == Terminal::dead_end);
  CHECK(r.compromised_devices == 1);  // only the entry; the aggregator gates the rest
  CHECK(r.compromised_total == 1);
  CHECK(r.effort_spent == doctest::Approx(5.0 + 7.0));  // entry + the failed aggregator attempt
}

TEST_CASE("effort conservation with deterministic efforts") {
  const NetworkSpec spec = pinned_spec(1.0, 1.0, 1.0);
  const uint64_t devices = 6;
  const Network net = star_network(spec, devices);
  const double full_cost = 5.0 * devices + 7.0 + 9.0;

  AttackConfig cfg;
  cfg.budget = full_cost;
  Rng rng(9);
  const AttackResult r = run_attack(net, spec, 0, cfg, rng);
  CHECK(r.terminal == Terminal::full_compromise);
  CHECK(r.effort_spent == doctest::Approx(full_cost));

  // one effort unit short: the last attempt is abandoned and effort capped
  cfg.budget = full_cost - 1.0;
  Rng rng2(9);
  const AttackResult r2 = run_attack(net, spec, 0, cfg, rng2);
  CHECK(r2.terminal == Terminal::budget_exhausted);
  CHECK(r2.compromised_total == net.nodes.size() - 1);
  CHECK(r2.effort_spent == doctest::Approx(cfg.budget));
}

TEST_CASE("budget monotonicity: a larger budget never compromises less") {
  const NetworkSpec& spec = builtin_specs().at("generic");
  GenHyperparams hp = defaults_for(spec);
  hp.n_devices = 24;
  hp.seed = 33;
  const Network net = generate(spec, hp);

  for (uint64_t trial = 0; trial < 100; ++trial) {
    AttackConfig cfg;
    cfg.budget = 200.0;
    Rng a(derive_seed(4242, trial));
    const AttackResult small = run_attack(net, spec, 0, cfg, a);
    cfg.budget = 400.0;
    Rng b(derive_seed(4242, trial));
    const AttackResult big = run_attack(net, spec, 0, cfg, b);
    CHECK(small.compromised_devices <= big.compromised_devices);
    CHECK(small.compromised_total <= big.compromised_total);
  }
}

TEST_CASE("unknown entry node") {
  const NetworkSpec spec = pinned_spec(1.0, 1.0, 1.0);
  const Network net = star_network(spec, 3);
  AttackConfig cfg;
  cfg.budget = 10.0;
  Rng rng(1);
  CHECK_THROWS_AS(run_attack(net, spec, 999, cfg, rng), UnknownNode);
}

TEST_CASE("a spec without the network's categories is rejected") {
  const NetworkSpec spec = pinned_spec(1.0, 1.0, 1.0);
  const Network net = star_network(spec, 3);
  const NetworkSpec& other = builtin_specs().at("wam");
  AttackConfig cfg;
  cfg.budget = 10.0;
  Rng rng(1);
  CHECK_THROWS_AS(run_attack(net, other, 0, cfg, rng), UnknownCategory);
}

TEST_CASE("campaign: device sweep multiplies entrypoints by trials") {
  const NetworkSpec spec = pinned_spec(0.9, 0.5, 0.1);
  const Network net = star_network(spec, 6);
  AttackConfig cfg;
  cfg.budget = 1000.0;
  cfg.trials_per_entrypoint = 10;
  cfg.entrypoint_mode = EntrypointMode::sweep_devices;
  const CompromiseDistribution dist = run_campaign(net, spec, cfg);
  CHECK(dist.n_trials == 60);
  uint64_t total = 0;
  for (const auto& [k, c] : dist.histogram) total += c;
  CHECK(total == dist.n_trials);
}

TEST_CASE("campaign: single entrypoint, single trial") {
  const NetworkSpec spec = pinned_spec(1.0, 1.0, 1.0);
  const Network net = star_network(spec, 4);
  AttackConfig cfg;
  cfg.budget = 1e9;
  cfg.trials_per_entrypoint = 1;
  cfg.entrypoint_mode = EntrypointMode::single;
  cfg.entry_node = 0;
  const CompromiseDistribution dist = run_campaign(net, spec, cfg);
  CHECK(dist.n_trials == 1);
  REQUIRE(dist.histogram.size() == 1);
  CHECK(dist.histogram.begin()->first == 4);
  CHECK(dist.histogram.begin()->second == 1);
}

TEST_CASE("campaign: flagged mode requires flags") {
  const NetworkSpec spec = pinned_spec(1.0, 1.0, 1.0);
  GenHyperparams hp;
  hp.n_devices = 4;
  hp.n_entrypoints = 0;
  hp.sibling_mode = SiblingMode::none;
  const Network net = generate(spec, hp);
  AttackConfig cfg;
  cfg.budget = 10.0;
  CHECK_THROWS_AS(run_campaign(net, spec, cfg), NoEntrypoints);
}

TEST_CASE("campaigns are deterministic and schedule-independent") {
  const NetworkSpec& spec = builtin_specs().at("generic");
  GenHyperparams hp = defaults_for(spec);
  hp.n_devices = 20;
  hp.seed = 7;
  const Network net = generate(spec, hp);

  AttackConfig cfg;
  cfg.budget = 2000.0;
  cfg.trials_per_entrypoint = 50;
  cfg.entrypoint_mode = EntrypointMode::sweep_devices;
  cfg.seed = 99;

  const CompromiseDistribution a = run_campaign(net, spec, cfg, 1);
  const CompromiseDistribution b = run_campaign(net, spec, cfg, 1);
  CHECK(a.histogram == b.histogram);

  const CompromiseDistribution par = run_campaign(net, spec, cfg, 4);
  CHECK(par.histogram == a.histogram);
}

TEST_CASE("summarize: exact statistics of small histograms") {
  CompromiseDistribution dist;
  dist.histogram = {{0, 2}, {4, 2}};
  dist.n_trials = 4;
  dist.device_count = 4;
  const Summary s = summarize(dist);
  CHECK(s.mean == doctest::Approx(2.0));
  CHECK(s.median == doctest::Approx(2.0));  // midpoint of 0 and 4
  CHECK(s.frac_zero == doctest::Approx(0.5));
  CHECK(s.frac_full == doctest::Approx(0.5));
  CHECK(s.min == 0);
  CHECK(s.max == 4);

  CompromiseDistribution dist2;
  dist2.histogram = {{0, 1}, {1, 1}, {2, 2}};
  dist2.n_trials = 4;
  dist2.device_count = 2;
  const Summary s2 = summarize(dist2);
  CHECK(s2.median == doctest::Approx(1.5));
  CHECK(s2.mean == doctest::Approx(1.25));

  CompromiseDistribution all_full;
  all_full.histogram = {{7, 10}};
  all_full.n_trials = 10;
  all_full.device_count = 7;
  CHECK(summarize(all_full).mean == doctest::Approx(7.0));
  CHECK(summarize(all_full).frac_full == doctest::Approx(1.0));
}

TEST_CASE("invalid configs are rejected") {
  const NetworkSpec spec = pinned_spec(1.0, 1.0, 1.0);
  const Network net = star_network(spec, 3);
  AttackConfig cfg;
  cfg.budget = 0.0;
  CHECK_THROWS_AS(run_campaign(net, spec, cfg), InvariantViolation);
  cfg.budget = 1.0;
  cfg.trials_per_entrypoint = 0;
  CHECK_THROWS_AS(run_campaign(net, spec, cfg), InvariantViolation);
}
