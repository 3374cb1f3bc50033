// commnet: procedural power-system communication network generator and
// Monte Carlo attack simulator.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "commnet/attack_sim.hpp"
#include "commnet/bench.hpp"
#include "commnet/errors.hpp"
#include "commnet/export_io.hpp"
#include "commnet/generator.hpp"
#include "commnet/grid_model.hpp"
#include "commnet/spec_model.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = COMMNET_VERSION;

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw commnet::Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write-then-rename so a crash never leaves a partial file behind.
void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw commnet::Error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw commnet::Error("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

struct LoadedSpec {
  commnet::NetworkSpec spec;
  std::string text;
  std::string source;  // "builtin:<name>" or "file:<path>"
};

LoadedSpec load_spec(const std::string& arg) {
  const auto& builtins = commnet::builtin_spec_texts();
  if (auto it = builtins.find(arg); it != builtins.end()) {
    return {commnet::builtin_specs().at(arg), it->second, "builtin:" + arg};
  }
  const std::string text = read_file(arg);
  return {commnet::parse_spec(text), text, "file:" + arg};
}

struct LoadedGrid {
  commnet::Grid grid;
  std::string text;
  std::string source;
};

LoadedGrid load_grid(const std::string& path) {
  const std::string text = read_file(path);
  return {commnet::parse_grid(text), text, "file:" + path};
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// Shared generation flags.
struct GenOptions {
  std::string spec_arg;
  std::string grid_path;
  uint64_t devices = 0;
  uint64_t seed = 0;
  int children = 0;
  int children_dev = -1;
  std::string sibling;
  uint32_t entrypoints = 0;
  bool flat = false;
  bool no_flat = false;

  // Which flags the user actually passed (to fall back on spec defaults).
  bool has_devices = false, has_children = false, has_children_dev = false;
  bool has_sibling = false, has_entrypoints = false, has_flat = false;
  bool has_no_flat = false;
};

void add_gen_flags(CLI::App* cmd, GenOptions& o) {
  cmd->add_option("--spec", o.spec_arg, "Builtin spec name (generic|scada|ami|wam) or path")
      ->required();
  cmd->add_option("--grid", o.grid_path, "Grid JSON path; devices are placed on its equipment");
  cmd->add_option("--devices", o.devices, "Leaf device count (ignored when --grid is given)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--children", o.children, "Average children per parent (>= 2)");
  cmd->add_option("--children-dev", o.children_dev, "Random deviation of the children count");
  cmd->add_option("--sibling", o.sibling, "Sibling wiring: none|adjacent|all");
  cmd->add_option("--entrypoints", o.entrypoints, "Number of randomly flagged entrypoints");
  cmd->add_flag("--flat", o.flat, "Single aggregator over all devices");
  cmd->add_flag("--no-flat", o.no_flat, "Force hierarchical even if the spec defaults to flat");
}

void capture_gen_presence(CLI::App* cmd, GenOptions& o) {
  o.has_devices = cmd->count("--devices") > 0;
  o.has_children = cmd->count("--children") > 0;
  o.has_children_dev = cmd->count("--children-dev") > 0;
  o.has_sibling = cmd->count("--sibling") > 0;
  o.has_entrypoints = cmd->count("--entrypoints") > 0;
  o.has_flat = cmd->count("--flat") > 0;
  o.has_no_flat = cmd->count("--no-flat") > 0;
}

commnet::GenHyperparams resolve_hyperparams(const GenOptions& o, const commnet::NetworkSpec& spec,
                                            bool grid_given) {
  commnet::GenHyperparams hp = commnet::defaults_for(spec);
  hp.seed = o.seed;
  if (o.has_devices) hp.n_devices = o.devices;
  if (!grid_given && !o.has_devices) {
    throw commnet::Error("--devices is required when no --grid is given");
  }
  if (o.has_children) hp.children_per_parent = o.children;
  if (o.has_children_dev) hp.children_deviation = o.children_dev;
  if (o.has_sibling) hp.sibling_mode = commnet::sibling_mode_from_string(o.sibling);
  if (o.has_entrypoints) hp.n_entrypoints = o.entrypoints;
  if (o.has_flat) hp.flat = true;
  if (o.has_no_flat) hp.flat = false;
  return hp;
}

ordered_json hyperparams_json(const commnet::GenHyperparams& hp) {
  ordered_json j;
  j["n_devices"] = hp.n_devices;
  j["sibling_mode"] = std::string(commnet::to_string(hp.sibling_mode));
  j["flat"] = hp.flat;
  j["children_per_parent"] = hp.children_per_parent;
  j["children_deviation"] = hp.children_deviation;
  j["n_entrypoints"] = hp.n_entrypoints;
  j["seed"] = hp.seed;
  return j;
}

ordered_json input_json(const std::string& source, const std::string& name,
                        const std::string& text) {
  ordered_json j;
  j["source"] = source;
  j["name"] = name;
  j["fnv1a64"] = hex64(fnv1a64(text));
  return j;
}

class Manifest {
 public:
  explicit Manifest(std::string command) : start_(std::chrono::steady_clock::now()) {
    doc_["manifest_version"] = 1;
    doc_["tool"] = {{"name", "commnet"}, {"version", kVersion}};
    doc_["command"] = std::move(command);
  }

  ordered_json& doc() { return doc_; }

  std::string finish(const std::vector<std::string>& outputs) {
    doc_["outputs"] = outputs;
    doc_["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return doc_.dump(2) + "\n";
  }

 private:
  ordered_json doc_;
  std::chrono::steady_clock::time_point start_;
};

fs::path ensure_out_dir(const std::string& out) {
  fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  fs::create_directories(dir);
  return dir;
}

ordered_json summary_json(const commnet::Summary& s) {
  ordered_json j;
  j["n_trials"] = s.n_trials;
  j["device_count"] = s.device_count;
  j["mean"] = s.mean;
  j["median"] = s.median;
  j["q25"] = s.q25;
  j["q75"] = s.q75;
  j["min"] = s.min;
  j["max"] = s.max;
  j["frac_zero"] = s.frac_zero;
  j["frac_full"] = s.frac_full;
  return j;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  GenOptions gen;
  std::string out;
  std::string from_manifest;
};

int cmd_generate(GenerateArgs& a, CLI::App* cmd) {
  capture_gen_presence(cmd, a.gen);

  if (!a.from_manifest.empty()) {
    // Re-run a previous generation from its manifest.
    const ordered_json m = ordered_json::parse(read_file(a.from_manifest));
    const auto& inputs = m.at("inputs");
    const std::string source = inputs.at("spec").at("source").get<std::string>();
    a.gen.spec_arg = source.substr(source.find(':') + 1);
    if (!inputs.at("grid").is_null()) {
      const std::string gsource = inputs.at("grid").at("source").get<std::string>();
      a.gen.grid_path = gsource.substr(gsource.find(':') + 1);
    }
    const auto& hp = inputs.at("hyperparams");
    a.gen.devices = hp.at("n_devices").get<uint64_t>();
    a.gen.has_devices = true;
    a.gen.seed = hp.at("seed").get<uint64_t>();
    a.gen.children = hp.at("children_per_parent").get<int>();
    a.gen.has_children = true;
    a.gen.children_dev = hp.at("children_deviation").get<int>();
    a.gen.has_children_dev = true;
    a.gen.sibling = hp.at("sibling_mode").get<std::string>();
    a.gen.has_sibling = true;
    a.gen.entrypoints = hp.at("n_entrypoints").get<uint32_t>();
    a.gen.has_entrypoints = true;
    const bool flat = hp.at("flat").get<bool>();
    a.gen.has_flat = flat;
    a.gen.has_no_flat = !flat;
  }

  Manifest manifest("generate");
  const LoadedSpec spec = load_spec(a.gen.spec_arg);
  std::optional<LoadedGrid> grid;
  if (!a.gen.grid_path.empty()) grid = load_grid(a.gen.grid_path);

  const commnet::GenHyperparams hp = resolve_hyperparams(a.gen, spec.spec, grid.has_value());

  std::vector<std::string> warnings;
  const commnet::Network net =
      commnet::generate(spec.spec, hp, grid ? &grid->grid : nullptr, &warnings);
  print_warnings(warnings);

  manifest.doc()["inputs"] = {
      {"spec", input_json(spec.source, spec.spec.name, spec.text)},
      {"grid", grid ? input_json(grid->source, grid->grid.name, grid->text) : ordered_json()},
      {"hyperparams", hyperparams_json(hp)},
  };

  const fs::path dir = ensure_out_dir(a.out);
  write_file_atomic(dir / "network.json", commnet::export_json(net));
  write_file_atomic(dir / "network.dot", commnet::export_dot(net));
  write_file_atomic(dir / "manifest.json",
                    manifest.finish({"network.json", "network.dot", "manifest.json"}));

  std::cout << "generated " << net.nodes.size() << " nodes (" << commnet::device_count(net)
            << " devices, " << commnet::aggregator_count(net) << " aggregators) -> "
            << (dir / "network.json").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// attack

struct AttackArgs {
  std::string network_path;
  std::string spec_arg;
  double budget = 0.0;
  uint32_t trials = 1000;
  bool sweep_devices = false;
  int64_t entry = -1;
  uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out;
};

double default_budget(const commnet::NetworkSpec& spec, size_t devices) {
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& c : spec.device_categories) {
    weighted += c.weight * commnet::cdf_mean(c.defense);
    total += c.weight;
  }
  const double mean_effort = total > 0 ? weighted / total : 1.0;
  return 50.0 * mean_effort * static_cast<double>(devices);
}

commnet::AttackConfig resolve_attack_config(const AttackArgs& a, const commnet::NetworkSpec& spec,
                                            const commnet::Network& net) {
  commnet::AttackConfig cfg;
  cfg.budget = a.budget > 0 ? a.budget : default_budget(spec, commnet::device_count(net));
  cfg.trials_per_entrypoint = a.trials;
  cfg.seed = a.seed;
  if (a.sweep_devices && a.entry >= 0) {
    throw commnet::Error("--sweep-devices and --entry are mutually exclusive");
  }
  if (a.sweep_devices) {
    cfg.entrypoint_mode = commnet::EntrypointMode::sweep_devices;
  } else if (a.entry >= 0) {
    cfg.entrypoint_mode = commnet::EntrypointMode::single;
    cfg.entry_node = static_cast<commnet::NodeId>(a.entry);
  } else {
    cfg.entrypoint_mode = commnet::EntrypointMode::flagged;
  }
  return cfg;
}

ordered_json attack_config_json(const commnet::AttackConfig& cfg) {
  ordered_json j;
  j["budget"] = cfg.budget;
  j["trials_per_entrypoint"] = cfg.trials_per_entrypoint;
  switch (cfg.entrypoint_mode) {
    case commnet::EntrypointMode::flagged: j["entrypoint_mode"] = "flagged"; break;
    case commnet::EntrypointMode::sweep_devices: j["entrypoint_mode"] = "sweep_devices"; break;
    case commnet::EntrypointMode::single:
      j["entrypoint_mode"] = "single";
      j["entry_node"] = cfg.entry_node;
      break;
  }
  j["seed"] = cfg.seed;
  return j;
}

int cmd_attack(AttackArgs& a) {
  Manifest manifest("attack");
  const std::string net_text = read_file(a.network_path);
  const commnet::Network net = commnet::import_json(net_text);
  const LoadedSpec spec = load_spec(a.spec_arg);

  const commnet::AttackConfig cfg = resolve_attack_config(a, spec.spec, net);
  const commnet::CompromiseDistribution dist = commnet::run_campaign(net, spec.spec, cfg, a.jobs);
  const commnet::Summary summary = commnet::summarize(dist);

  manifest.doc()["inputs"] = {
      {"network", input_json("file:" + a.network_path, net.meta.spec_name, net_text)},
      {"spec", input_json(spec.source, spec.spec.name, spec.text)},
      {"attack_config", attack_config_json(cfg)},
      {"jobs", a.jobs},
  };

  const fs::path dir = ensure_out_dir(a.out);
  write_file_atomic(dir / "distribution.csv", commnet::export_histogram_csv(dist));
  write_file_atomic(dir / "summary.json", summary_json(summary).dump(2) + "\n");
  write_file_atomic(dir / "manifest.json",
                    manifest.finish({"distribution.csv", "summary.json", "manifest.json"}));

  std::cout << "ran " << dist.n_trials << " attacks: mean " << summary.mean << " of "
            << summary.device_count << " devices compromised -> "
            << (dir / "distribution.csv").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  GenOptions gen;
  AttackArgs attack;
  std::vector<std::string> children_axis;
  std::vector<std::string> sibling_axis;
  std::string out;
};

int cmd_sweep(SweepArgs& a, CLI::App* cmd) {
  capture_gen_presence(cmd, a.gen);
  if (a.children_axis.empty() == a.sibling_axis.empty()) {
    throw commnet::Error("exactly one of --children-axis / --sibling-axis is required");
  }

  Manifest manifest("sweep");
  const LoadedSpec spec = load_spec(a.gen.spec_arg);
  std::optional<LoadedGrid> grid;
  if (!a.gen.grid_path.empty()) grid = load_grid(a.gen.grid_path);
  const commnet::GenHyperparams base = resolve_hyperparams(a.gen, spec.spec, grid.has_value());

  struct Point {
    std::string label;
    commnet::GenHyperparams hp;
  };
  std::vector<Point> points;
  if (!a.children_axis.empty()) {
    for (const auto& v : a.children_axis) {
      commnet::GenHyperparams hp = base;
      if (v == "flat") {
        hp.flat = true;
      } else {
        hp.flat = false;
        hp.children_per_parent = std::stoi(v);
      }
      points.push_back({"children_" + v, hp});
    }
  } else {
    for (const auto& v : a.sibling_axis) {
      commnet::GenHyperparams hp = base;
      hp.sibling_mode = commnet::sibling_mode_from_string(v);
      points.push_back({"sibling_" + v, hp});
    }
  }

  const fs::path dir = ensure_out_dir(a.out);
  std::string combined = "axis_value,n_trials,mean,median,q25,q75,frac_zero,frac_full\n";
  std::vector<std::string> outputs;
  ordered_json points_meta = ordered_json::array();

  for (const auto& point : points) {
    std::vector<std::string> warnings;
    const commnet::Network net =
        commnet::generate(spec.spec, point.hp, grid ? &grid->grid : nullptr, &warnings);
    print_warnings(warnings);

    const commnet::AttackConfig cfg = resolve_attack_config(a.attack, spec.spec, net);
    const commnet::CompromiseDistribution dist =
        commnet::run_campaign(net, spec.spec, cfg, a.attack.jobs);
    const commnet::Summary s = commnet::summarize(dist);

    const std::string file = "distribution_" + point.label + ".csv";
    write_file_atomic(dir / file, commnet::export_histogram_csv(dist));
    outputs.push_back(file);

    combined += point.label + "," + std::to_string(s.n_trials) + "," + std::to_string(s.mean) +
                "," + std::to_string(s.median) + "," + std::to_string(s.q25) + "," +
                std::to_string(s.q75) + "," + std::to_string(s.frac_zero) + "," +
                std::to_string(s.frac_full) + "\n";

    ordered_json pj;
    pj["label"] = point.label;
    pj["hyperparams"] = hyperparams_json(point.hp);
    pj["attack_config"] = attack_config_json(cfg);
    points_meta.push_back(std::move(pj));

    std::cout << point.label << ": mean " << s.mean << " of " << s.device_count
              << " devices over " << s.n_trials << " trials\n";
  }

  manifest.doc()["inputs"] = {
      {"spec", input_json(spec.source, spec.spec.name, spec.text)},
      {"grid", grid ? input_json(grid->source, grid->grid.name, grid->text) : ordered_json()},
      {"base_hyperparams", hyperparams_json(base)},
      {"points", points_meta},
      {"jobs", a.attack.jobs},
  };

  write_file_atomic(dir / "sweep_summary.csv", combined);
  outputs.push_back("sweep_summary.csv");
  outputs.push_back("manifest.json");
  write_file_atomic(dir / "manifest.json", manifest.finish(outputs));
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string spec_arg = "generic";
  std::vector<uint64_t> sizes;
  int reps = 3;
  std::string out;
};

int cmd_bench(BenchArgs& a) {
  Manifest manifest("bench");
  const LoadedSpec spec = load_spec(a.spec_arg);
  const commnet::BenchReport report = commnet::run_bench(spec.spec, a.sizes, a.reps);

  ordered_json fits;
  for (const auto& [name, fit] : report.fits) {
    fits[name] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
  }
  manifest.doc()["inputs"] = {
      {"spec", input_json(spec.source, spec.spec.name, spec.text)},
      {"sizes", a.sizes},
      {"repetitions", a.reps},
  };
  manifest.doc()["fits"] = fits;

  const fs::path dir = ensure_out_dir(a.out);
  write_file_atomic(dir / "bench.csv", commnet::bench_csv(report));
  ordered_json summary;
  summary["fits"] = fits;
  write_file_atomic(dir / "bench_summary.json", summary.dump(2) + "\n");
  write_file_atomic(dir / "manifest.json",
                    manifest.finish({"bench.csv", "bench_summary.json", "manifest.json"}));

  std::cout << commnet::bench_csv(report);
  for (const auto& [name, fit] : report.fits) {
    std::cout << name << ": slope " << fit.slope << " s/device, intercept " << fit.intercept
              << " s, r2 " << fit.r2 << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::string& path) {
  const std::string text = read_file(path);

  nlohmann::json probe = nlohmann::json::parse(text, nullptr, false);
  if (probe.is_discarded() || !probe.is_object()) {
    throw commnet::MalformedJson("'" + path + "' is not a JSON object");
  }

  if (probe.contains("spec_version")) {
    try {
      const commnet::NetworkSpec spec = commnet::parse_spec(text);
      for (const auto& w : commnet::validate_hardening_order(spec)) {
        std::cout << "warning: " << w << "\n";
      }
      std::cout << "spec '" << spec.name << "' is valid\n";
      return 0;
    } catch (const commnet::MalformedJson&) {
      throw;
    } catch (const commnet::Error& e) {
      std::cout << "violation: " << e.what() << "\n";
      return 1;
    }
  }
  if (probe.contains("grid_version")) {
    try {
      const commnet::Grid grid = commnet::parse_grid(text);
      std::cout << "grid '" << grid.name << "' is valid (" << grid.equipment.size()
                << " equipment items)\n";
      return 0;
    } catch (const commnet::MalformedJson&) {
      throw;
    } catch (const commnet::Error& e) {
      std::cout << "violation: " << e.what() << "\n";
      return 1;
    }
  }
  if (probe.contains("format_version")) {
    try {
      const commnet::Network net = commnet::import_json(text);
      std::cout << "network is valid (" << net.nodes.size() << " nodes, " << net.edges.size()
                << " edges)\n";
      return 0;
    } catch (const commnet::InvalidNetwork& e) {
      for (const auto& v : e.violations) std::cout << "violation: " << v << "\n";
      return 1;
    } catch (const commnet::MalformedJson&) {
      throw;
    } catch (const commnet::Error& e) {
      std::cout << "violation: " << e.what() << "\n";
      return 1;
    }
  }
  throw commnet::MalformedJson(
      "'" + path + "' has none of spec_version / grid_version / format_version");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procedural power-system communication network generator and attack simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenerateArgs gen_args;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Generate a network from a spec");
  add_gen_flags(gen_cmd, gen_args.gen);
  gen_cmd->add_option("--out", gen_args.out, "Output directory")->envname("COMMNET_OUT");
  gen_cmd->add_option("--from-manifest", gen_args.from_manifest,
                      "Reproduce a previous run from its manifest.json");
  gen_cmd->get_option("--spec")->required(false);  // optional when --from-manifest is given

  AttackArgs attack_args;
  CLI::App* attack_cmd = app.add_subcommand("attack", "Run a Monte Carlo attack campaign");
  attack_cmd->add_option("--network", attack_args.network_path, "network.json path")->required();
  attack_cmd->add_option("--spec", attack_args.spec_arg, "Spec with the defense profiles")
      ->required();
  attack_cmd->add_option("--budget", attack_args.budget,
                         "Attacker effort budget (default: 50 x mean device effort x devices)");
  attack_cmd->add_option("--trials", attack_args.trials, "Trials per entrypoint");
  attack_cmd->add_flag("--sweep-devices", attack_args.sweep_devices,
                       "Use every device as an entrypoint");
  attack_cmd->add_option("--entry", attack_args.entry, "Single entry node id");
  attack_cmd->add_option("--seed", attack_args.seed, "Campaign seed");
  attack_cmd->add_option("--jobs", attack_args.jobs, "Parallel workers (result is identical)");
  attack_cmd->add_option("--out", attack_args.out, "Output directory")->envname("COMMNET_OUT");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Regenerate + attack across one hyperparameter axis");
  add_gen_flags(sweep_cmd, sweep_args.gen);
  sweep_cmd->add_option("--children-axis", sweep_args.children_axis,
                        "Children-per-parent values, e.g. 2,4,8,flat")
      ->delimiter(',');
  sweep_cmd->add_option("--sibling-axis", sweep_args.sibling_axis,
                        "Sibling modes, e.g. none,adjacent,all")
      ->delimiter(',');
  sweep_cmd->add_option("--budget", sweep_args.attack.budget, "Attacker effort budget");
  sweep_cmd->add_option("--trials", sweep_args.attack.trials, "Trials per entrypoint");
  sweep_cmd->add_flag("--sweep-devices", sweep_args.attack.sweep_devices,
                      "Use every device as an entrypoint");
  sweep_cmd->add_option("--entry", sweep_args.attack.entry, "Single entry node id");
  sweep_cmd->add_option("--attack-seed", sweep_args.attack.seed, "Campaign seed");
  sweep_cmd->add_option("--jobs", sweep_args.attack.jobs, "Parallel workers");
  sweep_cmd->add_option("--out", sweep_args.out, "Output directory")->envname("COMMNET_OUT");

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Time generation per size (single-threaded; sibling wiring off)");
  bench_cmd->add_option("--spec", bench_args.spec_arg, "Spec (default generic)");
  bench_cmd->add_option("--sizes", bench_args.sizes, "Device counts, e.g. 10000,100000,1000000")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--reps", bench_args.reps, "Repetitions per size");
  bench_cmd->add_option("--out", bench_args.out, "Output directory")->envname("COMMNET_OUT");

  std::string validate_path;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Validate a spec, grid or network document");
  validate_cmd->add_option("path", validate_path, "Document path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*gen_cmd) {
      if (gen_args.gen.spec_arg.empty() && gen_args.from_manifest.empty()) {
        throw commnet::Error("generate needs --spec (or --from-manifest)");
      }
      return cmd_generate(gen_args, gen_cmd);
    }
    if (*attack_cmd) return cmd_attack(attack_args);
    if (*sweep_cmd) return cmd_sweep(sweep_args, sweep_cmd);
    if (*bench_cmd) return cmd_bench(bench_args);
    if (*validate_cmd) return cmd_validate(validate_path);
  } catch (const commnet::InvalidNetwork& e) {
    for (const auto& v : e.violations) std::cerr << "error: " << v << "\n";
    return 2;
  } catch (const commnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
