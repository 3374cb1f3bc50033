#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "commnet/rng.hpp"

namespace commnet {

enum class NodeClass { device, aggregator, root };
enum class SiblingMode { none, adjacent, all };
enum class EquipmentKind { bus, line, transformer, load, static_generator, external_grid };
enum class PredicateOp { lt, le, gt, ge, eq };

std::string_view to_string(NodeClass c);
std::string_view to_string(SiblingMode m);
std::string_view to_string(EquipmentKind k);
std::string_view to_string(PredicateOp op);
NodeClass node_class_from_string(std::string_view s);
SiblingMode sibling_mode_from_string(std::string_view s);
EquipmentKind equipment_kind_from_string(std::string_view s);
PredicateOp predicate_op_from_string(std::string_view s);

// One point of a piecewise-linear effort CDF: P(effort <= `effort`) = cum_prob.
struct CdfPoint {
  double effort = 0.0;
  double cum_prob = 0.0;
  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

// Defensive strength of one component category: the cumulative distribution
// of the effort an attacker spends on an attempt, and the probability that
// the attempt succeeds. Points must be strictly increasing in effort and
// nondecreasing in cum_prob, ending at cum_prob 1.0. If the first cum_prob
// is positive, that mass sits as an atom at the first effort value.
struct DefenseProfile {
  std::vector<CdfPoint> effort_cdf;
  double success_prob = 0.0;
  friend bool operator==(const DefenseProfile&, const DefenseProfile&) = default;
};

// Expected effort of the piecewise-linear CDF (atom at the first point plus
// uniform mass on each segment).
double cdf_mean(const DefenseProfile& profile);

struct Predicate {
  std::string attribute;
  PredicateOp op = PredicateOp::ge;
  double value = 0.0;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// Admits equipment of one kind, optionally narrowed by attribute conditions
// (all must hold).
struct EquipmentFilter {
  EquipmentKind equipment_kind = EquipmentKind::bus;
  std::vector<Predicate> predicates;
  friend bool operator==(const EquipmentFilter&, const EquipmentFilter&) = default;
};

// Splits an aggregated equipment item into ceil(attribute / unit_capacity)
// devices (rounding is always ceil, minimum 1).
struct SplitRule {
  std::string attribute;
  double unit_capacity = 1.0;
  friend bool operator==(const SplitRule&, const SplitRule&) = default;
};

struct Category {
  std::string id;
  NodeClass node_class = NodeClass::device;
  std::string label;
  double weight = 1.0;
  DefenseProfile defense;
  std::vector<EquipmentFilter> compatibility;  // empty = any equipment
  std::optional<SplitRule> split_rule;
  friend bool operator==(const Category&, const Category&) = default;
};

// A parsed network-type specification: the categories of devices, aggregators
// and the root, their defenses, and how devices are placed on grid equipment.
struct NetworkSpec {
  std::string name;
  std::vector<Category> device_categories;
  std::vector<Category> aggregator_categories;
  Category root_category;
  SiblingMode default_sibling_mode = SiblingMode::all;
  bool default_flat = false;

  const Category* find_category(std::string_view id) const;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

// Parses a specification document (strict: unknown keys are rejected with
// their path). Shape errors throw SchemaViolation, value errors such as a
// non-monotone CDF throw InvariantViolation.
NetworkSpec parse_spec(const std::string& text);

// Canonical serialization; parse_spec(serialize_spec(s)) == s.
std::string serialize_spec(const NetworkSpec& spec);

// Advisory check of the typical hardening order: mean effort
// root >= aggregator >= device and success probability root <= aggregator
// <= device. Returns one warning per violating category pair.
std::vector<std::string> validate_hardening_order(const NetworkSpec& spec);

// Shipped specifications: generic, scada, ami, wam.
const std::map<std::string, NetworkSpec>& builtin_specs();
const std::map<std::string, std::string>& builtin_spec_texts();

// Draws a category with probability weight / sum(weights), optionally
// restricted to the `eligible` indices (weights renormalize over the
// restriction). Throws NoEligibleCategory if nothing has positive weight.
const Category& sample_category(Rng& rng, const std::vector<Category>& categories,
                                const std::vector<size_t>* eligible = nullptr);

}  // namespace commnet
