#include "commnet/spec_model.hpp"

#include <algorithm>
#include <set>

#include "commnet/errors.hpp"
#include "json_util.hpp"

namespace commnet {

using detail::child_path;
using detail::index_path;
using detail::json;
using detail::ObjectReader;
using detail::ojson;

std::string_view to_string(NodeClass c) {
  switch (c) {
    case NodeClass::device: return "device";
    case NodeClass::aggregator: return "aggregator";
    case NodeClass::root: return "root";
  }
  return "?";
}

std::string_view to_string(SiblingMode m) {
  switch (m) {
    case SiblingMode::none: return "none";
    case SiblingMode::adjacent: return "adjacent";
    case SiblingMode::all: return "all";
  }
  return "?";
}

std::string_view to_string(EquipmentKind k) {
  switch (k) {
    case EquipmentKind::bus: return "bus";
    case EquipmentKind::line: return "line";
    case EquipmentKind::transformer: return "transformer";
    case EquipmentKind::load: return "load";
    case EquipmentKind::static_generator: return "static_generator";
    case EquipmentKind::external_grid: return "external_grid";
  }
  return "?";
}

std::string_view to_string(PredicateOp op) {
  switch (op) {
    case PredicateOp::lt: return "lt";
    case PredicateOp::le: return "le";
    case PredicateOp::gt: return "gt";
    case PredicateOp::ge: return "ge";
    case PredicateOp::eq: return "eq";
  }
  return "?";
}

namespace {

template <typename Enum, size_t N>
Enum enum_from_string(std::string_view s, const std::array<Enum, N>& values,
                      const char* what) {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  throw SchemaViolation("", std::string("unknown ") + what + " '" + std::string(s) + "'");
}

}  // namespace

NodeClass node_class_from_string(std::string_view s) {
  return enum_from_string(
      s, std::array{NodeClass::device, NodeClass::aggregator, NodeClass::root},
      "node class");
}

SiblingMode sibling_mode_from_string(std::string_view s) {
  return enum_from_string(
      s, std::array{SiblingMode::none, SiblingMode::adjacent, SiblingMode::all},
      "sibling mode");
}

EquipmentKind equipment_kind_from_string(std::string_view s) {
  return enum_from_string(
      s,
      std::array{EquipmentKind::bus, EquipmentKind::line, EquipmentKind::transformer,
                 EquipmentKind::load, EquipmentKind::static_generator,
                 EquipmentKind::external_grid},
      "equipment kind");
}

PredicateOp predicate_op_from_string(std::string_view s) {
  return enum_from_string(s,
                          std::array{PredicateOp::lt, PredicateOp::le, PredicateOp::gt,
                                     PredicateOp::ge, PredicateOp::eq},
                          "predicate op");
}

double cdf_mean(const DefenseProfile& profile) {
  const auto& pts = profile.effort_cdf;
  double mean = pts.front().effort * pts.front().cum_prob;
  for (size_t i = 1; i < pts.size(); ++i) {
    mean += (pts[i].cum_prob - pts[i - 1].cum_prob) * 0.5 *
            (pts[i].effort + pts[i - 1].effort);
  }
  return mean;
}

const Category* NetworkSpec::find_category(std::string_view id) const {
  for (const auto& c : device_categories) {
    if (c.id == id) return &c;
  }
  for (const auto& c : aggregator_categories) {
    if (c.id == id) return &c;
  }
  if (root_category.id == id) return &root_category;
  return nullptr;
}

namespace {

DefenseProfile parse_defense(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  DefenseProfile profile;

  const json& cdf = r.require_array("effort_cdf");
  if (cdf.empty()) throw InvariantViolation(path + ".effort_cdf: must have at least one point");
  for (size_t i = 0; i < cdf.size(); ++i) {
    const json& pt = cdf[i];
    const std::string ppath = index_path(path + ".effort_cdf", i);
    if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
      throw SchemaViolation(ppath, "expected an [effort, cum_prob] number pair");
    }
    profile.effort_cdf.push_back({pt[0].get<double>(), pt[1].get<double>()});
  }

  const auto& pts = profile.effort_cdf;
  for (size_t i = 0; i < pts.size(); ++i) {
    const std::string ppath = index_path(path + ".effort_cdf", i);
    if (pts[i].effort < 0) throw InvariantViolation(ppath + ": effort must be non-negative");
    if (pts[i].cum_prob < 0 || pts[i].cum_prob > 1) {
      throw InvariantViolation(ppath + ": cum_prob must be in [0, 1]");
    }
    if (i > 0) {
      if (pts[i].effort <= pts[i - 1].effort) {
        throw InvariantViolation(ppath + ": efforts must be strictly increasing");
      }
      if (pts[i].cum_prob < pts[i - 1].cum_prob) {
        throw InvariantViolation(ppath + ": cum_prob must be nondecreasing");
      }
    }
  }
  if (pts.back().cum_prob != 1.0) {
    throw InvariantViolation(path + ".effort_cdf: last cum_prob must be 1.0");
  }

  profile.success_prob = r.require_number("success_prob");
  if (profile.success_prob < 0 || profile.success_prob > 1) {
    throw InvariantViolation(path + ".success_prob: must be in [0, 1]");
  }
  r.done();
  return profile;
}

Predicate parse_predicate(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  Predicate p;
  p.attribute = r.require_string("attribute");
  try {
    p.op = predicate_op_from_string(r.require_string("op"));
  } catch (const SchemaViolation& e) {
    throw SchemaViolation(child_path(path, "op"), e.reason);
  }
  p.value = r.require_number("value");
  r.done();
  return p;
}

EquipmentFilter parse_filter(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  EquipmentFilter f;
  try {
    f.equipment_kind = equipment_kind_from_string(r.require_string("equipment"));
  } catch (const SchemaViolation& e) {
    throw SchemaViolation(child_path(path, "equipment"), e.reason);
  }
  if (const json* conds = r.optional("conditions")) {
    if (!conds->is_array()) throw SchemaViolation(child_path(path, "conditions"), "expected an array");
    for (size_t i = 0; i < conds->size(); ++i) {
      f.predicates.push_back(parse_predicate((*conds)[i], index_path(child_path(path, "conditions"), i)));
    }
  }
  r.done();
  return f;
}

Category parse_category(const json& j, NodeClass cls, const std::string& path) {
  ObjectReader r(j, path);
  Category cat;
  cat.node_class = cls;
  cat.id = r.require_string("id");
  if (cat.id.empty()) throw InvariantViolation(path + ".id: must not be empty");
  if (const json* label = r.optional("label")) {
    if (!label->is_string()) throw SchemaViolation(child_path(path, "label"), "expected a string");
    cat.label = label->get<std::string>();
  } else {
    cat.label = cat.id;
  }
  if (const json* w = r.optional("weight")) {
    if (!w->is_number()) throw SchemaViolation(child_path(path, "weight"), "expected a number");
    cat.weight = w->get<double>();
    if (cat.weight < 0) throw InvariantViolation(path + ".weight: must be non-negative");
  }
  cat.defense = parse_defense(r.require("defense"), child_path(path, "defense"));

  if (const json* compat = r.optional("compatibility")) {
    if (cls != NodeClass::device) {
      throw SchemaViolation(child_path(path, "compatibility"),
                            "only device categories may set compatibility");
    }
    if (!compat->is_array() || compat->empty()) {
      throw SchemaViolation(child_path(path, "compatibility"), "expected a non-empty array");
    }
    for (size_t i = 0; i < compat->size(); ++i) {
      cat.compatibility.push_back(
          parse_filter((*compat)[i], index_path(child_path(path, "compatibility"), i)));
    }
  }
  if (const json* split = r.optional("split")) {
    if (cls != NodeClass::device) {
      throw SchemaViolation(child_path(path, "split"), "only device categories may set a split rule");
    }
    ObjectReader sr(*split, child_path(path, "split"));
    SplitRule rule;
    rule.attribute = sr.require_string("attribute");
    rule.unit_capacity = sr.require_number("unit_capacity");
    sr.done();
    if (rule.unit_capacity <= 0) {
      throw InvariantViolation(path + ".split.unit_capacity: must be positive");
    }
    cat.split_rule = rule;
  }
  r.done();
  return cat;
}

std::vector<Category> parse_category_list(const json& j, NodeClass cls, const std::string& path) {
  ObjectReader r(j, path);
  const json& arr = r.require_array("categories");
  r.done();
  if (arr.empty()) {
    throw InvariantViolation(path + ".categories: at least one category required");
  }
  std::vector<Category> out;
  out.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    out.push_back(parse_category(arr[i], cls, index_path(child_path(path, "categories"), i)));
  }
  return out;
}

void check_positive_weight(const std::vector<Category>& cats, const char* what) {
  bool any = std::any_of(cats.begin(), cats.end(), [](const Category& c) { return c.weight > 0; });
  if (!any) {
    throw InvariantViolation(std::string("at least one ") + what +
                             " category must have positive weight");
  }
}

}  // namespace

NetworkSpec parse_spec(const std::string& text) {
  json j = detail::parse_document(text);
  ObjectReader r(j, "");

  if (r.require_uint("spec_version") != 1) {
    throw SchemaViolation("spec_version", "unsupported version (expected 1)");
  }

  NetworkSpec spec;
  spec.name = r.require_string("name");

  if (const json* defaults = r.optional("defaults")) {
    ObjectReader dr(*defaults, "defaults");
    if (dr.has("sibling_mode")) {
      try {
        spec.default_sibling_mode = sibling_mode_from_string(dr.require_string("sibling_mode"));
      } catch (const SchemaViolation& e) {
        throw SchemaViolation("defaults.sibling_mode", e.reason);
      }
    }
    if (dr.has("flat")) spec.default_flat = dr.require_bool("flat");
    dr.done();
  }

  spec.device_categories = parse_category_list(r.require("device"), NodeClass::device, "device");
  spec.aggregator_categories =
      parse_category_list(r.require("aggregator"), NodeClass::aggregator, "aggregator");
  spec.root_category = parse_category(r.require("root"), NodeClass::root, "root");
  r.done();

  std::set<std::string> ids;
  auto check_unique = [&ids](const Category& c) {
    if (!ids.insert(c.id).second) {
      throw InvariantViolation("duplicate category id '" + c.id + "'");
    }
  };
  for (const auto& c : spec.device_categories) check_unique(c);
  for (const auto& c : spec.aggregator_categories) check_unique(c);
  check_unique(spec.root_category);

  check_positive_weight(spec.device_categories, "device");
  check_positive_weight(spec.aggregator_categories, "aggregator");

  return spec;
}

namespace {

ojson defense_to_json(const DefenseProfile& d) {
  ojson out;
  ojson cdf = ojson::array();
  for (const auto& pt : d.effort_cdf) cdf.push_back({pt.effort, pt.cum_prob});
  out["effort_cdf"] = std::move(cdf);
  out["success_prob"] = d.success_prob;
  return out;
}

ojson category_to_json(const Category& c) {
  ojson out;
  out["id"] = c.id;
  out["label"] = c.label;
  out["weight"] = c.weight;
  out["defense"] = defense_to_json(c.defense);
  if (!c.compatibility.empty()) {
    ojson filters = ojson::array();
    for (const auto& f : c.compatibility) {
      ojson fj;
      fj["equipment"] = std::string(to_string(f.equipment_kind));
      if (!f.predicates.empty()) {
        ojson conds = ojson::array();
        for (const auto& p : f.predicates) {
          ojson pj;
          pj["attribute"] = p.attribute;
          pj["op"] = std::string(to_string(p.op));
          pj["value"] = p.value;
          conds.push_back(std::move(pj));
        }
        fj["conditions"] = std::move(conds);
      }
      filters.push_back(std::move(fj));
    }
    out["compatibility"] = std::move(filters);
  }
  if (c.split_rule) {
    ojson s;
    s["attribute"] = c.split_rule->attribute;
    s["unit_capacity"] = c.split_rule->unit_capacity;
    out["split"] = std::move(s);
  }
  return out;
}

}  // namespace

std::string serialize_spec(const NetworkSpec& spec) {
  ojson doc;
  doc["spec_version"] = 1;
  doc["name"] = spec.name;
  doc["defaults"] = {{"sibling_mode", std::string(to_string(spec.default_sibling_mode))},
                     {"flat", spec.default_flat}};
  ojson devices = ojson::array();
  for (const auto& c : spec.device_categories) devices.push_back(category_to_json(c));
  doc["device"] = {{"categories", std::move(devices)}};
  ojson aggs = ojson::array();
  for (const auto& c : spec.aggregator_categories) aggs.push_back(category_to_json(c));
  doc["aggregator"] = {{"categories", std::move(aggs)}};
  doc["root"] = category_to_json(spec.root_category);
  return doc.dump(2) + "\n";
}

std::vector<std::string> validate_hardening_order(const NetworkSpec& spec) {
  std::vector<std::string> warnings;
  auto warn_pair = [&warnings](const Category& higher, const Category& lower) {
    const double mh = cdf_mean(higher.defense);
    const double ml = cdf_mean(lower.defense);
    if (mh < ml) {
      warnings.push_back("mean effort of " + std::string(to_string(higher.node_class)) + " '" +
                         higher.id + "' (" + std::to_string(mh) + ") is below " +
                         std::string(to_string(lower.node_class)) + " '" + lower.id + "' (" +
                         std::to_string(ml) + ")");
    }
    if (higher.defense.success_prob > lower.defense.success_prob) {
      warnings.push_back("success probability of " + std::string(to_string(higher.node_class)) +
                         " '" + higher.id + "' exceeds " +
                         std::string(to_string(lower.node_class)) + " '" + lower.id + "'");
    }
  };
  for (const auto& agg : spec.aggregator_categories) {
    warn_pair(spec.root_category, agg);
  }
  for (const auto& agg : spec.aggregator_categories) {
    for (const auto& dev : spec.device_categories) warn_pair(agg, dev);
  }
  return warnings;
}

const Category& sample_category(Rng& rng, const std::vector<Category>& categories,
                                const std::vector<size_t>* eligible) {
  double total = 0.0;
  auto each = [&](auto&& fn) {
    if (eligible) {
      for (size_t i : *eligible) fn(categories[i]);
    } else {
      for (const auto& c : categories) fn(c);
    }
  };
  each([&total](const Category& c) { total += c.weight; });
  if (total <= 0.0) {
    throw NoEligibleCategory("no eligible category with positive weight");
  }
  const double u = rng.next_unit() * total;
  double acc = 0.0;
  const Category* chosen = nullptr;
  each([&](const Category& c) {
    if (chosen || c.weight <= 0) return;
    acc += c.weight;
    if (u < acc) chosen = &c;
  });
  if (!chosen) {
    // u == total can occur at the floating-point edge; take the last positive weight
    each([&](const Category& c) {
      if (c.weight > 0) chosen = &c;
    });
  }
  return *chosen;
}

}  // namespace commnet
