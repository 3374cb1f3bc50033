#include "commnet/grid_model.hpp"

#include <cmath>
#include <set>

#include "commnet/errors.hpp"
#include "json_util.hpp"

namespace commnet {

using detail::child_path;
using detail::index_path;
using detail::json;
using detail::ObjectReader;
using detail::ojson;

Grid parse_grid(const std::string& text) {
  json j = detail::parse_document(text);
  ObjectReader r(j, "");
  if (r.require_uint("grid_version") != 1) {
    throw SchemaViolation("grid_version", "unsupported version (expected 1)");
  }
  Grid grid;
  grid.name = r.require_string("name");
  const json& items = r.require_array("equipment");
  r.done();

  std::set<std::string> ids;
  grid.equipment.reserve(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    const std::string path = index_path("equipment", i);
    ObjectReader er(items[i], path);
    Equipment e;
    e.id = er.require_string("id");
    if (e.id.empty()) throw SchemaViolation(child_path(path, "id"), "must not be empty");
    try {
      e.kind = equipment_kind_from_string(er.require_string("kind"));
    } catch (const SchemaViolation& ex) {
      throw SchemaViolation(child_path(path, "kind"), ex.reason);
    }
    if (const json* attrs = er.optional("attributes")) {
      if (!attrs->is_object()) {
        throw SchemaViolation(child_path(path, "attributes"), "expected an object");
      }
      for (auto it = attrs->begin(); it != attrs->end(); ++it) {
        if (!it.value().is_number()) {
          throw SchemaViolation(child_path(child_path(path, "attributes"), it.key()),
                                "expected a number");
        }
        e.attributes[it.key()] = it.value().get<double>();
      }
    }
    er.done();
    if (!ids.insert(e.id).second) {
      throw DuplicateEquipmentId("duplicate equipment id '" + e.id + "'");
    }
    grid.equipment.push_back(std::move(e));
  }
  return grid;
}

std::string serialize_grid(const Grid& grid) {
  ojson doc;
  doc["grid_version"] = 1;
  doc["name"] = grid.name;
  ojson items = ojson::array();
  for (const auto& e : grid.equipment) {
    ojson ej;
    ej["id"] = e.id;
    ej["kind"] = std::string(to_string(e.kind));
    ojson attrs = ojson::object();
    for (const auto& [k, v] : e.attributes) attrs[k] = v;
    ej["attributes"] = std::move(attrs);
    items.push_back(std::move(ej));
  }
  doc["equipment"] = std::move(items);
  return doc.dump(2) + "\n";
}

namespace {

bool predicate_holds(const Predicate& p, const Equipment& e) {
  auto it = e.attributes.find(p.attribute);
  if (it == e.attributes.end()) {
    throw UnknownAttribute(p.attribute, std::string(to_string(e.kind)));
  }
  const double v = it->second;
  switch (p.op) {
    case PredicateOp::lt: return v < p.value;
    case PredicateOp::le: return v <= p.value;
    case PredicateOp::gt: return v > p.value;
    case PredicateOp::ge: return v >= p.value;
    case PredicateOp::eq: return v == p.value;
  }
  return false;
}

}  // namespace

bool equipment_matches(const Equipment& equipment, const Category& category) {
  if (category.compatibility.empty()) return true;
  for (const auto& filter : category.compatibility) {
    if (filter.equipment_kind != equipment.kind) continue;
    bool all = true;
    for (const auto& p : filter.predicates) {
      if (!predicate_holds(p, equipment)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::vector<const Equipment*> eligible_equipment(const Grid& grid, const Category& category) {
  if (category.node_class != NodeClass::device) {
    throw InvariantViolation("eligible_equipment requires a device category");
  }
  std::vector<const Equipment*> out;
  for (const auto& e : grid.equipment) {
    if (equipment_matches(e, category)) out.push_back(&e);
  }
  return out;
}

int n_splits(const Equipment& equipment, const Category& category,
             std::vector<std::string>* warnings) {
  if (!category.split_rule) return 1;
  const SplitRule& rule = *category.split_rule;
  auto it = equipment.attributes.find(rule.attribute);
  if (it == equipment.attributes.end()) {
    throw UnknownAttribute(rule.attribute, std::string(to_string(equipment.kind)));
  }
  const double value = it->second;
  if (value <= 0.0) {
    if (warnings) {
      warnings->push_back("equipment '" + equipment.id + "': split attribute '" +
                          rule.attribute + "' is not positive; placing one device");
    }
    return 1;
  }
  const double k = std::ceil(value / rule.unit_capacity);
  return k < 1.0 ? 1 : static_cast<int>(k);
}

}  // namespace commnet
