#pragma once

#include <map>
#include <string>
#include <vector>

#include "commnet/spec_model.hpp"

namespace commnet {

struct Equipment {
  std::string id;
  EquipmentKind kind = EquipmentKind::bus;
  std::map<std::string, double> attributes;
  friend bool operator==(const Equipment&, const Equipment&) = default;
};

// A neutral electrical-equipment list. Ordering is preserved from the file;
// device enumeration during generation follows it, so it is part of the
// deterministic contract.
struct Grid {
  std::string name;
  std::vector<Equipment> equipment;
  friend bool operator==(const Grid&, const Grid&) = default;
};

Grid parse_grid(const std::string& text);
std::string serialize_grid(const Grid& grid);

// True if `category` (a device category) may be placed at `equipment`:
// either the category has no compatibility filters, or some filter matches
// the equipment kind and all of its predicates hold. A predicate referencing
// an attribute the equipment lacks throws UnknownAttribute.
bool equipment_matches(const Equipment& equipment, const Category& category);

// Equipment compatible with the category, in grid order.
std::vector<const Equipment*> eligible_equipment(const Grid& grid, const Category& category);

// Number of devices one equipment item splits into: 1 without a split rule,
// otherwise ceil(attribute / unit_capacity) with a floor of 1. A nonpositive
// split attribute yields 1 with a warning appended to `warnings`.
int n_splits(const Equipment& equipment, const Category& category,
             std::vector<std::string>* warnings = nullptr);

}  // namespace commnet
