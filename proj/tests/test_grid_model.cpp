#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "commnet/errors.hpp"
#include "commnet/generator.hpp"
#include "commnet/grid_model.hpp"

using namespace commnet;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Grid fixture_grid() {
  return parse_grid(read_file(std::string(COMMNET_DATA_DIR) + "/grids/cigre_mv_like.json"));
}

Category device_category(std::string filters, std::string split = "") {
  std::string text = R"({ "id": "dev", "defense": { "effort_cdf": [[0.0,0.0],[1.0,1.0]], "success_prob": 1.0 })";
  if (!filters.empty()) text += ", \"compatibility\": " + filters;
  if (!split.empty()) text += ", \"split\": " + split;
  text += " }";
  const std::string spec_text = R"({
    "spec_version": 1, "name": "t",
    "device": { "categories": [)" + text + R"(] },
    "aggregator": { "categories": [{ "id": "agg", "defense": { "effort_cdf": [[0.0,0.0],[1.0,1.0]], "success_prob": 1.0 } }] },
    "root": { "id": "r", "defense": { "effort_cdf": [[0.0,0.0],[1.0,1.0]], "success_prob": 1.0 } }
  })";
  return parse_spec(spec_text).device_categories[0];
}

}  // namespace

TEST_CASE("fixture grid parses with the expected composition") {
  const Grid grid = fixture_grid();
  CHECK(grid.name == "cigre_mv_like");
  size_t buses = 0, transformers = 0, loads = 0;
  for (const auto& e : grid.equipment) {
    if (e.kind == EquipmentKind::bus) ++buses;
    if (e.kind == EquipmentKind::transformer) ++transformers;
    if (e.kind == EquipmentKind::load) ++loads;
  }
  CHECK(buses == 14);
  CHECK(transformers == 2);
  CHECK(loads == 10);
}

TEST_CASE("empty equipment list is a valid grid") {
  const Grid grid = parse_grid(R"({ "grid_version": 1, "name": "empty", "equipment": [] })");
  CHECK(grid.equipment.empty());
}

TEST_CASE("duplicate equipment ids are rejected") {
  const std::string text = R"({
    "grid_version": 1, "name": "dup",
    "equipment": [
      { "id": "load1", "kind": "load", "attributes": { "p_kw": 1.0 } },
      { "id": "load1", "kind": "load", "attributes": { "p_kw": 2.0 } }
    ]
  })";
  CHECK_THROWS_AS(parse_grid(text), DuplicateEquipmentId);
}

TEST_CASE("grids round-trip") {
  const Grid grid = fixture_grid();
  CHECK(parse_grid(serialize_grid(grid)) == grid);
}

TEST_CASE("voltage filter keeps only matching buses") {
  const Grid grid = parse_grid(R"({
    "grid_version": 1, "name": "v",
    "equipment": [
      { "id": "b1", "kind": "bus", "attributes": { "vn_kv": 20.0 } },
      { "id": "b2", "kind": "bus", "attributes": { "vn_kv": 0.4 } },
      { "id": "b3", "kind": "bus", "attributes": { "vn_kv": 20.0 } }
    ]
  })");
  const Category cat = device_category(
      R"([{ "equipment": "bus", "conditions": [{ "attribute": "vn_kv", "op": "ge", "value": 20.0 }] }])");
  const auto eligible = eligible_equipment(grid, cat);
  REQUIRE(eligible.size() == 2);
  CHECK(eligible[0]->id == "b1");
  CHECK(eligible[1]->id == "b3");
}

TEST_CASE("a category without compatibility matches all equipment") {
  const Grid grid = fixture_grid();
  const Category cat = device_category("");
  CHECK(eligible_equipment(grid, cat).size() == grid.equipment.size());
}

TEST_CASE("a predicate on a missing attribute throws UnknownAttribute") {
  const Grid grid = fixture_grid();
  const Category cat = device_category(
      R"([{ "equipment": "bus", "conditions": [{ "attribute": "frequency", "op": "ge", "value": 50.0 }] }])");
  CHECK_THROWS_AS(eligible_equipment(grid, cat), UnknownAttribute);
}

TEST_CASE("eligible equipment preserves grid order") {
  const Grid grid = fixture_grid();
  const Category cat = device_category(R"([{ "equipment": "load" }])");
  const auto eligible = eligible_equipment(grid, cat);
  size_t pos = 0;
  for (const Equipment* e : eligible) {
    while (pos < grid.equipment.size() && &grid.equipment[pos] != e) ++pos;
    REQUIRE(pos < grid.equipment.size());  // subsequence of grid.equipment
  }
}

TEST_CASE("n_splits applies the ceil rule") {
  const Category meter = device_category(R"([{ "equipment": "load" }])",
                                         R"({ "attribute": "p_kw", "unit_capacity": 1.0 })");
  Equipment load{"l", EquipmentKind::load, {{"p_kw", 10.0}}};
  CHECK(n_splits(load, meter) == 10);

  load.attributes["p_kw"] = 10.5;
  // oracle: smallest k with k * unit >= value
  int k = 0;
  while (k * 1.0 < 10.5) ++k;
  CHECK(n_splits(load, meter) == k);
  CHECK(n_splits(load, meter) == 11);

  load.attributes["p_kw"] = 0.25;
  CHECK(n_splits(load, meter) == 1);
}

TEST_CASE("n_splits without a split rule is 1") {
  const Category cat = device_category(R"([{ "equipment": "load" }])");
  const Equipment load{"l", EquipmentKind::load, {{"p_kw", 10.0}}};
  CHECK(n_splits(load, cat) == 1);
}

TEST_CASE("nonpositive split attribute yields one device and a warning") {
  const Category meter = device_category(R"([{ "equipment": "load" }])",
                                         R"({ "attribute": "p_kw", "unit_capacity": 1.0 })");
  const Equipment load{"l", EquipmentKind::load, {{"p_kw", 0.0}}};
  std::vector<std::string> warnings;
  CHECK(n_splits(load, meter, &warnings) == 1);
  CHECK(warnings.size() == 1);
}

TEST_CASE("n_splits on a missing attribute throws") {
  const Category meter = device_category(R"([{ "equipment": "load" }])",
                                         R"({ "attribute": "p_kw", "unit_capacity": 1.0 })");
  const Equipment load{"l", EquipmentKind::load, {{"power", 10.0}}};
  CHECK_THROWS_AS(n_splits(load, meter), UnknownAttribute);
}

TEST_CASE("sum of n_splits equals the grid-bound device count") {
  const Grid grid = fixture_grid();
  const NetworkSpec& ami = builtin_specs().at("ami");

  // both vendors share the split rule, so the sum is draw-independent
  size_t expected = 0;
  for (const Equipment* e : eligible_equipment(grid, ami.device_categories[0])) {
    expected += static_cast<size_t>(n_splits(*e, ami.device_categories[0]));
  }

  GenHyperparams hp = defaults_for(ami);
  hp.seed = 5;
  const Network net = generate(ami, hp, &grid);
  CHECK(device_count(net) == expected);
}
