#pragma once

#include <cstdint>

#include "commnet/spec_model.hpp"

namespace commnet {

// Generation hyperparameters. `n_devices` is ignored when a grid is supplied
// (the grid drives the device count). `children_per_parent` must be >= 2;
// the deviation may push individual draws to 1 or below, which carries the
// component one level up instead of aggregating it.
struct GenHyperparams {
  uint64_t n_devices = 1;
  SiblingMode sibling_mode = SiblingMode::all;
  bool flat = false;
  int children_per_parent = 4;
  int children_deviation = 0;
  uint32_t n_entrypoints = 1;
  uint64_t seed = 0;
  friend bool operator==(const GenHyperparams&, const GenHyperparams&) = default;
};

}  // namespace commnet
