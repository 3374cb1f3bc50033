#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "commnet/spec_model.hpp"

namespace commnet {

struct BenchPoint {
  std::string case_name;
  uint64_t n_devices = 0;
  double mean_seconds = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

struct BenchReport {
  std::vector<BenchPoint> points;
  std::map<std::string, LinearFit> fits;  // per case; absent below 2 sizes
};

// Single-threaded generation timings for three complexity cases per size:
// "best" (flat, one aggregator), "average" (randomized children per parent)
// and "worst" (two children per parent, the most aggregators). Sibling mode
// is none for all cases so the edge count stays linear in the device count.
BenchReport run_bench(const NetworkSpec& spec, const std::vector<uint64_t>& sizes,
                      int repetitions);

std::string bench_csv(const BenchReport& report);

// Ordinary least squares of y on x with the coefficient of determination.
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace commnet
