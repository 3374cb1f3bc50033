#include "commnet/bench.hpp"

#include <chrono>

#include "commnet/errors.hpp"
#include "commnet/generator.hpp"

namespace commnet {

namespace {

struct BenchCase {
  const char* name;
  GenHyperparams hp;
};

std::vector<BenchCase> bench_cases() {
  GenHyperparams best;
  best.flat = true;
  best.sibling_mode = SiblingMode::none;

  GenHyperparams average;
  average.children_per_parent = 4;
  average.children_deviation = 3;
  average.sibling_mode = SiblingMode::none;

  GenHyperparams worst;
  worst.children_per_parent = 2;
  worst.children_deviation = 0;
  worst.sibling_mode = SiblingMode::none;

  return {{"best", best}, {"average", average}, {"worst", worst}};
}

}  // namespace

BenchReport run_bench(const NetworkSpec& spec, const std::vector<uint64_t>& sizes,
                      int repetitions) {
  if (sizes.empty()) throw InvariantViolation("bench needs at least one size");
  for (uint64_t s : sizes) {
    if (s == 0) throw InvariantViolation("bench sizes must be positive");
  }
  if (repetitions < 1) throw InvariantViolation("bench repetitions must be >= 1");

  BenchReport report;
  for (const auto& c : bench_cases()) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (uint64_t size : sizes) {
      GenHyperparams hp = c.hp;
      hp.n_devices = size;
      double total = 0.0;
      for (int rep = 0; rep < repetitions; ++rep) {
        hp.seed = static_cast<uint64_t>(rep);
        const auto start = std::chrono::steady_clock::now();
        const Network net = generate(spec, hp);
        const auto stop = std::chrono::steady_clock::now();
        total += std::chrono::duration<double>(stop - start).count();
        if (device_count(net) != size) {
          throw InvariantViolation("bench generation produced an unexpected device count");
        }
      }
      const double mean = total / repetitions;
      report.points.push_back({c.name, size, mean});
      xs.push_back(static_cast<double>(size));
      ys.push_back(mean);
    }
    if (xs.size() >= 2) report.fits[c.name] = fit_linear(xs, ys);
  }
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::string out = "case,n_devices,mean_seconds\n";
  for (const auto& p : report.points) {
    out += p.case_name + "," + std::to_string(p.n_devices) + "," +
           std::to_string(p.mean_seconds) + "\n";
  }
  return out;
}

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvariantViolation("linear fit needs at least two points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinearFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;

  const double mean_y = sy / n;
  double ss_res = 0, ss_tot = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double pred = fit.slope * x[i] + fit.intercept;
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
  }
  fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace commnet
