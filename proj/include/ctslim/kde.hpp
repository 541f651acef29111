#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ctslim/window.hpp"

namespace ctslim {

struct Bandwidth {
  double h = 0.0;
  bool fallback = false;  // zero-variance input, h = max(1, range/10)
};

// Scott's rule for weighted 1-D data: h = sigma_w * m_eff^(-1/5) with
// m_eff = 1 / sum(w_i^2). Weights are normalized internally.
Bandwidth scotts_bandwidth(const std::vector<double>& points, const std::vector<double>& weights);

// Weighted Gaussian KDE evaluated on a regular grid spanning
// [s - 3h, e + 3h], plus its trapezoidal CDF normalized to end at 1.
struct DensityEstimate {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth_h = 0.0;
  std::vector<double> cdf;
  double raw_mass = 0.0;  // trapezoidal integral before normalization
  bool bandwidth_fallback = false;
  bool uniform_weights = false;  // window area total was zero
  bool grid_refined = false;     // grid densified to keep spacing <= h

  double density_at(double x) const;  // linear interpolation on the grid
};

enum class SamplingMode { kKds, kRandom, kNone };

std::string to_string(SamplingMode mode);

struct SampleSelection {
  std::vector<int> indices;                        // sorted, distinct, within [s, e]
  std::vector<std::pair<double, double>> strata;   // n equal-CDF-mass intervals
  SamplingMode mode = SamplingMode::kKds;
};

// KDE over the window's slice indices, weighted by each slice's share of the
// window area. grid_size points (min 16); the grid densifies only if the
// spacing would exceed the bandwidth.
DensityEstimate estimate_density(const SliceWindow& window, const AreaProfile& profile,
                                 int grid_size = 100);

// Boundaries q_{j/n} by monotone inverse interpolation of the numeric CDF;
// returns n closed intervals covering the grid span.
std::vector<std::pair<double, double>> stratify(const DensityEstimate& est, int n);

// One density-proportional integer draw per stratum, without replacement;
// collisions fall to the next-highest-density unused index in the stratum,
// then to adjacent indices. Windows of length <= n return every index.
SampleSelection sample(const DensityEstimate& est, const SliceWindow& window, int n,
                       std::uint64_t seed);

// Uniform draw of n distinct indices from [s, e], sorted.
SampleSelection sample_random(const SliceWindow& window, int n, std::uint64_t seed);

}  // namespace ctslim
