#include "ctslim/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ctslim/rng.hpp"

namespace ctslim {

Bandwidth scotts_bandwidth(const std::vector<double>& points, const std::vector<double>& weights) {
  if (points.empty() || points.size() != weights.size())
    throw Error("scotts_bandwidth: points and weights must be non-empty and equal-sized");

  double weight_sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw Error("scotts_bandwidth: weights must be >= 0");
    weight_sum += w;
  }
  if (weight_sum <= 0.0) throw Error("scotts_bandwidth: weights sum to zero");

  double mean = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) mean += weights[i] * points[i];
  mean /= weight_sum;

  double var = 0.0, sq_sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double w = weights[i] / weight_sum;
    var += w * (points[i] - mean) * (points[i] - mean);
    sq_sum += w * w;
  }

  if (var <= 0.0) {
    const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
    return Bandwidth{std::max(1.0, (*hi - *lo) / 10.0), true};
  }
  const double m_eff = 1.0 / sq_sum;
  return Bandwidth{std::sqrt(var) * std::pow(m_eff, -0.2), false};
}

double DensityEstimate::density_at(double x) const {
  if (grid.size() < 2) return density.empty() ? 0.0 : density.front();
  if (x <= grid.front()) return density.front();
  if (x >= grid.back()) return density.back();
  const double step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  auto cell = static_cast<std::size_t>((x - grid.front()) / step);
  cell = std::min(cell, grid.size() - 2);
  const double f = (x - grid[cell]) / (grid[cell + 1] - grid[cell]);
  return density[cell] + f * (density[cell + 1] - density[cell]);
}

std::string to_string(SamplingMode mode) {
  switch (mode) {
    case SamplingMode::kKds: return "kds";
    case SamplingMode::kRandom: return "random";
    default: return "none";
  }
}

DensityEstimate estimate_density(const SliceWindow& window, const AreaProfile& profile,
                                 int grid_size) {
  if (grid_size < 16) throw Error("estimate_density: grid_size must be >= 16");
  if (window.s < 0 || window.e >= profile.count() || window.s > window.e)
    throw Error("estimate_density: window out of profile bounds");

  const int len = window.length();
  std::vector<double> points(len), weights(len);
  double window_total = 0.0;
  for (int i = 0; i < len; ++i) window_total += profile.areas[window.s + i];

  DensityEstimate est;
  est.uniform_weights = window_total <= 0.0;
  for (int i = 0; i < len; ++i) {
    points[i] = window.s + i;
    weights[i] = est.uniform_weights ? 1.0 / len : profile.areas[window.s + i] / window_total;
  }

  const Bandwidth bw = scotts_bandwidth(points, weights);
  est.bandwidth_h = bw.h;
  est.bandwidth_fallback = bw.fallback;

  const double lo = window.s - 3.0 * bw.h;
  const double hi = window.e + 3.0 * bw.h;
  int g = grid_size;
  if ((hi - lo) / (g - 1) > bw.h) {
    g = static_cast<int>(std::ceil((hi - lo) / bw.h)) + 1;
    est.grid_refined = true;
  }

  est.grid.resize(g);
  est.density.assign(g, 0.0);
  const double step = (hi - lo) / (g - 1);
  const double norm = 1.0 / (bw.h * std::sqrt(2.0 * std::numbers::pi));
  for (int j = 0; j < g; ++j) {
    const double x = lo + step * j;
    est.grid[j] = x;
    double d = 0.0;
    for (int i = 0; i < len; ++i) {
      const double z = (x - points[i]) / bw.h;
      d += weights[i] * std::exp(-0.5 * z * z);
    }
    est.density[j] = d * norm;
  }

  est.cdf.assign(g, 0.0);
  for (int j = 1; j < g; ++j)
    est.cdf[j] = est.cdf[j - 1] + 0.5 * (est.density[j - 1] + est.density[j]) * step;
  est.raw_mass = est.cdf.back();
  if (est.raw_mass > 0.0)
    for (double& c : est.cdf) c /= est.raw_mass;
  return est;
}

std::vector<std::pair<double, double>> stratify(const DensityEstimate& est, int n) {
  if (n < 1) throw Error("stratify: n must be >= 1");
  const auto& cdf = est.cdf;
  const auto& grid = est.grid;

  std::vector<double> bounds(n + 1);
  bounds[0] = grid.front();
  bounds[n] = grid.back();
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    const double p = static_cast<double>(j) / n;
    while (k + 1 < cdf.size() && cdf[k + 1] < p) ++k;
    // cdf[k] < p <= cdf[k+1]; invert linearly inside the cell.
    const double dc = cdf[k + 1] - cdf[k];
    const double f = dc > 0.0 ? (p - cdf[k]) / dc : 1.0;
    bounds[j] = grid[k] + f * (grid[k + 1] - grid[k]);
  }

  std::vector<std::pair<double, double>> strata(n);
  for (int j = 0; j < n; ++j) strata[j] = {bounds[j], bounds[j + 1]};
  return strata;
}

namespace {

std::vector<int> all_window_indices(const SliceWindow& window) {
  std::vector<int> indices(window.length());
  for (int i = 0; i < window.length(); ++i) indices[i] = window.s + i;
  return indices;
}

// Nearest unused index to `anchor` within [s, e]; ties go to the lower index.
int nearest_unused(int anchor, const SliceWindow& window, const std::vector<std::uint8_t>& used) {
  anchor = std::clamp(anchor, window.s, window.e);
  if (!used[anchor - window.s]) return anchor;
  for (int d = 1;; ++d) {
    const int lo = anchor - d, hi = anchor + d;
    if (lo >= window.s && !used[lo - window.s]) return lo;
    if (hi <= window.e && !used[hi - window.s]) return hi;
    if (lo < window.s && hi > window.e) throw Error("sample: no unused index left");
  }
}

}  // namespace

SampleSelection sample(const DensityEstimate& est, const SliceWindow& window, int n,
                       std::uint64_t seed) {
  if (n < 1) throw Error("sample: n must be >= 1");
  SampleSelection sel;
  sel.mode = SamplingMode::kKds;
  if (window.length() <= n) {
    sel.indices = all_window_indices(window);
    return sel;
  }

  sel.strata = stratify(est, n);
  Xoshiro256 rng(seed);
  std::vector<std::uint8_t> used(window.length(), 0);

  for (const auto& [lo, hi] : sel.strata) {
    // Integer candidates in the closed stratum interval, clipped to the window.
    const int first = std::max(window.s, static_cast<int>(std::ceil(lo)));
    const int last = std::min(window.e, static_cast<int>(std::floor(hi)));

    int pick = -1;
    if (first > last) {
      pick = nearest_unused(static_cast<int>(std::lround((lo + hi) / 2.0)), window, used);
    } else {
      std::vector<double> weight(last - first + 1);
      double total = 0.0;
      for (int i = first; i <= last; ++i) total += weight[i - first] = est.density_at(i);

      int drawn;
      if (total > 0.0) {
        const double u = rng.uniform() * total;
        double acc = 0.0;
        drawn = last;
        for (int i = first; i <= last; ++i) {
          acc += weight[i - first];
          if (u < acc) {
            drawn = i;
            break;
          }
        }
      } else {
        drawn = first + static_cast<int>(rng.below(static_cast<std::uint64_t>(last - first + 1)));
      }

      if (!used[drawn - window.s]) {
        pick = drawn;
      } else {
        // Collision on a boundary-shared candidate: next-highest-density
        // unused index in this stratum, then adjacent indices.
        double best_w = -1.0;
        for (int i = first; i <= last; ++i) {
          if (!used[i - window.s] && weight[i - first] > best_w) {
            best_w = weight[i - first];
            pick = i;
          }
        }
        if (pick < 0) pick = nearest_unused(drawn, window, used);
      }
    }
    used[pick - window.s] = 1;
    sel.indices.push_back(pick);
  }

  std::sort(sel.indices.begin(), sel.indices.end());
  return sel;
}

SampleSelection sample_random(const SliceWindow& window, int n, std::uint64_t seed) {
  if (n < 1) throw Error("sample_random: n must be >= 1");
  SampleSelection sel;
  sel.mode = SamplingMode::kRandom;
  if (window.length() <= n) {
    sel.indices = all_window_indices(window);
    return sel;
  }
  std::vector<int> pool = all_window_indices(window);
  Xoshiro256 rng(seed);
  for (int i = 0; i < n; ++i) {
    const auto j = i + static_cast<int>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  sel.indices.assign(pool.begin(), pool.begin() + n);
  std::sort(sel.indices.begin(), sel.indices.end());
  return sel;
}

}  // namespace ctslim
