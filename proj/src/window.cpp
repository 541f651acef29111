#include "ctslim/window.hpp"

#include <algorithm>

namespace ctslim {

AreaProfile AreaProfile::from(std::vector<double> areas) {
  AreaProfile profile;
  for (double a : areas) {
    if (a < 0.0) throw Error("area profile entries must be >= 0");
    profile.total += a;
  }
  profile.areas = std::move(areas);
  return profile;
}

namespace {

// Best window of fixed length: maximal sum, then smallest start.
SliceWindow best_of_length(const std::vector<double>& prefix, int len, double total) {
  const int n = static_cast<int>(prefix.size()) - 1;
  int best_s = 0;
  double best_sum = prefix[len] - prefix[0];
  for (int s = 1; s + len <= n; ++s) {
    const double sum = prefix[s + len] - prefix[s];
    if (sum > best_sum) {
      best_sum = sum;
      best_s = s;
    }
  }
  return SliceWindow{best_s, best_s + len - 1, total > 0.0 ? best_sum / total : 0.0, false};
}

}  // namespace

SliceWindow select_window(const AreaProfile& profile, double alpha, std::optional<int> n_c) {
  const int n = profile.count();
  if (n == 0) throw Error("select_window: empty profile");
  if (alpha <= 0.0 || alpha > 1.0) throw Error("alpha must be in (0, 1]");
  if (n_c && *n_c < 1) throw Error("n_c must be >= 1");
  if (profile.total <= 0.0) throw DegenerateScanError("select_window: total area is zero");

  const int cap = std::min(n_c.value_or(n), n);
  const double threshold = alpha * profile.total;

  std::vector<double> prefix(n + 1, 0.0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + profile.areas[i];

  // Two-pointer sweep for the minimal qualifying length; valid because areas
  // are nonnegative, so window sums grow with length.
  int min_len = n + 1;
  int s = 0;
  for (int e = 0; e < n; ++e) {
    while (prefix[e + 1] - prefix[s + 1] >= threshold) ++s;
    if (prefix[e + 1] - prefix[s] >= threshold) min_len = std::min(min_len, e - s + 1);
  }
  // The full profile always qualifies (alpha <= 1), so min_len <= n here.

  if (min_len <= cap) {
    // Among qualifying windows of the minimal length: max sum, then min s.
    int best_s = -1;
    double best_sum = 0.0;
    for (int start = 0; start + min_len <= n; ++start) {
      const double sum = prefix[start + min_len] - prefix[start];
      if (sum >= threshold && (best_s < 0 || sum > best_sum)) {
        best_s = start;
        best_sum = sum;
      }
    }
    return SliceWindow{best_s, best_s + min_len - 1, best_sum / profile.total, false};
  }

  // Constraint relaxation: alpha unreachable within the cap.
  SliceWindow win = best_of_length(prefix, cap, profile.total);
  win.relaxed = true;
  return win;
}

SliceWindow centered_window(int count, std::optional<int> n_c) {
  if (count < 1) throw Error("centered_window: empty scan");
  const int len = std::min(n_c.value_or(count), count);
  const int s = (count - len) / 2;
  return SliceWindow{s, s + len - 1, 0.0, false};
}

}  // namespace ctslim
