#pragma once

#include <optional>
#include <vector>

#include "ctslim/image.hpp"

namespace ctslim {

class DegenerateScanError : public Error {
 public:
  using Error::Error;
};

// Per-slice lung areas, in stack order.
struct AreaProfile {
  std::vector<double> areas;
  double total = 0.0;

  static AreaProfile from(std::vector<double> areas);
  int count() const { return static_cast<int>(areas.size()); }
};

// Contiguous slice range [s, e], both inclusive.
struct SliceWindow {
  int s = 0;
  int e = 0;
  double area_fraction = 0.0;
  bool relaxed = false;  // alpha could not be met within the length cap

  int length() const { return e - s + 1; }
  bool operator==(const SliceWindow&) const = default;
};

// Shortest contiguous window whose share of the scan-wide area total reaches
// alpha; ties resolve to the largest window sum, then the smallest start. If
// no window within the length cap reaches alpha, the cap-length window of
// maximal sum is returned with `relaxed` set. A cap of nullopt means the
// whole profile length. Throws DegenerateScanError when the total is zero.
SliceWindow select_window(const AreaProfile& profile, double alpha, std::optional<int> n_c);

// Fallback for degenerate scans: centered window of min(n_c, count) slices.
SliceWindow centered_window(int count, std::optional<int> n_c);

}  // namespace ctslim
