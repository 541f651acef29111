#pragma once

#include <cstdint>

#include "ctslim/image.hpp"

namespace ctslim {

// Binary dilation by a square structuring element of side 2*radius+1: a bit
// is set iff any input bit lies within Chebyshev distance radius.
BinaryMask dilate(const BinaryMask& mask, int radius);

// Sets every 0-region that is not 4-connected to the image border; the
// border-connected background stays 0.
BinaryMask fill_holes(const BinaryMask& mask);

// Enclosed-cavity pixel count: sum of fill_holes(dilate(mask)) minus
// dilate(mask). Proxy for lung tissue area.
std::int64_t slice_area(const BinaryMask& mask, int dilate_radius);

}  // namespace ctslim
