#pragma once

#include "ctslim/image.hpp"

namespace ctslim {

class EmptyMaskError : public Error {
 public:
  using Error::Error;
};

// Uniform-weight box mean over the (2k+1)x(2k+1) neighborhood. Out-of-bounds
// neighbors are excluded from numerator and denominator, so border pixels
// average over the clipped window only. Output stays floating point.
SliceImage lowpass_filter(const SliceImage& img, int k);

// Mask[i,j] = 1 iff filtered[i,j] >= t.
BinaryMask segment(const SliceImage& filtered, double t);

// Tight bounding box over all set bits. Throws EmptyMaskError when none are
// set; callers fall back to the full frame.
CropRect crop_rect(const BinaryMask& mask);

// Inclusive sub-image copy.
SliceImage apply_crop(const SliceImage& img, const CropRect& rect);

}  // namespace ctslim
