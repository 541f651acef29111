#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ctslim/image.hpp"

namespace ctslim {

enum class Label { kPositive, kNegative, kUnknown };

std::string to_string(Label label);

struct ScanVolume {
  std::string scan_id;
  std::vector<SliceImage> slices;
  Label label = Label::kUnknown;
};

// Slice files ordered as the stack order. Sorting is by the numeric value of
// the last digit run in each stem (slice_2 before slice_10); if any stem has
// no digits the whole directory falls back to lexicographic filenames.
std::vector<std::filesystem::path> list_scan_files(const std::filesystem::path& dir);

// Loads every slice of one scan directory. All slices must share dimensions;
// violations name the offending file.
ScanVolume load_scan(const std::filesystem::path& dir);

}  // namespace ctslim
