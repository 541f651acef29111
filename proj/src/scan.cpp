#include "ctslim/scan.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "ctslim/codec.hpp"

namespace fs = std::filesystem;

namespace ctslim {

namespace {

// Last run of digits in the stem, with leading zeros stripped. Kept as a
// string so arbitrarily long indices compare exactly (length, then lex).
std::optional<std::string> numeric_key(const fs::path& path) {
  const std::string stem = path.stem().string();
  std::size_t end = std::string::npos;
  for (std::size_t i = stem.size(); i-- > 0;) {
    if (std::isdigit(static_cast<unsigned char>(stem[i]))) {
      end = i + 1;
      break;
    }
  }
  if (end == std::string::npos) return std::nullopt;
  std::size_t begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1]))) --begin;
  std::string digits = stem.substr(begin, end - begin);
  const std::size_t nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  return digits;
}

bool numeric_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::string to_string(Label label) {
  switch (label) {
    case Label::kPositive: return "positive";
    case Label::kNegative: return "negative";
    default: return "unknown";
  }
}

std::vector<fs::path> list_scan_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_supported_image(entry.path())) files.push_back(entry.path());
  }
  if (files.empty()) throw Error("no image files in " + dir.string());

  std::vector<std::optional<std::string>> keys(files.size());
  bool all_numeric = true;
  for (std::size_t i = 0; i < files.size(); ++i) {
    keys[i] = numeric_key(files[i]);
    all_numeric = all_numeric && keys[i].has_value();
  }

  std::vector<std::size_t> order(files.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (all_numeric) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (*keys[a] != *keys[b]) return numeric_less(*keys[a], *keys[b]);
      return files[a].filename().string() < files[b].filename().string();
    });
  } else {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return files[a].filename().string() < files[b].filename().string();
    });
  }

  std::vector<fs::path> sorted;
  sorted.reserve(files.size());
  for (std::size_t i : order) sorted.push_back(files[i]);
  return sorted;
}

ScanVolume load_scan(const fs::path& dir) {
  ScanVolume scan;
  scan.scan_id = dir.filename().string();
  const auto files = list_scan_files(dir);
  scan.slices.reserve(files.size());
  for (const auto& file : files) {
    SliceImage img = read_image(file);
    if (!scan.slices.empty() &&
        (img.height != scan.slices.front().height || img.width != scan.slices.front().width)) {
      throw Error("slice dimension mismatch in " + file.string() + ": got " +
                  std::to_string(img.width) + "x" + std::to_string(img.height) + ", expected " +
                  std::to_string(scan.slices.front().width) + "x" +
                  std::to_string(scan.slices.front().height));
    }
    scan.slices.push_back(std::move(img));
  }
  return scan;
}

}  // namespace ctslim
