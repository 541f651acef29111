#pragma once

#include <string>
#include <vector>

#include "ctslim/image.hpp"
#include "ctslim/scan.hpp"
#include "ctslim/window.hpp"

namespace ctslim {
namespace report {

// Reference reduction rates measured on the COVID-19-CT-DB corpus with
// k=5, t=100, alpha=0.5. The corpus is not redistributable, so these are
// documentation constants; the phantom acceptance suite is the runnable
// substitute.
inline constexpr double kReferenceSpatialDelta = 0.4182;
inline constexpr double kReferenceSliceDelta = 0.4983;
inline constexpr double kReferenceProductDelta = 0.7082;

// Before/After accounting for one scan: spatial area, slice count, and their
// product.
struct ReductionRecord {
  std::string scan_id;
  std::string label = "unknown";
  double spatial_before = 0.0;  // pixels^2
  double spatial_after = 0.0;
  int slices_before = 0;
  int slices_after = 0;
  double product_before = 0.0;  // pixels^2 * slices
  double product_after = 0.0;

  double spatial_delta() const { return 1.0 - spatial_after / spatial_before; }
  double slice_delta() const { return 1.0 - static_cast<double>(slices_after) / slices_before; }
  double product_delta() const { return 1.0 - product_after / product_before; }
};

ReductionRecord record_scan(const std::string& scan_id, int height, int width,
                            const CropRect& crop, const SliceWindow& window, int n_slices);

// Per-slice-crop variant: spatial_after is supplied directly (mean applied
// crop area).
ReductionRecord record_scan(const std::string& scan_id, int height, int width,
                            double spatial_after, const SliceWindow& window, int n_slices);

// Associative sum/count carrier so shard aggregates merge exactly.
struct GroupAccumulator {
  std::string key;
  long count = 0;
  double sum_spatial_before = 0.0, sum_spatial_after = 0.0;
  double sum_slices_before = 0.0, sum_slices_after = 0.0;
  double sum_product_before = 0.0, sum_product_after = 0.0;
  double sum_spatial_delta = 0.0, sum_slice_delta = 0.0, sum_product_delta = 0.0;

  void add(const ReductionRecord& r);
  void merge(const GroupAccumulator& other);
};

struct AggregateReport {
  std::string key;
  long count = 0;
  double mean_spatial_before = 0.0, mean_spatial_after = 0.0;
  double mean_slices_before = 0.0, mean_slices_after = 0.0;
  double mean_product_before = 0.0, mean_product_after = 0.0;
  // Delta of grouped means (the headline figure) and mean of per-scan deltas.
  double spatial_delta = 0.0, slice_delta = 0.0, product_delta = 0.0;
  double mean_spatial_delta = 0.0, mean_slice_delta = 0.0, mean_product_delta = 0.0;
};

AggregateReport finalize(const GroupAccumulator& acc);

enum class GroupBy { kTotal, kLabel };

std::vector<AggregateReport> aggregate(const std::vector<ReductionRecord>& records,
                                       GroupBy group_by);

// JSON document (schema 1) with per-scan records and aggregates.
std::string render_json(const std::vector<ReductionRecord>& records,
                        const std::vector<AggregateReport>& aggregates);

// Aligned text table: Before/After/Delta per group for spatial area (K),
// slice length, and their product (M).
std::string render_text(const std::vector<AggregateReport>& aggregates);

}  // namespace report
}  // namespace ctslim
