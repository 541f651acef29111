#include "ctslim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include <nlohmann/json.hpp>

namespace ctslim {
namespace report {

using nlohmann::json;

ReductionRecord record_scan(const std::string& scan_id, int height, int width,
                            const CropRect& crop, const SliceWindow& window, int n_slices) {
  return record_scan(scan_id, height, width, static_cast<double>(crop.area()), window, n_slices);
}

ReductionRecord record_scan(const std::string& scan_id, int height, int width,
                            double spatial_after, const SliceWindow& window, int n_slices) {
  if (height < 1 || width < 1 || n_slices < 1) throw Error("record_scan: bad scan dimensions");
  ReductionRecord r;
  r.scan_id = scan_id;
  r.spatial_before = static_cast<double>(height) * width;
  r.spatial_after = spatial_after;
  r.slices_before = n_slices;
  r.slices_after = window.length();
  r.product_before = r.spatial_before * n_slices;
  r.product_after = r.spatial_after * window.length();
  return r;
}

void GroupAccumulator::add(const ReductionRecord& r) {
  count += 1;
  sum_spatial_before += r.spatial_before;
  sum_spatial_after += r.spatial_after;
  sum_slices_before += r.slices_before;
  sum_slices_after += r.slices_after;
  sum_product_before += r.product_before;
  sum_product_after += r.product_after;
  sum_spatial_delta += r.spatial_delta();
  sum_slice_delta += r.slice_delta();
  sum_product_delta += r.product_delta();
}

void GroupAccumulator::merge(const GroupAccumulator& other) {
  count += other.count;
  sum_spatial_before += other.sum_spatial_before;
  sum_spatial_after += other.sum_spatial_after;
  sum_slices_before += other.sum_slices_before;
  sum_slices_after += other.sum_slices_after;
  sum_product_before += other.sum_product_before;
  sum_product_after += other.sum_product_after;
  sum_spatial_delta += other.sum_spatial_delta;
  sum_slice_delta += other.sum_slice_delta;
  sum_product_delta += other.sum_product_delta;
}

AggregateReport finalize(const GroupAccumulator& acc) {
  if (acc.count == 0) throw Error("aggregate: empty group");
  const double n = static_cast<double>(acc.count);
  AggregateReport rep;
  rep.key = acc.key;
  rep.count = acc.count;
  rep.mean_spatial_before = acc.sum_spatial_before / n;
  rep.mean_spatial_after = acc.sum_spatial_after / n;
  rep.mean_slices_before = acc.sum_slices_before / n;
  rep.mean_slices_after = acc.sum_slices_after / n;
  rep.mean_product_before = acc.sum_product_before / n;
  rep.mean_product_after = acc.sum_product_after / n;
  rep.spatial_delta = 1.0 - rep.mean_spatial_after / rep.mean_spatial_before;
  rep.slice_delta = 1.0 - rep.mean_slices_after / rep.mean_slices_before;
  rep.product_delta = 1.0 - rep.mean_product_after / rep.mean_product_before;
  rep.mean_spatial_delta = acc.sum_spatial_delta / n;
  rep.mean_slice_delta = acc.sum_slice_delta / n;
  rep.mean_product_delta = acc.sum_product_delta / n;
  return rep;
}

std::vector<AggregateReport> aggregate(const std::vector<ReductionRecord>& records,
                                       GroupBy group_by) {
  if (records.empty()) throw Error("aggregate: no records");
  std::map<std::string, GroupAccumulator> groups;
  for (const auto& r : records) {
    const std::string key = group_by == GroupBy::kTotal ? "total" : "label:" + r.label;
    auto& acc = groups[key];
    acc.key = key;
    acc.add(r);
  }
  std::vector<AggregateReport> out;
  out.reserve(groups.size());
  for (const auto& [key, acc] : groups) out.push_back(finalize(acc));
  return out;
}

namespace {

json to_json(const ReductionRecord& r) {
  return json{{"scan_id", r.scan_id},
              {"label", r.label},
              {"spatial_before", r.spatial_before},
              {"spatial_after", r.spatial_after},
              {"slices_before", r.slices_before},
              {"slices_after", r.slices_after},
              {"product_before", r.product_before},
              {"product_after", r.product_after},
              {"spatial_delta", r.spatial_delta()},
              {"slice_delta", r.slice_delta()},
              {"product_delta", r.product_delta()}};
}

json to_json(const AggregateReport& a) {
  return json{{"group", a.key},
              {"count", a.count},
              {"mean_spatial_before", a.mean_spatial_before},
              {"mean_spatial_after", a.mean_spatial_after},
              {"mean_slices_before", a.mean_slices_before},
              {"mean_slices_after", a.mean_slices_after},
              {"mean_product_before", a.mean_product_before},
              {"mean_product_after", a.mean_product_after},
              {"delta_of_means",
               {{"spatial", a.spatial_delta}, {"slice", a.slice_delta}, {"product", a.product_delta}}},
              {"mean_of_deltas",
               {{"spatial", a.mean_spatial_delta},
                {"slice", a.mean_slice_delta},
                {"product", a.mean_product_delta}}}};
}

}  // namespace

std::string render_json(const std::vector<ReductionRecord>& records,
                        const std::vector<AggregateReport>& aggregates) {
  json doc;
  doc["schema"] = 1;
  doc["records"] = json::array();
  for (const auto& r : records) doc["records"].push_back(to_json(r));
  doc["aggregates"] = json::array();
  for (const auto& a : aggregates) doc["aggregates"].push_back(to_json(a));
  return doc.dump(2) + "\n";
}

std::string render_text(const std::vector<AggregateReport>& aggregates) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-16s %6s | %28s | %28s | %28s\n", "Group", "Scans",
                "Spatial Area (K)", "Slice Length", "Spatial x Slice (M)");
  out += line;
  std::snprintf(line, sizeof(line), "%-16s %6s | %9s %9s %8s | %9s %9s %8s | %9s %9s %8s\n", "", "",
                "Before", "After", "Delta", "Before", "After", "Delta", "Before", "After", "Delta");
  out += line;
  out += std::string(16 + 1 + 6 + 3 * 31 + 2, '-') + "\n";
  for (const auto& a : aggregates) {
    std::snprintf(line, sizeof(line),
                  "%-16s %6ld | %9.2f %9.2f %8.4f | %9.2f %9.2f %8.4f | %9.2f %9.2f %8.4f\n",
                  a.key.c_str(), a.count, a.mean_spatial_before / 1e3, a.mean_spatial_after / 1e3,
                  a.spatial_delta, a.mean_slices_before, a.mean_slices_after, a.slice_delta,
                  a.mean_product_before / 1e6, a.mean_product_after / 1e6, a.product_delta);
    out += line;
  }
  return out;
}

}  // namespace report
}  // namespace ctslim
