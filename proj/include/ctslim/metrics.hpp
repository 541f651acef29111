#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctslim/image.hpp"

namespace ctslim {
namespace metrics {

struct PredictionRecord {
  std::string id;
  int y = 0;          // actual label, 0 or 1
  double y_hat = 0.0; // predicted probability
};

// Mean binary cross-entropy; probabilities clamped to [1e-7, 1 - 1e-7].
double bce_loss(const std::vector<PredictionRecord>& records);

struct F1Report {
  long tp = 0, fp = 0, fn = 0, tn = 0;
  double precision_pos = 0.0, recall_pos = 0.0, f1_pos = 0.0;
  double precision_neg = 0.0, recall_neg = 0.0, f1_neg = 0.0;
  double macro_f1 = 0.0;
  bool zero_division = false;  // some 0/0 ratio was defined as 0
};

// Binarizes y_hat at the threshold (>= means positive) and scores both
// classes; 0/0 ratios count as 0 and set the flag.
F1Report f1_score(const std::vector<PredictionRecord>& records, double threshold = 0.5);

// Rank-based (Mann-Whitney) AUC with average ranks for ties. Empty when one
// class is absent.
std::optional<double> rank_auc(const std::vector<PredictionRecord>& records);

// Scan-level aggregation: slice ids of the form `<scan>/<slice>` group by the
// prefix; each group's probability is the mean over its slices. Groups with
// conflicting labels are an error.
std::vector<PredictionRecord> aggregate_by_scan(const std::vector<PredictionRecord>& slice_records);

// Delimited text inputs, header line optional, comma or whitespace separated.
// A predictions file is `id,probability` or `id,label,probability`; a labels
// file is `id,label` or `id,label,probability`.
std::vector<std::pair<std::string, double>> read_id_value_file(const std::filesystem::path& path,
                                                               bool want_label);

// Joins predictions with labels by id; throws on missing or duplicate ids.
std::vector<PredictionRecord> join_predictions(const std::filesystem::path& predictions,
                                               const std::filesystem::path& labels);

}  // namespace metrics
}  // namespace ctslim
