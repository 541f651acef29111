#include "ctslim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace ctslim {
namespace metrics {

namespace {

constexpr double kEps = 1e-7;

double safe_ratio(long num, long den, bool& flagged) {
  if (den == 0) {
    flagged = true;
    return 0.0;
  }
  return static_cast<double>(num) / den;
}

double f1_from(double precision, double recall, bool& flagged) {
  if (precision + recall == 0.0) {
    flagged = true;
    return 0.0;
  }
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

double bce_loss(const std::vector<PredictionRecord>& records) {
  if (records.empty()) throw Error("bce_loss: no records");
  double sum = 0.0;
  for (const auto& r : records) {
    const double p = std::clamp(r.y_hat, kEps, 1.0 - kEps);
    sum += r.y * std::log(p) + (1 - r.y) * std::log(1.0 - p);
  }
  return -sum / static_cast<double>(records.size());
}

F1Report f1_score(const std::vector<PredictionRecord>& records, double threshold) {
  if (records.empty()) throw Error("f1_score: no records");
  if (threshold <= 0.0 || threshold >= 1.0) throw Error("f1_score: threshold must be in (0, 1)");
  F1Report rep;
  for (const auto& r : records) {
    const bool pred = r.y_hat >= threshold;
    if (r.y == 1)
      (pred ? rep.tp : rep.fn)++;
    else
      (pred ? rep.fp : rep.tn)++;
  }
  rep.precision_pos = safe_ratio(rep.tp, rep.tp + rep.fp, rep.zero_division);
  rep.recall_pos = safe_ratio(rep.tp, rep.tp + rep.fn, rep.zero_division);
  rep.f1_pos = f1_from(rep.precision_pos, rep.recall_pos, rep.zero_division);
  // Negative class: the same formulas with "negative" as the target class.
  rep.precision_neg = safe_ratio(rep.tn, rep.tn + rep.fn, rep.zero_division);
  rep.recall_neg = safe_ratio(rep.tn, rep.tn + rep.fp, rep.zero_division);
  rep.f1_neg = f1_from(rep.precision_neg, rep.recall_neg, rep.zero_division);
  rep.macro_f1 = 0.5 * (rep.f1_pos + rep.f1_neg);
  return rep;
}

std::optional<double> rank_auc(const std::vector<PredictionRecord>& records) {
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return records[a].y_hat < records[b].y_hat; });

  long n_pos = 0, n_neg = 0;
  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && records[order[j]].y_hat == records[order[i]].y_hat) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (std::size_t k = i; k < j; ++k) {
      if (records[order[k]].y == 1) {
        ++n_pos;
        pos_rank_sum += avg_rank;
      } else {
        ++n_neg;
      }
    }
    i = j;
  }
  if (n_pos == 0 || n_neg == 0) return std::nullopt;
  return (pos_rank_sum - 0.5 * n_pos * (n_pos + 1.0)) / (static_cast<double>(n_pos) * n_neg);
}

std::vector<PredictionRecord> aggregate_by_scan(const std::vector<PredictionRecord>& slice_records) {
  struct Group {
    double prob_sum = 0.0;
    long count = 0;
    int label = -1;
  };
  std::map<std::string, Group> groups;
  for (const auto& r : slice_records) {
    const auto slash = r.id.rfind('/');
    const std::string scan = slash == std::string::npos ? r.id : r.id.substr(0, slash);
    auto& g = groups[scan];
    if (g.label >= 0 && g.label != r.y) throw Error("conflicting labels within scan " + scan);
    g.label = r.y;
    g.prob_sum += r.y_hat;
    g.count += 1;
  }
  std::vector<PredictionRecord> out;
  out.reserve(groups.size());
  for (const auto& [scan, g] : groups)
    out.push_back({scan, g.label, g.prob_sum / static_cast<double>(g.count)});
  return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  if (line.find(',') != std::string::npos) {
    while (std::getline(ss, field, ',')) {
      const auto b = field.find_first_not_of(" \t\r");
      const auto e = field.find_last_not_of(" \t\r");
      fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
  } else {
    while (ss >> field) fields.push_back(field);
  }
  return fields;
}

std::optional<double> parse_number(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

double parse_label_field(const std::string& s, const std::filesystem::path& path) {
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  if (lower == "positive" || lower == "covid") return 1.0;
  if (lower == "negative" || lower == "non-covid") return 0.0;
  const auto v = parse_number(s);
  if (!v || (*v != 0.0 && *v != 1.0))
    throw Error("bad label '" + s + "' in " + path.string());
  return *v;
}

}  // namespace

std::vector<std::pair<std::string, double>> read_id_value_file(const std::filesystem::path& path,
                                                               bool want_label) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::pair<std::string, double>> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    // 2 columns: id,value. 3 columns: id,label,probability.
    std::string value_field;
    if (fields.size() == 2)
      value_field = fields[1];
    else if (fields.size() == 3)
      value_field = want_label ? fields[1] : fields[2];
    else
      throw Error("expected 2 or 3 columns in " + path.string() + ": " + line);

    if (first) {
      first = false;
      // Header detection: a non-numeric, non-label value field.
      if (!parse_number(value_field)) {
        std::string lower = value_field;
        std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
        if (lower != "positive" && lower != "negative" && lower != "covid" &&
            lower != "non-covid")
          continue;
      }
    }
    const double v = want_label ? parse_label_field(value_field, path)
                                : parse_number(value_field).value_or(-1.0);
    if (!want_label && (v < 0.0 || v > 1.0))
      throw Error("bad probability '" + value_field + "' in " + path.string());
    out.emplace_back(fields[0], v);
  }
  if (out.empty()) throw Error("no records in " + path.string());
  return out;
}

std::vector<PredictionRecord> join_predictions(const std::filesystem::path& predictions,
                                               const std::filesystem::path& labels) {
  const auto preds = read_id_value_file(predictions, false);
  const auto labs = read_id_value_file(labels, true);

  std::map<std::string, double> label_by_id;
  for (const auto& [id, v] : labs) {
    if (!label_by_id.emplace(id, v).second) throw Error("duplicate id in labels: " + id);
  }
  std::vector<PredictionRecord> out;
  out.reserve(preds.size());
  std::map<std::string, bool> seen;
  for (const auto& [id, p] : preds) {
    const auto it = label_by_id.find(id);
    if (it == label_by_id.end()) throw Error("prediction id has no label: " + id);
    if (!seen.emplace(id, true).second) throw Error("duplicate id in predictions: " + id);
    out.push_back({id, static_cast<int>(it->second), p});
  }
  if (out.size() != label_by_id.size()) {
    for (const auto& [id, v] : label_by_id)
      if (!seen.count(id)) throw Error("label id has no prediction: " + id);
  }
  return out;
}

}  // namespace metrics
}  // namespace ctslim
