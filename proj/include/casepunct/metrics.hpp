#pragma once

#include <span>
#include <string>
#include <vector>

#include "casepunct/labels.hpp"

namespace casepunct {

// Square gold-by-predicted count matrix over a task's full label schema.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int num_classes);

  static ConfusionMatrix from_labels(std::span<const int> gold,
                                     std::span<const int> pred,
                                     int num_classes);

  void add(int gold, int pred, long long count = 1);
  void merge(const ConfusionMatrix& other);

  long long at(int gold, int pred) const;
  int num_classes() const { return num_classes_; }
  long long total() const;

 private:
  int num_classes_;
  std::vector<long long> counts_;  // row-major [gold * n + pred]
};

struct ClassMetrics {
  std::string label;
  double precision = 0.0;  // percent
  double recall = 0.0;     // percent
  double f1 = 0.0;         // percent
  long long support = 0;   // gold count
};

struct EvalReport {
  std::string task;  // "casing" or "punctuation"
  std::vector<ClassMetrics> classes;
  double macro_f1 = 0.0;  // percent, unweighted mean over all schema classes
  long long total = 0;
};

// Unweighted mean over the full schema, zero-support classes included.
double macro_mean(std::span<const double> class_f1_percent);

EvalReport report(const ConfusionMatrix& cm,
                  std::span<const std::string_view> class_names,
                  const std::string& task);

EvalReport report_casing(const ConfusionMatrix& cm);
EvalReport report_punct(const ConfusionMatrix& cm);

struct DeltaTable {
  std::string task;
  std::vector<std::string> labels;
  std::vector<double> f1_delta;  // a - b, percent
  double macro_delta = 0.0;
};

DeltaTable compare_reports(const EvalReport& a, const EvalReport& b);

// Half-up rounding to two decimals, as the report tables print.
std::string format_percent(double value);

std::string render_report_table(const EvalReport& r);
std::string render_delta_table(const DeltaTable& d);

}  // namespace casepunct
