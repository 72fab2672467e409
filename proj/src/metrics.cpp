#include "casepunct/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "casepunct/errors.hpp"

namespace casepunct {

ConfusionMatrix::ConfusionMatrix(int num_classes)
    : num_classes_(num_classes),
      counts_(static_cast<size_t>(num_classes) * num_classes, 0) {
  if (num_classes <= 0) {
    raise(ErrorCode::InvalidArgument, "confusion matrix needs >= 1 class");
  }
}

ConfusionMatrix ConfusionMatrix::from_labels(std::span<const int> gold,
                                             std::span<const int> pred,
                                             int num_classes) {
  if (gold.size() != pred.size()) {
    raise(ErrorCode::LengthMismatch,
          "gold has " + std::to_string(gold.size()) + " labels, pred has " +
              std::to_string(pred.size()));
  }
  ConfusionMatrix cm(num_classes);
  for (size_t i = 0; i < gold.size(); ++i) {
    cm.add(gold[i], pred[i]);
  }
  return cm;
}

void ConfusionMatrix::add(int gold, int pred, long long count) {
  if (gold < 0 || gold >= num_classes_ || pred < 0 || pred >= num_classes_) {
    raise(ErrorCode::UnknownLabel,
          "label outside schema of " + std::to_string(num_classes_) +
              " classes");
  }
  counts_[static_cast<size_t>(gold) * num_classes_ + pred] += count;
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
  if (other.num_classes_ != num_classes_) {
    raise(ErrorCode::SchemaMismatch, "merging matrices of different schemas");
  }
  for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

long long ConfusionMatrix::at(int gold, int pred) const {
  return counts_[static_cast<size_t>(gold) * num_classes_ + pred];
}

long long ConfusionMatrix::total() const {
  long long t = 0;
  for (long long c : counts_) t += c;
  return t;
}

double macro_mean(std::span<const double> class_f1_percent) {
  double sum = 0.0;
  for (double f : class_f1_percent) sum += f;
  return sum / static_cast<double>(class_f1_percent.size());
}

EvalReport report(const ConfusionMatrix& cm,
                  std::span<const std::string_view> class_names,
                  const std::string& task) {
  if (cm.total() == 0) {
    raise(ErrorCode::EmptyMatrix, "no scored words");
  }
  const int n = cm.num_classes();
  EvalReport r;
  r.task = task;
  r.total = cm.total();

  std::vector<double> f1s;
  f1s.reserve(n);
  for (int c = 0; c < n; ++c) {
    long long tp = cm.at(c, c);
    long long gold = 0;
    long long predicted = 0;
    for (int k = 0; k < n; ++k) {
      gold += cm.at(c, k);
      predicted += cm.at(k, c);
    }
    ClassMetrics m;
    m.label = std::string(class_names[c]);
    m.support = gold;
    const double p = predicted > 0 ? static_cast<double>(tp) / predicted : 0.0;
    const double rec = gold > 0 ? static_cast<double>(tp) / gold : 0.0;
    m.precision = 100.0 * p;
    m.recall = 100.0 * rec;
    m.f1 = (p + rec) > 0.0 ? 100.0 * (2.0 * p * rec / (p + rec)) : 0.0;
    f1s.push_back(m.f1);
    r.classes.push_back(std::move(m));
  }
  // Macro F1 averages over the full schema, zero-support classes included.
  r.macro_f1 = macro_mean(f1s);
  return r;
}

EvalReport report_casing(const ConfusionMatrix& cm) {
  return report(cm, kCasingNames, "casing");
}

EvalReport report_punct(const ConfusionMatrix& cm) {
  return report(cm, kPunctNames, "punctuation");
}

DeltaTable compare_reports(const EvalReport& a, const EvalReport& b) {
  if (a.task != b.task || a.classes.size() != b.classes.size()) {
    raise(ErrorCode::SchemaMismatch,
          "comparing " + a.task + " report against " + b.task);
  }
  for (size_t i = 0; i < a.classes.size(); ++i) {
    if (a.classes[i].label != b.classes[i].label) {
      raise(ErrorCode::SchemaMismatch,
            "class mismatch at index " + std::to_string(i));
    }
  }
  DeltaTable d;
  d.task = a.task;
  for (size_t i = 0; i < a.classes.size(); ++i) {
    d.labels.push_back(a.classes[i].label);
    d.f1_delta.push_back(a.classes[i].f1 - b.classes[i].f1);
  }
  d.macro_delta = a.macro_f1 - b.macro_f1;
  return d;
}

std::string format_percent(double value) {
  // Half-up at the second decimal.
  const double sign = value < 0 ? -1.0 : 1.0;
  const double rounded = sign * std::floor(std::abs(value) * 100.0 + 0.5) / 100.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", rounded);
  return buf;
}

namespace {

void append_row(std::string& out, const std::vector<std::string>& cells,
                const std::vector<size_t>& widths) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += "  ";
    const std::string& c = cells[i];
    if (c.size() < widths[i]) out.append(widths[i] - c.size(), ' ');
    out += c;
  }
  out += '\n';
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::string out;
  for (const auto& row : rows) append_row(out, row, widths);
  return out;
}

}  // namespace

std::string render_report_table(const EvalReport& r) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({r.task, "Prec.", "Recall", "F1", "Support"});
  for (const auto& c : r.classes) {
    rows.push_back({c.label, format_percent(c.precision),
                    format_percent(c.recall), format_percent(c.f1),
                    std::to_string(c.support)});
  }
  rows.push_back({"Macro F1", "", "", format_percent(r.macro_f1), ""});
  return render_table(rows);
}

std::string render_delta_table(const DeltaTable& d) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({d.task, "F1 delta"});
  for (size_t i = 0; i < d.labels.size(); ++i) {
    rows.push_back({d.labels[i], format_percent(d.f1_delta[i])});
  }
  rows.push_back({"Macro F1", format_percent(d.macro_delta)});
  return render_table(rows);
}

}  // namespace casepunct
