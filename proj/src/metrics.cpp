#include "gaitlock/metrics.hpp"

#include "gaitlock/error.hpp"

#include <algorithm>
#include <set>

namespace gaitlock {

std::size_t ConfusionMatrix::total() const {
  std::size_t n = 0;
  for (const auto& row : counts)
    for (auto c : row) n += c;
  return n;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) n += counts[i][i];
  return n;
}

ConfusionMatrix evaluate(std::span<const std::string> truth, std::span<const std::string> predicted) {
  if (truth.size() != predicted.size())
    throw Error(ErrorCode::LengthMismatch, "truth and prediction lists differ in length");
  if (truth.empty()) throw Error(ErrorCode::Empty, "nothing to evaluate");
  std::set<std::string> labels(truth.begin(), truth.end());
  labels.insert(predicted.begin(), predicted.end());

  ConfusionMatrix cm;
  cm.classes.assign(labels.begin(), labels.end());
  const std::size_t k = cm.classes.size();
  cm.counts.assign(k, std::vector<std::size_t>(k, 0));
  auto index = [&](const std::string& l) {
    return static_cast<std::size_t>(std::lower_bound(cm.classes.begin(), cm.classes.end(), l) - cm.classes.begin());
  };
  for (std::size_t i = 0; i < truth.size(); ++i) ++cm.counts[index(truth[i])][index(predicted[i])];
  return cm;
}

double f_measure(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

ClassMeasures class_measures(const ConfusionMatrix& cm, std::size_t cls) {
  const std::size_t k = cm.classes.size();
  if (cls >= k) throw Error(ErrorCode::InvalidArgument, "class index out of range");
  const double tp = static_cast<double>(cm.counts[cls][cls]);
  double predicted = 0.0, actual = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    predicted += static_cast<double>(cm.counts[j][cls]);
    actual += static_cast<double>(cm.counts[cls][j]);
  }
  ClassMeasures m;
  m.precision = predicted > 0.0 ? tp / predicted : 0.0;
  m.recall = actual > 0.0 ? tp / actual : 0.0;
  m.f_measure = f_measure(m.precision, m.recall);
  return m;
}

Measures measures(const ConfusionMatrix& cm) {
  const std::size_t total = cm.total();
  if (total == 0) throw Error(ErrorCode::Empty, "confusion matrix holds no samples");
  const std::size_t k = cm.classes.size();
  Measures m;
  m.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);
  for (std::size_t c = 0; c < k; ++c) {
    const auto cls = class_measures(cm, c);
    m.precision += cls.precision;
    m.recall += cls.recall;
  }
  m.precision /= static_cast<double>(k);
  m.recall /= static_cast<double>(k);
  m.f_measure = f_measure(m.precision, m.recall);
  return m;
}

} // namespace gaitlock
