#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gaitlock {

// counts[i][j]: samples of true class i predicted as class j.
struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<std::size_t>> counts;

  std::size_t total() const;
  std::size_t trace() const;
};

// Classes are the sorted union of both label lists.
ConfusionMatrix evaluate(std::span<const std::string> truth, std::span<const std::string> predicted);

struct ClassMeasures {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

// TP / (TP + FP), TP / (TP + FN) and their harmonic mean; zero denominators give 0.
ClassMeasures class_measures(const ConfusionMatrix& cm, std::size_t cls);

// Accuracy is trace / total. Precision and recall are unweighted means of
// the per-class values; the F-measure combines those two means.
struct Measures {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

Measures measures(const ConfusionMatrix& cm);

double f_measure(double precision, double recall);

} // namespace gaitlock
