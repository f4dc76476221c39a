#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace gaitlock {

using Sample = std::vector<double>;

enum class KernelKind { Linear, Polynomial, Rbf };

std::string to_string(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& text);

struct KernelSpec {
  KernelKind kind = KernelKind::Linear;
  int degree = 1;     // Polynomial only
  double sigma = 1.0; // Rbf only, exp(-|x-y|^2 / (2 sigma^2))
  double c = 1.0;     // soft-margin penalty

  static KernelSpec linear(double c);
  static KernelSpec polynomial(double c, int degree);
  static KernelSpec rbf(double c, double sigma);

  void validate() const;
  std::string describe() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

struct SmoOptions {
  double tol = 1e-3;
  int max_passes = 10;
  std::uint64_t seed = 0;
  // Cap on polishing iterations; 0 picks max(100000, 1000 n).
  std::size_t max_iterations = 0;
};

// One two-class machine. f(x) = sum_i coefficients[i] K(sv_i, x) + bias;
// f > 0 votes for `positive`.
struct BinarySvm {
  std::vector<Sample> support_vectors;
  std::vector<double> coefficients;        // alpha_i * y_i
  std::vector<std::size_t> support_indices; // positions in the training set
  double bias = 0.0;
  KernelSpec kernel;
  std::string positive = "+1";
  std::string negative = "-1";

  double decision(std::span<const double> x) const;
};

// Labels must be +1 / -1 and both present.
BinarySvm train_binary(std::span<const Sample> samples, std::span<const int> labels, const KernelSpec& spec,
                       const SmoOptions& options = {});

struct KktReport {
  double max_violation = 0.0;     // worst KKT slack in units of y f(x) - 1
  double max_box_excess = 0.0;    // worst amount by which alpha leaves [0, c]
  double equality_residual = 0.0; // |sum alpha_i y_i|
};

KktReport check_kkt(const BinarySvm& machine, std::span<const Sample> samples, std::span<const int> labels);

// Per-dimension z-score; dimensions without spread keep scale 1.
struct Normalization {
  std::vector<double> mean;
  std::vector<double> scale;

  static Normalization fit(std::span<const Sample> samples);
  Sample apply(std::span<const double> x) const;
  std::size_t dimension() const noexcept { return mean.size(); }
};

struct SvmModel {
  std::vector<std::string> classes; // sorted
  Normalization normalization;
  std::vector<BinarySvm> machines;  // one per class pair (i < j), row-major

  std::size_t dimension() const noexcept { return normalization.dimension(); }
};

// Labels must not contain whitespace (they are written to the model file).
SvmModel train_multiclass(std::span<const Sample> samples, std::span<const std::string> labels,
                          const KernelSpec& spec, const SmoOptions& options = {});

struct PredictionDetail {
  std::string label;
  std::vector<int> votes;             // per class
  std::vector<double> decision_sums;  // summed |f| of the votes each class won
};

PredictionDetail predict_detail(const SvmModel& model, std::span<const double> x);
std::string predict(const SvmModel& model, std::span<const double> x);

// Recomputes each machine's pair subset from the raw training data and checks it.
std::vector<KktReport> check_model_kkt(const SvmModel& model, std::span<const Sample> samples,
                                       std::span<const std::string> labels);

std::string serialize_model(const SvmModel& model);
SvmModel parse_model(const std::string& text);
void save_model(const SvmModel& model, const std::filesystem::path& path);
SvmModel load_model(const std::filesystem::path& path);

} // namespace gaitlock
