#pragma once

#include "gaitlock/background.hpp"
#include "gaitlock/features.hpp"
#include "gaitlock/metrics.hpp"
#include "gaitlock/svm.hpp"
#include "gaitlock/synthgait.hpp"
#include "gaitlock/threshold.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace gaitlock {

// Flat `key = value` text with `#` comments.
class KeyValueConfig {
public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  const std::map<std::string, std::string>& values() const { return values_; }

private:
  std::map<std::string, std::string> values_;
};

WalkerSpec walker_from_config(const KeyValueConfig& cfg);
SceneSpec scene_from_config(const KeyValueConfig& cfg);

struct SweepGrid {
  std::vector<double> c = {0.1, 1.0, 10.0, 100.0};
  std::vector<int> degree = {2, 3};
  std::vector<double> sigma = {0.5, 1.0, 2.0, 5.0};
};

struct PipelineConfig {
  std::filesystem::path dataset;  // <dataset>/<subject>/<sequence>/frame_NNNN.pgm
  std::filesystem::path workdir;  // features.csv, model.txt, gallery.csv, report.txt
  BackgroundTechnique background = BackgroundTechnique::Median;
  Threshold background_threshold = Threshold::automatic();
  Threshold segment_threshold = Threshold::automatic();
  double fps = 25.0;
  KernelSpec kernel = KernelSpec::rbf(10.0, 2.0);
  SweepGrid grid;
  double split = 0.75;
  std::uint64_t seed = 1;
  double tol = 1e-3;
  int max_passes = 10;
  bool resume = false;

  static PipelineConfig from(const KeyValueConfig& cfg);
  void validate() const;
  // Fully resolved settings, one `key = value` per line, sorted by key.
  std::string describe() const;
  SmoOptions smo() const;
};

struct FeatureRecord {
  std::string subject;
  std::string sequence;
  std::vector<double> values; // 14 fused features
};

// Features CSV: subject_id,sequence_id then the 14 named columns.
std::string features_csv(std::span<const FeatureRecord> records);
std::vector<FeatureRecord> parse_features_csv(const std::string& text);
void write_features_csv(const std::filesystem::path& path, std::span<const FeatureRecord> records);
std::vector<FeatureRecord> read_features_csv(const std::filesystem::path& path);

// Labels CSV: subject_id,sequence_id,label keyed by (subject_id, sequence_id).
std::map<std::pair<std::string, std::string>, std::string> read_labels_csv(const std::filesystem::path& path);

struct SequenceRef {
  std::string subject;
  std::string sequence;
  std::filesystem::path directory;
};

std::vector<SequenceRef> discover_dataset(const std::filesystem::path& root);

// Background model, silhouettes and the analysis that yields the features.
struct SequenceResult {
  BackgroundModel background;
  std::vector<SilhouetteMask> silhouettes;
  SequenceAnalysis analysis;
};

SequenceResult process_sequence(const FrameSequence& seq, const PipelineConfig& cfg);
FeatureRecord extract_sequence_features(const SequenceRef& ref, const PipelineConfig& cfg);
std::vector<FeatureRecord> extract_dataset_features(const PipelineConfig& cfg);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Per subject: shuffle its sequences with the seed and keep
// clamp(round(fraction * n), 1, n - 1) of them for training.
Split split_records(std::span<const FeatureRecord> records, double fraction, std::uint64_t seed);

struct GalleryEntry {
  std::string subject;
  std::vector<double> mean;
};
std::vector<GalleryEntry> build_gallery(std::span<const FeatureRecord> records, std::span<const std::size_t> which);
void write_gallery_csv(const std::filesystem::path& path, std::span<const GalleryEntry> gallery);

struct Evaluation {
  std::vector<std::string> truth;
  std::vector<std::string> predicted;
  ConfusionMatrix confusion;
  Measures measures;
};

Evaluation evaluate_model(const SvmModel& model, std::span<const FeatureRecord> records,
                          std::span<const std::size_t> which, FeatureSet set = FeatureSet::All);
SvmModel train_on(std::span<const FeatureRecord> records, std::span<const std::size_t> which,
                  const KernelSpec& kernel, const SmoOptions& smo, FeatureSet set = FeatureSet::All);

std::string format_evaluation(const Evaluation& eval);

struct PipelineReport {
  std::string text;
  Evaluation evaluation;
  SvmModel model;
  std::vector<FeatureRecord> records;
  Split split;
};

// background -> segmentation -> cycles -> features -> train -> evaluate.
// Writes features.csv, model.txt, gallery.csv and report.txt into workdir.
PipelineReport run_pipeline(const PipelineConfig& cfg);

struct AblationRow {
  FeatureSet set;
  std::size_t dimension;
  double accuracy;
};
std::vector<AblationRow> run_ablation(const PipelineConfig& cfg);
std::string ablation_csv(std::span<const AblationRow> rows);

struct SweepRow {
  KernelKind kind;
  std::size_t evaluations;
  double best_accuracy;
  KernelSpec best;
};
std::vector<SweepRow> run_kernel_sweep(const PipelineConfig& cfg);
// Sweep over already-extracted features with a fixed split.
std::vector<SweepRow> kernel_sweep(std::span<const FeatureRecord> records, const Split& split,
                                   const SweepGrid& grid, const SmoOptions& smo);
std::string sweep_csv(std::span<const SweepRow> rows);

} // namespace gaitlock
