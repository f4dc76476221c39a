// gaitlock: command line front end for the gait recognition pipeline.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include "gaitlock/error.hpp"
#include "gaitlock/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace gaitlock;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  bool resume = false;
  bool quiet = false;
};

void note(const Globals& g, const std::string& msg) {
  if (!g.quiet) std::cerr << msg << "\n";
}

KeyValueConfig base_config(const Globals& g) {
  auto cfg = g.config.empty() ? KeyValueConfig{} : KeyValueConfig::load(g.config);
  if (g.seed) cfg.set("seed", std::to_string(*g.seed));
  if (g.resume) cfg.set("resume", "true");
  return cfg;
}

std::vector<SilhouetteMask> load_silhouettes(const fs::path& dir, double fps) {
  const auto seq = load_sequence(dir, fps);
  std::vector<SilhouetteMask> masks;
  masks.reserve(seq.size());
  for (const auto& f : seq.frames()) masks.push_back(SilhouetteMask::from_frame(f));
  return masks;
}

void print_csv_line(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) std::cout << (i ? "," : "") << cells[i];
  std::cout << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaitlock - gait recognition from side-view silhouettes"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Key-value configuration file");
  app.add_option("--seed", g.seed, "Seed for splits, solver and synthesis");
  app.add_flag("--resume", g.resume, "Reuse stage outputs already present in the work directory");
  app.add_flag("--quiet", g.quiet, "Suppress progress notes on stderr");

  // background
  std::string technique = "median", threshold = "auto";
  fs::path in_dir, out_path, bg_path;
  double fps = 25.0;
  auto* bg_cmd = app.add_subcommand("background", "Estimate a reference background image");
  bg_cmd->add_option("--technique", technique)->check(CLI::IsMember({"cdm", "median", "histogram"}));
  bg_cmd->add_option("--threshold", threshold, "CDM change threshold: auto or 0..255");
  bg_cmd->add_option("--in", in_dir)->required();
  bg_cmd->add_option("--out", out_path)->required();

  // segment
  std::string seg_threshold = "auto";
  auto* seg_cmd = app.add_subcommand("segment", "Extract cleaned silhouettes against a background");
  seg_cmd->add_option("--bg", bg_path)->required();
  seg_cmd->add_option("--threshold", seg_threshold, "auto or 0..255");
  seg_cmd->add_option("--in", in_dir)->required();
  seg_cmd->add_option("--out", out_path)->required();

  // cycles
  auto* cyc_cmd = app.add_subcommand("cycles", "Estimate the gait period of a silhouette sequence");
  cyc_cmd->add_option("--in", in_dir)->required();
  cyc_cmd->add_option("--fps", fps);

  // features
  std::string subject, sequence;
  bool append = false;
  auto* feat_cmd = app.add_subcommand("features", "Compute the 14 fused features of a silhouette sequence");
  feat_cmd->add_option("--in", in_dir)->required();
  feat_cmd->add_option("--fps", fps);
  feat_cmd->add_option("--out", out_path)->required();
  feat_cmd->add_option("--subject", subject, "subject_id column (default: parent directory name)");
  feat_cmd->add_option("--sequence", sequence, "sequence_id column (default: directory name)");
  feat_cmd->add_flag("--append", append, "Append to an existing features CSV");

  // train
  fs::path features_path, model_path, labels_path;
  std::string kernel = "rbf";
  double c = 10.0, sigma = 2.0;
  int degree = 2;
  auto* train_cmd = app.add_subcommand("train", "Train a one-vs-one SVM on a features CSV");
  train_cmd->add_option("--features", features_path)->required();
  train_cmd->add_option("--kernel", kernel)->check(CLI::IsMember({"linear", "poly", "rbf"}));
  train_cmd->add_option("--c", c);
  train_cmd->add_option("--degree", degree);
  train_cmd->add_option("--sigma", sigma);
  train_cmd->add_option("--out", model_path)->required();

  // predict / evaluate
  auto* pred_cmd = app.add_subcommand("predict", "Predict subjects for a features CSV");
  pred_cmd->add_option("--model", model_path)->required();
  pred_cmd->add_option("--features", features_path)->required();
  auto* eval_cmd = app.add_subcommand("evaluate", "Confusion matrix and measures against known labels");
  eval_cmd->add_option("--model", model_path)->required();
  eval_cmd->add_option("--features", features_path)->required();
  eval_cmd->add_option("--labels", labels_path)->required();

  // synth
  fs::path spec_path;
  auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic walker sequence");
  synth_cmd->add_option("--spec", spec_path)->required();
  synth_cmd->add_option("--out", out_path)->required();

  // pipeline family
  fs::path dataset, workdir;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Run background to evaluation on a dataset");
  auto* abl_cmd = app.add_subcommand("ablation", "Compare the six feature-type combinations");
  auto* sweep_cmd = app.add_subcommand("kernel-sweep", "Best accuracy per kernel over the sweep grid");
  for (auto* cmd : {pipe_cmd, abl_cmd, sweep_cmd}) {
    cmd->add_option("--dataset", dataset, "<dataset>/<subject>/<sequence>/frame_NNNN.pgm");
    cmd->add_option("--workdir", workdir, "Directory for stage outputs and reports");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (bg_cmd->parsed()) {
      auto cfg = base_config(g);
      const auto seq = load_sequence(in_dir, cfg.get_double("fps", fps));
      const auto model = build_background(seq, parse_background_technique(technique), Threshold::parse(threshold));
      write_pgm(out_path, model.reference);
      note(g, "background (" + technique + ") from " + std::to_string(seq.size()) + " frames" +
                  (model.cdm_threshold ? ", T = " + std::to_string(*model.cdm_threshold) : std::string()));
    } else if (seg_cmd->parsed()) {
      const auto t = Threshold::parse(seg_threshold);
      BackgroundModel bg{read_pnm(bg_path), BackgroundTechnique::Median, std::nullopt};
      const auto seq = load_sequence(in_dir, fps);
      fs::create_directories(out_path);
      for (std::size_t i = 0; i < seq.size(); ++i)
        write_pgm(out_path / frame_filename(i + 1), clean_mask(difference_mask(seq[i], bg, t)).to_frame());
      note(g, "segmented " + std::to_string(seq.size()) + " frames");
    } else if (cyc_cmd->parsed()) {
      const auto masks = load_silhouettes(in_dir, fps);
      const auto signal = width_signal(masks, fps);
      const int period = estimate_period(signal);
      const auto cycles = partition_cycles(signal, period);
      std::cout << "period_frames," << period << "\n";
      std::cout << "cycle,start_frame,end_frame\n";
      for (std::size_t i = 0; i < cycles.size(); ++i)
        std::cout << i + 1 << "," << cycles[i].start_frame << "," << cycles[i].end_frame << "\n";
      std::cout << "frame,width\n";
      for (std::size_t i = 0; i < signal.values.size(); ++i) std::cout << i << "," << signal.values[i] << "\n";
    } else if (feat_cmd->parsed()) {
      const auto masks = load_silhouettes(in_dir, fps);
      const auto analysis = analyze_silhouettes(masks, fps);
      const fs::path abs = fs::absolute(in_dir).lexically_normal();
      const auto leaf = abs.has_filename() ? abs : abs.parent_path();
      FeatureRecord rec{subject.empty() ? leaf.parent_path().filename().string() : subject,
                        sequence.empty() ? leaf.filename().string() : sequence, analysis.features.fused()};
      std::vector<FeatureRecord> records;
      if (append && fs::exists(out_path)) records = read_features_csv(out_path);
      records.push_back(rec);
      write_features_csv(out_path, records);
      note(g, "period " + std::to_string(analysis.period) + " frames; features written to " + out_path.string());
    } else if (train_cmd->parsed()) {
      auto cfg = base_config(g);
      const auto records = read_features_csv(features_path);
      KernelSpec spec;
      switch (parse_kernel_kind(kernel)) {
      case KernelKind::Linear: spec = KernelSpec::linear(c); break;
      case KernelKind::Polynomial: spec = KernelSpec::polynomial(c, degree); break;
      case KernelKind::Rbf: spec = KernelSpec::rbf(c, sigma); break;
      }
      SmoOptions opt;
      opt.tol = cfg.get_double("tol", opt.tol);
      opt.max_passes = static_cast<int>(cfg.get_int("max_passes", opt.max_passes));
      opt.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
      std::vector<std::size_t> all(records.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      save_model(train_on(records, all, spec, opt), model_path);
      note(g, "trained " + spec.describe() + " on " + std::to_string(records.size()) + " sequences");
    } else if (pred_cmd->parsed()) {
      const auto model = load_model(model_path);
      const auto records = read_features_csv(features_path);
      print_csv_line({"subject_id", "sequence_id", "predicted"});
      for (const auto& r : records) print_csv_line({r.subject, r.sequence, predict(model, r.values)});
    } else if (eval_cmd->parsed()) {
      const auto model = load_model(model_path);
      const auto records = read_features_csv(features_path);
      const auto labels = read_labels_csv(labels_path);
      Evaluation e;
      for (const auto& r : records) {
        const auto it = labels.find({r.subject, r.sequence});
        if (it == labels.end())
          throw Error(ErrorCode::FormatError, "no label for " + r.subject + "/" + r.sequence);
        e.truth.push_back(it->second);
        e.predicted.push_back(predict(model, r.values));
      }
      e.confusion = evaluate(e.truth, e.predicted);
      e.measures = measures(e.confusion);
      std::cout << format_evaluation(e);
    } else if (synth_cmd->parsed()) {
      auto cfg = KeyValueConfig::load(spec_path);
      if (g.seed) cfg.set("seed", std::to_string(*g.seed));
      const auto seq = generate(walker_from_config(cfg), scene_from_config(cfg));
      write_synthetic(out_path, seq);
      note(g, "wrote " + std::to_string(seq.frames.size()) + " frames to " + out_path.string());
    } else {
      auto kv = base_config(g);
      if (!dataset.empty()) kv.set("dataset", dataset.string());
      if (!workdir.empty()) kv.set("workdir", workdir.string());
      const auto cfg = PipelineConfig::from(kv);
      if (pipe_cmd->parsed()) {
        std::cout << run_pipeline(cfg).text;
      } else if (abl_cmd->parsed()) {
        std::cout << ablation_csv(run_ablation(cfg));
      } else {
        std::cout << sweep_csv(run_kernel_sweep(cfg));
      }
    }
  } catch (const Error& e) {
    std::cerr << "gaitlock: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidArgument ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "gaitlock: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
