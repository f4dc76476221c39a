#include "gaitlock/pipeline.hpp"

#include "gaitlock/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace gaitlock {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size())
    throw Error(ErrorCode::InvalidArgument, what + ": not a number: '" + text + "'");
  return v;
}

// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fixed6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

template <class F> auto in_stage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.with_stage(stage);
  }
}

} // namespace

// ---- config ----------------------------------------------------------------

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::FormatError, "config line " + std::to_string(no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::FormatError, "config line " + std::to_string(no) + ": empty key");
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const fs::path& path) { return parse(read_text(path)); }

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : to_double(it->second, key);
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const double v = to_double(it->second, key);
  if (v != std::floor(v)) throw Error(ErrorCode::InvalidArgument, key + ": expected an integer");
  return static_cast<long long>(v);
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  for (const auto& part : split_on(it->second, ',')) out.push_back(to_double(part, key));
  return out;
}

WalkerSpec walker_from_config(const KeyValueConfig& cfg) {
  WalkerSpec s;
  s.body_height = cfg.get_double("body_height", s.body_height);
  s.body_width = cfg.get_double("body_width", s.body_width);
  s.period_frames = static_cast<int>(cfg.get_int("period_frames", s.period_frames));
  s.stride_px = cfg.get_double("stride_px", s.stride_px);
  s.leg_swing_amplitude = cfg.get_double("leg_swing_amplitude", s.leg_swing_amplitude);
  s.start_x = cfg.get_double("start_x", s.start_x);
  s.direction = static_cast<int>(cfg.get_int("direction", s.direction));
  s.noise_rate = cfg.get_double("noise_rate", s.noise_rate);
  s.seed = static_cast<std::uint64_t>(cfg.get_int("seed", static_cast<long long>(s.seed)));
  return s;
}

SceneSpec scene_from_config(const KeyValueConfig& cfg) {
  SceneSpec s;
  s.frame_width = static_cast<int>(cfg.get_int("frame_width", s.frame_width));
  s.frame_height = static_cast<int>(cfg.get_int("frame_height", s.frame_height));
  s.n_frames = static_cast<int>(cfg.get_int("n_frames", s.n_frames));
  s.background_level = static_cast<int>(cfg.get_int("background_level", s.background_level));
  s.fps = cfg.get_double("fps", s.fps);
  return s;
}

PipelineConfig PipelineConfig::from(const KeyValueConfig& cfg) {
  PipelineConfig p;
  p.dataset = cfg.get("dataset", "");
  p.workdir = cfg.get("workdir", "");
  p.background = parse_background_technique(cfg.get("background", "median"));
  p.background_threshold = Threshold::parse(cfg.get("background_threshold", "auto"));
  p.segment_threshold = Threshold::parse(cfg.get("segment_threshold", "auto"));
  p.fps = cfg.get_double("fps", p.fps);
  const auto kind = parse_kernel_kind(cfg.get("kernel", "rbf"));
  const double c = cfg.get_double("c", 10.0);
  switch (kind) {
  case KernelKind::Linear: p.kernel = KernelSpec::linear(c); break;
  case KernelKind::Polynomial: p.kernel = KernelSpec::polynomial(c, static_cast<int>(cfg.get_int("degree", 2))); break;
  case KernelKind::Rbf: p.kernel = KernelSpec::rbf(c, cfg.get_double("sigma", 2.0)); break;
  }
  p.grid.c = cfg.get_doubles("sweep_c", p.grid.c);
  const auto degrees = cfg.get_doubles("sweep_degree", {2, 3});
  p.grid.degree.clear();
  for (double d : degrees) p.grid.degree.push_back(static_cast<int>(d));
  p.grid.sigma = cfg.get_doubles("sweep_sigma", p.grid.sigma);
  p.split = cfg.get_double("split", p.split);
  p.seed = static_cast<std::uint64_t>(cfg.get_int("seed", static_cast<long long>(p.seed)));
  p.tol = cfg.get_double("tol", p.tol);
  p.max_passes = static_cast<int>(cfg.get_int("max_passes", p.max_passes));
  p.resume = cfg.get("resume", "false") == "true";
  return p;
}

void PipelineConfig::validate() const {
  if (!(split > 0.0 && split < 1.0)) throw Error(ErrorCode::InvalidArgument, "split fraction must be in (0, 1)");
  if (!(fps > 0.0)) throw Error(ErrorCode::InvalidArgument, "fps must be positive");
  if (dataset.empty()) throw Error(ErrorCode::InvalidArgument, "dataset path is required");
  if (workdir.empty()) throw Error(ErrorCode::InvalidArgument, "workdir path is required");
  if (fs::weakly_canonical(dataset) == fs::weakly_canonical(workdir))
    throw Error(ErrorCode::InvalidArgument, "dataset and workdir must be distinct");
  if (!(tol > 0.0) || max_passes < 1) throw Error(ErrorCode::InvalidArgument, "solver tolerance settings are invalid");
  kernel.validate();
  if (grid.c.empty()) throw Error(ErrorCode::InvalidArgument, "sweep grid needs at least one c value");
}

std::string PipelineConfig::describe() const {
  auto join = [](const auto& values) {
    std::string out;
    for (const auto& v : values) {
      if (!out.empty()) out += ",";
      out += num(static_cast<double>(v));
    }
    return out;
  };
  std::map<std::string, std::string> kv;
  kv["dataset"] = dataset.generic_string();
  kv["workdir"] = workdir.generic_string();
  kv["background"] = to_string(background);
  kv["background_threshold"] = background_threshold.to_string();
  kv["segment_threshold"] = segment_threshold.to_string();
  kv["fps"] = num(fps);
  kv["kernel"] = to_string(kernel.kind);
  kv["c"] = num(kernel.c);
  kv["degree"] = std::to_string(kernel.degree);
  kv["sigma"] = num(kernel.sigma);
  kv["sweep_c"] = join(grid.c);
  kv["sweep_degree"] = join(grid.degree);
  kv["sweep_sigma"] = join(grid.sigma);
  kv["split"] = num(split);
  kv["seed"] = std::to_string(seed);
  kv["tol"] = num(tol);
  kv["max_passes"] = std::to_string(max_passes);
  kv["feature_window"] = "two_cycles";
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

SmoOptions PipelineConfig::smo() const {
  SmoOptions o;
  o.tol = tol;
  o.max_passes = max_passes;
  o.seed = seed;
  return o;
}

// ---- feature files ---------------------------------------------------------

std::string features_csv(std::span<const FeatureRecord> records) {
  std::string out = "subject_id,sequence_id";
  for (const auto& n : feature_names()) out += "," + n;
  out += "\n";
  for (const auto& r : records) {
    out += r.subject + "," + r.sequence;
    for (double v : r.values) out += "," + num(v);
    out += "\n";
  }
  return out;
}

std::vector<FeatureRecord> parse_features_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::FormatError, "features file is empty");
  const auto header = split_on(trim(line), ',');
  if (header.size() != 2 + kFusedDims || header[0] != "subject_id" || header[1] != "sequence_id")
    throw Error(ErrorCode::FormatError, "features header must be subject_id,sequence_id and 14 feature columns");
  for (std::size_t k = 0; k < kFusedDims; ++k)
    if (header[2 + k] != feature_names()[k])
      throw Error(ErrorCode::FormatError, "unexpected feature column '" + header[2 + k] + "'");
  std::vector<FeatureRecord> records;
  int no = 1;
  while (std::getline(in, line)) {
    ++no;
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split_on(line, ',');
    if (cells.size() != header.size())
      throw Error(ErrorCode::FormatError, "features line " + std::to_string(no) + ": wrong column count");
    FeatureRecord r{cells[0], cells[1], {}};
    for (std::size_t k = 2; k < cells.size(); ++k) r.values.push_back(to_double(cells[k], "features"));
    records.push_back(std::move(r));
  }
  return records;
}

void write_features_csv(const fs::path& path, std::span<const FeatureRecord> records) {
  write_text(path, features_csv(records));
}

std::vector<FeatureRecord> read_features_csv(const fs::path& path) { return parse_features_csv(read_text(path)); }

std::map<std::pair<std::string, std::string>, std::string> read_labels_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || split_on(trim(line), ',') != std::vector<std::string>{"subject_id", "sequence_id", "label"})
    throw Error(ErrorCode::FormatError, "labels header must be subject_id,sequence_id,label");
  std::map<std::pair<std::string, std::string>, std::string> out;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split_on(line, ',');
    if (cells.size() != 3) throw Error(ErrorCode::FormatError, "labels rows need three columns");
    out[{cells[0], cells[1]}] = cells[2];
  }
  return out;
}

// ---- dataset ---------------------------------------------------------------

std::vector<SequenceRef> discover_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error(ErrorCode::EmptyDirectory, "dataset directory " + root.string() + " not found");
  std::vector<SequenceRef> refs;
  std::vector<fs::path> subjects;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory()) subjects.push_back(e.path());
  std::sort(subjects.begin(), subjects.end());
  if (subjects.empty()) throw Error(ErrorCode::Empty, "dataset " + root.string() + " has no subject directories");
  for (const auto& s : subjects) {
    std::vector<fs::path> seqs;
    for (const auto& e : fs::directory_iterator(s))
      if (e.is_directory()) seqs.push_back(e.path());
    std::sort(seqs.begin(), seqs.end());
    if (seqs.empty()) throw Error(ErrorCode::EmptyDirectory, "subject " + s.filename().string() + " has no sequences");
    for (const auto& q : seqs) refs.push_back({s.filename().string(), q.filename().string(), q});
  }
  return refs;
}

SequenceResult process_sequence(const FrameSequence& seq, const PipelineConfig& cfg) {
  SequenceResult r;
  r.background = in_stage("background", [&] { return build_background(seq, cfg.background, cfg.background_threshold); });
  r.silhouettes = in_stage("segmentation", [&] { return segment_sequence(seq, r.background, cfg.segment_threshold); });
  r.analysis = in_stage("features", [&] { return analyze_silhouettes(r.silhouettes, seq.fps()); });
  return r;
}

FeatureRecord extract_sequence_features(const SequenceRef& ref, const PipelineConfig& cfg) {
  const auto seq = in_stage("ingestion", [&] { return load_sequence(ref.directory, cfg.fps); });
  try {
    const auto result = process_sequence(seq, cfg);
    return {ref.subject, ref.sequence, result.analysis.features.fused()};
  } catch (const Error& e) {
    throw Error(e.code(), ref.subject + "/" + ref.sequence + ": " + e.detail(), e.stage());
  }
}

std::vector<FeatureRecord> extract_dataset_features(const PipelineConfig& cfg) {
  const auto refs = in_stage("ingestion", [&] { return discover_dataset(cfg.dataset); });
  std::vector<FeatureRecord> out;
  out.reserve(refs.size());
  for (const auto& r : refs) out.push_back(extract_sequence_features(r, cfg));
  return out;
}

// ---- split, train, evaluate -------------------------------------------------

Split split_records(std::span<const FeatureRecord> records, double fraction, std::uint64_t seed) {
  if (records.empty()) throw Error(ErrorCode::Empty, "no feature records to split");
  std::map<std::string, std::vector<std::size_t>> by_subject;
  for (std::size_t i = 0; i < records.size(); ++i) by_subject[records[i].subject].push_back(i);
  Split s;
  std::mt19937_64 rng(seed);
  for (auto& [subject, idx] : by_subject) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return records[a].sequence < records[b].sequence;
    });
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng() % i]);
    const std::size_t n = idx.size();
    std::size_t n_train = n;
    if (n >= 2) n_train = std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(fraction * n)), 1, n - 1);
    s.train.insert(s.train.end(), idx.begin(), idx.begin() + static_cast<long>(n_train));
    s.test.insert(s.test.end(), idx.begin() + static_cast<long>(n_train), idx.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

std::vector<GalleryEntry> build_gallery(std::span<const FeatureRecord> records, std::span<const std::size_t> which) {
  std::map<std::string, std::pair<std::vector<double>, std::size_t>> acc;
  for (auto i : which) {
    auto& [sum, n] = acc[records[i].subject];
    if (sum.empty()) sum.assign(records[i].values.size(), 0.0);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += records[i].values[k];
    ++n;
  }
  std::vector<GalleryEntry> out;
  for (auto& [subject, entry] : acc) {
    for (auto& v : entry.first) v /= static_cast<double>(entry.second);
    out.push_back({subject, entry.first});
  }
  return out;
}

void write_gallery_csv(const fs::path& path, std::span<const GalleryEntry> gallery) {
  std::string out = "subject_id";
  for (const auto& n : feature_names()) out += "," + n;
  out += "\n";
  for (const auto& g : gallery) {
    out += g.subject;
    for (double v : g.mean) out += "," + num(v);
    out += "\n";
  }
  write_text(path, out);
}

SvmModel train_on(std::span<const FeatureRecord> records, std::span<const std::size_t> which,
                  const KernelSpec& kernel, const SmoOptions& smo, FeatureSet set) {
  std::vector<Sample> x;
  std::vector<std::string> y;
  for (auto i : which) {
    x.push_back(select_features(records[i].values, set));
    y.push_back(records[i].subject);
  }
  if (x.empty()) throw Error(ErrorCode::Empty, "no training samples");
  return train_multiclass(x, y, kernel, smo);
}

Evaluation evaluate_model(const SvmModel& model, std::span<const FeatureRecord> records,
                          std::span<const std::size_t> which, FeatureSet set) {
  Evaluation e;
  for (auto i : which) {
    e.truth.push_back(records[i].subject);
    e.predicted.push_back(predict(model, select_features(records[i].values, set)));
  }
  e.confusion = evaluate(e.truth, e.predicted);
  e.measures = measures(e.confusion);
  return e;
}

std::string format_evaluation(const Evaluation& eval) {
  const auto& cm = eval.confusion;
  std::ostringstream os;
  os << "[measures]\n";
  os << "averaging = macro\n";
  os << "samples = " << cm.total() << "\n";
  os << "accuracy = " << fixed6(eval.measures.accuracy) << "\n";
  os << "precision = " << fixed6(eval.measures.precision) << "\n";
  os << "recall = " << fixed6(eval.measures.recall) << "\n";
  os << "f_measure = " << fixed6(eval.measures.f_measure) << "\n";
  os << "[confusion]\n";
  std::size_t width = 6;
  for (const auto& c : cm.classes) width = std::max(width, c.size() + 1);
  os << std::setw(static_cast<int>(width)) << "true\\pred";
  for (const auto& c : cm.classes) os << std::setw(static_cast<int>(width)) << c;
  os << "\n";
  for (std::size_t i = 0; i < cm.classes.size(); ++i) {
    os << std::setw(static_cast<int>(width)) << cm.classes[i];
    for (auto v : cm.counts[i]) os << std::setw(static_cast<int>(width)) << v;
    os << "\n";
  }
  os << "[csv]\n";
  os << "true\\pred";
  for (const auto& c : cm.classes) os << "," << c;
  os << "\n";
  for (std::size_t i = 0; i < cm.classes.size(); ++i) {
    os << cm.classes[i];
    for (auto v : cm.counts[i]) os << "," << v;
    os << "\n";
  }
  os << "measure,value\n";
  os << "accuracy," << num(eval.measures.accuracy) << "\n";
  os << "precision," << num(eval.measures.precision) << "\n";
  os << "recall," << num(eval.measures.recall) << "\n";
  os << "f_measure," << num(eval.measures.f_measure) << "\n";
  return os.str();
}

namespace {

std::vector<FeatureRecord> features_stage(const PipelineConfig& cfg) {
  fs::create_directories(cfg.workdir);
  const auto path = cfg.workdir / "features.csv";
  if (cfg.resume && fs::exists(path)) return in_stage("features", [&] { return read_features_csv(path); });
  auto records = extract_dataset_features(cfg);
  write_features_csv(path, records);
  return records;
}

std::string report_header(const std::string& title, const PipelineConfig& cfg) {
  return "# gaitlock " + title + "\n[config]\n" + cfg.describe();
}

} // namespace

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  PipelineReport rep;
  rep.records = features_stage(cfg);
  rep.split = in_stage("training", [&] { return split_records(rep.records, cfg.split, cfg.seed); });
  if (rep.split.test.empty()) throw Error(ErrorCode::Empty, "split left no test sequences", "training");

  const auto model_path = cfg.workdir / "model.txt";
  if (cfg.resume && fs::exists(model_path)) {
    rep.model = in_stage("training", [&] { return load_model(model_path); });
  } else {
    rep.model = in_stage("training", [&] { return train_on(rep.records, rep.split.train, cfg.kernel, cfg.smo()); });
    save_model(rep.model, model_path);
  }
  write_gallery_csv(cfg.workdir / "gallery.csv", build_gallery(rep.records, rep.split.train));

  rep.evaluation = in_stage("evaluation", [&] { return evaluate_model(rep.model, rep.records, rep.split.test); });
  std::ostringstream os;
  os << report_header("evaluation report", cfg);
  os << "[split]\ntrain = " << rep.split.train.size() << "\ntest = " << rep.split.test.size() << "\n";
  os << format_evaluation(rep.evaluation);
  rep.text = os.str();
  write_text(cfg.workdir / "report.txt", rep.text);
  return rep;
}

std::vector<AblationRow> run_ablation(const PipelineConfig& cfg) {
  cfg.validate();
  const auto records = features_stage(cfg);
  const auto split = in_stage("training", [&] { return split_records(records, cfg.split, cfg.seed); });
  if (split.test.empty()) throw Error(ErrorCode::Empty, "split left no test sequences", "training");
  std::vector<AblationRow> rows;
  for (const auto set : kAllFeatureSets) {
    const auto model = in_stage("training", [&] { return train_on(records, split.train, cfg.kernel, cfg.smo(), set); });
    const auto eval = in_stage("evaluation", [&] { return evaluate_model(model, records, split.test, set); });
    rows.push_back({set, dimension(set), eval.measures.accuracy});
  }
  write_text(cfg.workdir / "ablation.csv", report_header("ablation", cfg) + ablation_csv(rows));
  return rows;
}

std::string ablation_csv(std::span<const AblationRow> rows) {
  std::string out = "feature_set,dimension,accuracy\n";
  for (const auto& r : rows) out += to_string(r.set) + "," + std::to_string(r.dimension) + "," + num(r.accuracy) + "\n";
  return out;
}

std::vector<SweepRow> kernel_sweep(std::span<const FeatureRecord> records, const Split& split, const SweepGrid& grid,
                                   const SmoOptions& smo) {
  if (grid.c.empty()) throw Error(ErrorCode::InvalidArgument, "sweep grid is empty");
  std::vector<SweepRow> rows;
  for (const auto kind : {KernelKind::Linear, KernelKind::Polynomial, KernelKind::Rbf}) {
    std::vector<KernelSpec> specs;
    for (double c : grid.c) {
      if (kind == KernelKind::Linear) specs.push_back(KernelSpec::linear(c));
      if (kind == KernelKind::Polynomial)
        for (int d : grid.degree) specs.push_back(KernelSpec::polynomial(c, d));
      if (kind == KernelKind::Rbf)
        for (double s : grid.sigma) specs.push_back(KernelSpec::rbf(c, s));
    }
    if (specs.empty()) continue;
    SweepRow row{kind, 0, -1.0, specs.front()};
    for (const auto& spec : specs) {
      const auto model = in_stage("training", [&] { return train_on(records, split.train, spec, smo); });
      const double acc = in_stage("evaluation", [&] { return evaluate_model(model, records, split.test).measures.accuracy; });
      ++row.evaluations;
      if (acc > row.best_accuracy) {
        row.best_accuracy = acc;
        row.best = spec;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> run_kernel_sweep(const PipelineConfig& cfg) {
  cfg.validate();
  const auto records = features_stage(cfg);
  const auto split = in_stage("training", [&] { return split_records(records, cfg.split, cfg.seed); });
  if (split.test.empty()) throw Error(ErrorCode::Empty, "split left no test sequences", "training");
  auto rows = kernel_sweep(records, split, cfg.grid, cfg.smo());
  write_text(cfg.workdir / "kernel_sweep.csv", report_header("kernel sweep", cfg) + sweep_csv(rows));
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "kernel,evaluations,best_accuracy,c,degree,sigma\n";
  for (const auto& r : rows) {
    out += to_string(r.kind) + "," + std::to_string(r.evaluations) + "," + num(r.best_accuracy) + "," + num(r.best.c) + ",";
    out += r.kind == KernelKind::Polynomial ? std::to_string(r.best.degree) : std::string("-");
    out += ",";
    out += r.kind == KernelKind::Rbf ? num(r.best.sigma) : std::string("-");
    out += "\n";
  }
  return out;
}

} // namespace gaitlock
