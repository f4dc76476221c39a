#include "gaitlock/svm.hpp"

#include "gaitlock/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace gaitlock {

std::string to_string(KernelKind kind) {
  switch (kind) {
  case KernelKind::Linear: return "linear";
  case KernelKind::Polynomial: return "poly";
  case KernelKind::Rbf: return "rbf";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(const std::string& text) {
  if (text == "linear") return KernelKind::Linear;
  if (text == "poly" || text == "polynomial") return KernelKind::Polynomial;
  if (text == "rbf") return KernelKind::Rbf;
  throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + text + "'");
}

KernelSpec KernelSpec::linear(double c) {
  KernelSpec s{KernelKind::Linear, 1, 1.0, c};
  s.validate();
  return s;
}

KernelSpec KernelSpec::polynomial(double c, int degree) {
  KernelSpec s{KernelKind::Polynomial, degree, 1.0, c};
  s.validate();
  return s;
}

KernelSpec KernelSpec::rbf(double c, double sigma) {
  KernelSpec s{KernelKind::Rbf, 1, sigma, c};
  s.validate();
  return s;
}

void KernelSpec::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "c must be positive");
  if (kind == KernelKind::Polynomial && degree < 1)
    throw Error(ErrorCode::InvalidArgument, "polynomial degree must be >= 1");
  if (kind == KernelKind::Rbf && (!(sigma > 0.0) || !std::isfinite(sigma)))
    throw Error(ErrorCode::InvalidArgument, "rbf sigma must be positive");
}

std::string KernelSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind) << " c=" << c;
  if (kind == KernelKind::Polynomial) os << " d=" << degree;
  if (kind == KernelKind::Rbf) os << " sigma=" << sigma;
  return os.str();
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "kernel arguments differ in dimension");
  switch (spec.kind) {
  case KernelKind::Linear: {
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
    return dot;
  }
  case KernelKind::Polynomial: {
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
    return std::pow(dot + 1.0, spec.degree);
  }
  case KernelKind::Rbf: {
    double dist = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dist += (x[i] - y[i]) * (x[i] - y[i]);
    return std::exp(-dist / (2.0 * spec.sigma * spec.sigma));
  }
  }
  return 0.0;
}

double BinarySvm::decision(std::span<const double> x) const {
  double f = bias;
  for (std::size_t i = 0; i < support_vectors.size(); ++i)
    f += coefficients[i] * kernel_eval(kernel, support_vectors[i], x);
  return f;
}

namespace {

void check_finite(std::span<const Sample> samples) {
  for (const auto& s : samples)
    for (double v : s)
      if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "training data contains NaN or infinity");
}

// Dual solver state. F_i = sum_j alpha_j y_j K_ij - y_i, so the error of
// point i is E_i = F_i + b and its KKT slack is y_i E_i.
class Smo {
public:
  Smo(std::span<const Sample> x, std::span<const int> y, const KernelSpec& spec)
      : n_(x.size()), c_(spec.c), y_(y.begin(), y.end()), k_(n_ * n_), alpha_(n_, 0.0), f_(n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) k_[i * n_ + j] = k_[j * n_ + i] = kernel_eval(spec, x[i], x[j]);
    for (std::size_t i = 0; i < n_; ++i) f_[i] = -y_[i];
  }

  // Simplified SMO: sweep for KKT violators, pair each with a random partner,
  // stop after `max_passes` sweeps without any update.
  void simplified(const SmoOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    int passes = 0;
    std::size_t sweeps = 0;
    const std::size_t sweep_cap = 1000 + 100 * n_;
    while (passes < opt.max_passes && sweeps++ < sweep_cap) {
      int changed = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double ei = f_[i] + b_;
        const double r = y_[i] * ei;
        if (!((r < -opt.tol && alpha_[i] < c_) || (r > opt.tol && alpha_[i] > 0.0))) continue;
        std::size_t j = static_cast<std::size_t>(rng() % (n_ - 1));
        if (j >= i) ++j;
        if (!step(i, j, 1e-5)) continue;
        update_bias(i, j);
        ++changed;
      }
      passes = changed == 0 ? passes + 1 : 0;
    }
  }

  // Maximal violating pair iterations until the bias interval is narrower
  // than tol, which bounds every KKT slack by tol / 2.
  void polish(const SmoOptions& opt) {
    const std::size_t cap = opt.max_iterations ? opt.max_iterations : std::max<std::size_t>(100000, 1000 * n_);
    for (std::size_t it = 0; it < cap; ++it) {
      const auto [lo, up] = violating_pair();
      if (lo == npos || up == npos) break;
      if (-f_[lo] - (-f_[up]) <= opt.tol) break;
      if (!step(lo, up, 0.0)) break;
    }
    const auto [lo, up] = violating_pair();
    if (lo != npos && up != npos) b_ = 0.5 * ((-f_[lo]) + (-f_[up]));
    else if (lo != npos) b_ = -f_[lo];
    else if (up != npos) b_ = -f_[up];
  }

  const std::vector<double>& alpha() const { return alpha_; }
  double bias() const { return b_; }

private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  bool in_lower(std::size_t t) const {
    return (y_[t] > 0 && alpha_[t] < c_) || (y_[t] < 0 && alpha_[t] > 0.0);
  }
  bool in_upper(std::size_t t) const {
    return (y_[t] < 0 && alpha_[t] < c_) || (y_[t] > 0 && alpha_[t] > 0.0);
  }

  // (argmax of -F over the lower-bound set, argmin of -F over the upper-bound set)
  std::pair<std::size_t, std::size_t> violating_pair() const {
    std::size_t lo = npos, up = npos;
    for (std::size_t t = 0; t < n_; ++t) {
      if (in_lower(t) && (lo == npos || -f_[t] > -f_[lo])) lo = t;
      if (in_upper(t) && (up == npos || -f_[t] < -f_[up])) up = t;
    }
    return {lo, up};
  }

  double kern(std::size_t i, std::size_t j) const { return k_[i * n_ + j]; }

  // Rounding residue next to a bound would otherwise count as a free vector.
  double snap(double a) const {
    if (a <= 1e-12 * c_) return 0.0;
    if (a >= c_ - 1e-12 * c_) return c_;
    return a;
  }

  bool step(std::size_t i, std::size_t j, double min_change) {
    if (i == j) return false;
    const double ai = alpha_[i], aj = alpha_[j];
    const double yi = y_[i], yj = y_[j];
    double lo, hi;
    if (yi != yj) {
      lo = std::max(0.0, aj - ai);
      hi = std::min(c_, c_ + aj - ai);
    } else {
      lo = std::max(0.0, ai + aj - c_);
      hi = std::min(c_, ai + aj);
    }
    if (hi - lo <= 1e-15 * c_) return false;
    double eta = kern(i, i) + kern(j, j) - 2.0 * kern(i, j);
    if (eta < 1e-12) eta = 1e-12;
    double aj_new = aj + yj * (f_[i] - f_[j]) / eta;
    aj_new = snap(std::clamp(aj_new, lo, hi));
    if (aj_new == aj || std::abs(aj_new - aj) < min_change) return false;
    const double ai_new = snap(std::clamp(ai + yi * yj * (aj - aj_new), 0.0, c_));

    const double di = (ai_new - ai) * yi;
    const double dj = (aj_new - aj) * yj;
    alpha_[i] = ai_new;
    alpha_[j] = aj_new;
    for (std::size_t t = 0; t < n_; ++t) f_[t] += di * kern(i, t) + dj * kern(j, t);
    return true;
  }

  // Each candidate zeroes the updated error of one of the pair.
  void update_bias(std::size_t i, std::size_t j) {
    const double b1 = -f_[i];
    const double b2 = -f_[j];
    if (alpha_[i] > 0.0 && alpha_[i] < c_) b_ = b1;
    else if (alpha_[j] > 0.0 && alpha_[j] < c_) b_ = b2;
    else b_ = 0.5 * (b1 + b2);
  }

  std::size_t n_;
  double c_;
  std::vector<double> y_;
  std::vector<double> k_;
  std::vector<double> alpha_;
  std::vector<double> f_;
  double b_ = 0.0;
};

} // namespace

BinarySvm train_binary(std::span<const Sample> samples, std::span<const int> labels, const KernelSpec& spec,
                       const SmoOptions& options) {
  spec.validate();
  if (samples.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "samples and labels differ in count");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  bool pos = false, neg = false;
  for (int l : labels) {
    if (l == 1) pos = true;
    else if (l == -1) neg = true;
    else throw Error(ErrorCode::InvalidArgument, "binary labels must be +1 or -1");
  }
  if (!pos || !neg) throw Error(ErrorCode::SingleClass, "binary training needs both labels");
  const std::size_t dim = samples.front().size();
  for (const auto& s : samples)
    if (s.size() != dim) throw Error(ErrorCode::DimensionMismatch, "samples differ in dimension");
  check_finite(samples);

  Smo smo(samples, labels, spec);
  smo.simplified(options);
  smo.polish(options);

  BinarySvm m;
  m.kernel = spec;
  m.bias = smo.bias();
  const auto& alpha = smo.alpha();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (alpha[i] <= 0.0) continue;
    m.support_vectors.push_back(samples[i]);
    m.coefficients.push_back(alpha[i] * labels[i]);
    m.support_indices.push_back(i);
  }
  return m;
}

KktReport check_kkt(const BinarySvm& machine, std::span<const Sample> samples, std::span<const int> labels) {
  if (samples.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "samples and labels differ in count");
  const double c = machine.kernel.c;
  std::vector<double> alpha(samples.size(), 0.0);
  KktReport r;
  double sum = 0.0;
  for (std::size_t k = 0; k < machine.support_indices.size(); ++k) {
    const std::size_t i = machine.support_indices[k];
    if (i >= samples.size()) throw Error(ErrorCode::DimensionMismatch, "support index outside the training set");
    alpha[i] = machine.coefficients[k] * labels[i];
    sum += machine.coefficients[k];
    r.max_box_excess = std::max({r.max_box_excess, -alpha[i], alpha[i] - c});
  }
  r.equality_residual = std::abs(sum);
  // Bound classification uses the same relative slack as the solver's clamp.
  const double edge = 1e-12 * c;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double margin = labels[i] * machine.decision(samples[i]) - 1.0;
    double v = 0.0;
    if (alpha[i] <= edge) v = std::max(0.0, -margin);
    else if (alpha[i] >= c - edge) v = std::max(0.0, margin);
    else v = std::abs(margin);
    r.max_violation = std::max(r.max_violation, v);
  }
  return r;
}

Normalization Normalization::fit(std::span<const Sample> samples) {
  if (samples.empty()) throw Error(ErrorCode::Empty, "cannot normalize an empty set");
  const std::size_t d = samples.front().size();
  Normalization n;
  n.mean.assign(d, 0.0);
  n.scale.assign(d, 1.0);
  for (const auto& s : samples)
    for (std::size_t k = 0; k < d; ++k) n.mean[k] += s[k];
  for (auto& m : n.mean) m /= static_cast<double>(samples.size());
  for (std::size_t k = 0; k < d; ++k) {
    double ss = 0.0;
    for (const auto& s : samples) ss += (s[k] - n.mean[k]) * (s[k] - n.mean[k]);
    const double sd = std::sqrt(ss / static_cast<double>(samples.size()));
    if (sd > 1e-12 * std::max(1.0, std::abs(n.mean[k]))) n.scale[k] = sd;
  }
  return n;
}

Sample Normalization::apply(std::span<const double> x) const {
  if (x.size() != mean.size()) throw Error(ErrorCode::DimensionMismatch, "vector dimension differs from the model");
  Sample out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = (x[k] - mean[k]) / scale[k];
  return out;
}

namespace {

struct PairData {
  std::vector<Sample> x;
  std::vector<int> y;
};

PairData pair_subset(std::span<const Sample> normalized, std::span<const std::string> labels,
                     const std::string& a, const std::string& b) {
  PairData p;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == a) p.y.push_back(1);
    else if (labels[i] == b) p.y.push_back(-1);
    else continue;
    p.x.push_back(normalized[i]);
  }
  return p;
}

} // namespace

SvmModel train_multiclass(std::span<const Sample> samples, std::span<const std::string> labels,
                          const KernelSpec& spec, const SmoOptions& options) {
  if (samples.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "samples and labels differ in count");
  if (samples.empty()) throw Error(ErrorCode::Empty, "no training samples");
  const std::size_t dim = samples.front().size();
  for (const auto& s : samples)
    if (s.size() != dim) throw Error(ErrorCode::DimensionMismatch, "samples differ in dimension");
  check_finite(samples);
  for (const auto& l : labels)
    if (l.empty() || std::any_of(l.begin(), l.end(), [](unsigned char ch) { return std::isspace(ch); }))
      throw Error(ErrorCode::InvalidArgument, "class labels must be non-empty and contain no whitespace");

  const std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() < 2) throw Error(ErrorCode::TooFewClasses, "multi-class training needs at least two classes");

  SvmModel model;
  model.classes.assign(unique.begin(), unique.end());
  model.normalization = Normalization::fit(samples);
  std::vector<Sample> normalized;
  normalized.reserve(samples.size());
  for (const auto& s : samples) normalized.push_back(model.normalization.apply(s));

  std::uint64_t pair_index = 0;
  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      const auto data = pair_subset(normalized, labels, model.classes[a], model.classes[b]);
      SmoOptions opt = options;
      opt.seed = options.seed * 1000003ULL + pair_index++;
      auto m = train_binary(data.x, data.y, spec, opt);
      m.positive = model.classes[a];
      m.negative = model.classes[b];
      model.machines.push_back(std::move(m));
    }
  }
  return model;
}

PredictionDetail predict_detail(const SvmModel& model, std::span<const double> x) {
  const Sample z = model.normalization.apply(x);
  const std::size_t k = model.classes.size();
  PredictionDetail d;
  d.votes.assign(k, 0);
  d.decision_sums.assign(k, 0.0);
  std::size_t m = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b, ++m) {
      const double f = model.machines.at(m).decision(z);
      const std::size_t winner = f > 0.0 ? a : b;
      ++d.votes[winner];
      d.decision_sums[winner] += std::abs(f);
    }
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < k; ++c) {
    if (d.votes[c] > d.votes[best] || (d.votes[c] == d.votes[best] && d.decision_sums[c] > d.decision_sums[best]))
      best = c;
  }
  d.label = model.classes[best];
  return d;
}

std::string predict(const SvmModel& model, std::span<const double> x) { return predict_detail(model, x).label; }

std::vector<KktReport> check_model_kkt(const SvmModel& model, std::span<const Sample> samples,
                                       std::span<const std::string> labels) {
  std::vector<Sample> normalized;
  for (const auto& s : samples) normalized.push_back(model.normalization.apply(s));
  std::vector<KktReport> out;
  for (const auto& m : model.machines) {
    const auto data = pair_subset(normalized, labels, m.positive, m.negative);
    out.push_back(check_kkt(m, data.x, data.y));
  }
  return out;
}

// ---- persistence ---------------------------------------------------------

namespace {

constexpr const char* kMagic = "GAITLOCK-SVM";
constexpr const char* kVersion = "v1";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class LineParser {
public:
  explicit LineParser(const std::string& text) : in_(text) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::FormatError, "model line " + std::to_string(line_no_) + ": " + why);
  }

  std::istringstream next() {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file");
    ++line_no_;
    return std::istringstream(line);
  }

  std::istringstream expect(const std::string& keyword) {
    auto ls = next();
    std::string word;
    ls >> word;
    if (word != keyword) fail("expected '" + keyword + "', found '" + word + "'");
    return ls;
  }

  template <class T> T read(std::istringstream& ls) {
    if constexpr (std::is_same_v<T, double>) {
      std::string tok;
      if (!(ls >> tok)) fail("missing number");
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size()) fail("bad number '" + tok + "'");
      return v;
    } else {
      T v{};
      if (!(ls >> v)) fail("missing field");
      return v;
    }
  }

  void finish(std::istringstream& ls) {
    std::string extra;
    if (ls >> extra) fail("trailing token '" + extra + "'");
  }

private:
  std::istringstream in_;
  int line_no_ = 0;
};

} // namespace

std::string serialize_model(const SvmModel& model) {
  std::ostringstream os;
  os << kMagic << ' ' << kVersion << '\n';
  os << "dimension " << model.dimension() << '\n';
  os << "classes " << model.classes.size() << '\n';
  for (const auto& c : model.classes) os << "class " << c << '\n';
  os << "normalization\n";
  for (std::size_t k = 0; k < model.dimension(); ++k)
    os << num(model.normalization.mean[k]) << ' ' << num(model.normalization.scale[k]) << '\n';
  os << "machines " << model.machines.size() << '\n';
  for (const auto& m : model.machines) {
    os << "machine " << m.positive << ' ' << m.negative << '\n';
    os << "kernel " << to_string(m.kernel.kind) << " c " << num(m.kernel.c) << " degree " << m.kernel.degree
       << " sigma " << num(m.kernel.sigma) << '\n';
    os << "bias " << num(m.bias) << '\n';
    os << "support " << m.support_vectors.size() << '\n';
    for (std::size_t i = 0; i < m.support_vectors.size(); ++i) {
      os << num(m.coefficients[i]) << ' ' << m.support_indices[i];
      for (double v : m.support_vectors[i]) os << ' ' << num(v);
      os << '\n';
    }
  }
  os << "end\n";
  return os.str();
}

SvmModel parse_model(const std::string& text) {
  LineParser p(text);
  {
    auto ls = p.next();
    std::string magic, version;
    ls >> magic >> version;
    if (magic != kMagic) throw Error(ErrorCode::FormatError, "not a gaitlock SVM model");
    if (version != kVersion)
      throw Error(ErrorCode::VersionMismatch, "model version '" + version + "' is not supported");
  }
  SvmModel model;
  auto ls = p.expect("dimension");
  const auto dim = p.read<std::size_t>(ls);
  ls = p.expect("classes");
  const auto k = p.read<std::size_t>(ls);
  if (k < 2 || k > 100000) p.fail("implausible class count");
  for (std::size_t i = 0; i < k; ++i) {
    ls = p.expect("class");
    model.classes.push_back(p.read<std::string>(ls));
    p.finish(ls);
  }
  p.expect("normalization");
  for (std::size_t d = 0; d < dim; ++d) {
    ls = p.next();
    model.normalization.mean.push_back(p.read<double>(ls));
    const double s = p.read<double>(ls);
    if (!(s > 0.0)) p.fail("normalization scale must be positive");
    model.normalization.scale.push_back(s);
    p.finish(ls);
  }
  ls = p.expect("machines");
  const auto nm = p.read<std::size_t>(ls);
  if (nm != k * (k - 1) / 2) p.fail("machine count does not match class count");
  for (std::size_t mi = 0; mi < nm; ++mi) {
    BinarySvm m;
    ls = p.expect("machine");
    m.positive = p.read<std::string>(ls);
    m.negative = p.read<std::string>(ls);
    ls = p.expect("kernel");
    m.kernel.kind = [&] {
      try {
        return parse_kernel_kind(p.read<std::string>(ls));
      } catch (const Error&) {
        p.fail("unknown kernel");
      }
    }();
    std::string key;
    ls >> key;
    if (key != "c") p.fail("expected c");
    m.kernel.c = p.read<double>(ls);
    ls >> key;
    if (key != "degree") p.fail("expected degree");
    m.kernel.degree = p.read<int>(ls);
    ls >> key;
    if (key != "sigma") p.fail("expected sigma");
    m.kernel.sigma = p.read<double>(ls);
    try {
      m.kernel.validate();
    } catch (const Error& e) {
      p.fail(e.detail());
    }
    ls = p.expect("bias");
    m.bias = p.read<double>(ls);
    ls = p.expect("support");
    const auto ns = p.read<std::size_t>(ls);
    for (std::size_t s = 0; s < ns; ++s) {
      ls = p.next();
      m.coefficients.push_back(p.read<double>(ls));
      m.support_indices.push_back(p.read<std::size_t>(ls));
      Sample v(dim);
      for (auto& x : v) x = p.read<double>(ls);
      p.finish(ls);
      m.support_vectors.push_back(std::move(v));
    }
    model.machines.push_back(std::move(m));
  }
  p.expect("end");
  return model;
}

void save_model(const SvmModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << serialize_model(model);
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

SvmModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

} // namespace gaitlock
