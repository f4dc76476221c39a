#include "gaitlock/background.hpp"
#include "gaitlock/error.hpp"
#include "gaitlock/features.hpp"
#include "gaitlock/gaitcycle.hpp"
#include "gaitlock/imagery.hpp"
#include "gaitlock/metrics.hpp"
#include "gaitlock/pipeline.hpp"
#include "gaitlock/segmentation.hpp"
#include "gaitlock/svm.hpp"
#include "gaitlock/synthgait.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <cstring>

namespace py = pybind11;
using namespace gaitlock;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Frame frame_from(const U8Array& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::BadDimensions, "expected a 2-D uint8 array");
  const int h = static_cast<int>(a.shape(0)), w = static_cast<int>(a.shape(1));
  return Frame(w, h, std::vector<std::uint8_t>(a.data(), a.data() + a.size()));
}

std::vector<Frame> frames_from(const U8Array& a) {
  if (a.ndim() == 2) return {frame_from(a)};
  if (a.ndim() != 3) throw Error(ErrorCode::BadDimensions, "expected an (n, height, width) uint8 array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  const int h = static_cast<int>(a.shape(1)), w = static_cast<int>(a.shape(2));
  const std::size_t plane = static_cast<std::size_t>(w) * h;
  std::vector<Frame> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.emplace_back(w, h, std::vector<std::uint8_t>(a.data() + i * plane, a.data() + (i + 1) * plane));
  return out;
}

FrameSequence sequence_from(const U8Array& a, double fps) { return FrameSequence(frames_from(a), fps); }

U8Array to_array(const Frame& f) {
  U8Array out({f.height(), f.width()});
  std::memcpy(out.mutable_data(), f.pixels().data(), f.size());
  return out;
}

U8Array to_array(const std::vector<Frame>& frames) {
  const auto& first = frames.front();
  U8Array out({static_cast<py::ssize_t>(frames.size()), static_cast<py::ssize_t>(first.height()),
               static_cast<py::ssize_t>(first.width())});
  for (std::size_t i = 0; i < frames.size(); ++i)
    std::memcpy(out.mutable_data() + i * first.size(), frames[i].pixels().data(), first.size());
  return out;
}

SilhouetteMask mask_from(const U8Array& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::BadDimensions, "expected a 2-D mask");
  std::vector<std::uint8_t> m(a.data(), a.data() + a.size());
  for (auto& v : m) v = v != 0;
  return SilhouetteMask(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), std::move(m));
}

std::vector<SilhouetteMask> masks_from(const U8Array& a) {
  if (a.ndim() != 3) throw Error(ErrorCode::BadDimensions, "expected an (n, height, width) mask stack");
  const auto n = static_cast<std::size_t>(a.shape(0));
  const int h = static_cast<int>(a.shape(1)), w = static_cast<int>(a.shape(2));
  const std::size_t plane = static_cast<std::size_t>(w) * h;
  std::vector<SilhouetteMask> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint8_t> m(a.data() + i * plane, a.data() + (i + 1) * plane);
    for (auto& v : m) v = v != 0;
    out.emplace_back(w, h, std::move(m));
  }
  return out;
}

py::array_t<bool> to_bool(const SilhouetteMask& m) {
  py::array_t<bool> out({m.height(), m.width()});
  std::copy(m.mask().begin(), m.mask().end(), out.mutable_data());
  return out;
}

py::array_t<bool> to_bool(const std::vector<SilhouetteMask>& masks) {
  const auto& first = masks.front();
  const std::size_t plane = first.mask().size();
  py::array_t<bool> out({static_cast<py::ssize_t>(masks.size()), static_cast<py::ssize_t>(first.height()),
                         static_cast<py::ssize_t>(first.width())});
  for (std::size_t i = 0; i < masks.size(); ++i)
    std::copy(masks[i].mask().begin(), masks[i].mask().end(), out.mutable_data() + i * plane);
  return out;
}

Grid grid_from(const F64Array& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::BadDimensions, "expected a 2-D array");
  Grid g(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), g.data.begin());
  return g;
}

F64Array to_array(const Grid& g) {
  F64Array out({g.rows, g.cols});
  std::copy(g.data.begin(), g.data.end(), out.mutable_data());
  return out;
}

std::vector<Sample> samples_from(const F64Array& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::BadDimensions, "expected an (n, d) sample matrix");
  const auto n = static_cast<std::size_t>(a.shape(0)), d = static_cast<std::size_t>(a.shape(1));
  std::vector<Sample> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(a.data() + i * d, a.data() + (i + 1) * d);
  return out;
}

KernelSpec kernel_from(const std::string& kind, double c, int degree, double sigma) {
  switch (parse_kernel_kind(kind)) {
  case KernelKind::Linear: return KernelSpec::linear(c);
  case KernelKind::Polynomial: return KernelSpec::polynomial(c, degree);
  case KernelKind::Rbf: return KernelSpec::rbf(c, sigma);
  }
  return {};
}

py::list cycles_to_list(const std::vector<GaitCycle>& cycles) {
  py::list out;
  for (const auto& c : cycles) out.append(py::make_tuple(c.start_frame, c.end_frame, c.period_frames));
  return out;
}

PipelineConfig pipeline_config(const std::filesystem::path& dataset, const std::filesystem::path& workdir,
                               const std::map<std::string, std::string>& options) {
  KeyValueConfig kv;
  for (const auto& [k, v] : options) kv.set(k, v);
  kv.set("dataset", dataset.string());
  kv.set("workdir", workdir.string());
  return PipelineConfig::from(kv);
}

py::dict measures_dict(const ConfusionMatrix& cm) {
  const auto m = measures(cm);
  py::dict d;
  d["classes"] = cm.classes;
  d["confusion"] = cm.counts;
  d["accuracy"] = m.accuracy;
  d["precision"] = m.precision;
  d["recall"] = m.recall;
  d["f_measure"] = m.f_measure;
  return d;
}

} // namespace

PYBIND11_MODULE(_gaitlock, m) {
  m.doc() = "Silhouette-based gait recognition: background models, segmentation, gait cycles, "
            "features, SVM classification and evaluation.";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&] { return py::object(py::exception<Error>(m, "Error")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = error_type.get_stored();
      py::object exc = type(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("stage") = e.stage();
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  m.def(
      "load_sequence",
      [](const std::filesystem::path& dir, double fps) { return to_array(load_sequence(dir, fps).frames()); },
      py::arg("directory"), py::arg("fps") = 25.0, "Load frame_NNNN.pgm/ppm files as an (n, h, w) uint8 array.");

  m.def(
      "background",
      [](const U8Array& frames, const std::string& technique, const std::string& threshold) {
        const auto model = build_background(sequence_from(frames, 25.0), parse_background_technique(technique),
                                            Threshold::parse(threshold));
        return py::make_tuple(to_array(model.reference), model.cdm_threshold ? py::cast(*model.cdm_threshold) : py::none());
      },
      py::arg("frames"), py::arg("technique") = "median", py::arg("threshold") = "auto",
      "Reference background and the CDM threshold used (None for other techniques).");

  m.def(
      "difference_mask",
      [](const U8Array& frame, const U8Array& bg, const std::string& threshold) {
        BackgroundModel model{frame_from(bg), BackgroundTechnique::Median, std::nullopt};
        return to_bool(difference_mask(frame_from(frame), model, Threshold::parse(threshold)));
      },
      py::arg("frame"), py::arg("background"), py::arg("threshold") = "auto");
  m.def("clean_mask", [](const U8Array& mask) { return to_bool(clean_mask(mask_from(mask))); }, py::arg("mask"));
  m.def("count_components", [](const U8Array& mask) { return count_components(mask_from(mask)); }, py::arg("mask"));
  m.def(
      "segment_sequence",
      [](const U8Array& frames, const U8Array& bg, const std::string& threshold) {
        BackgroundModel model{frame_from(bg), BackgroundTechnique::Median, std::nullopt};
        return to_bool(segment_sequence(sequence_from(frames, 25.0), model, Threshold::parse(threshold)));
      },
      py::arg("frames"), py::arg("background"), py::arg("threshold") = "auto",
      "Cleaned silhouettes as an (n, h, w) bool array.");

  m.def(
      "width_signal",
      [](const U8Array& masks) {
        const auto ms = masks_from(masks);
        return width_signal(ms, 25.0).values;
      },
      py::arg("masks"));
  m.def(
      "estimate_period",
      [](const std::vector<double>& widths, double fps) { return estimate_period(WidthSignal{widths, fps}); },
      py::arg("widths"), py::arg("fps") = 25.0);
  m.def(
      "partition_cycles",
      [](const std::vector<double>& widths, int period) {
        return cycles_to_list(partition_cycles(WidthSignal{widths, 25.0}, period));
      },
      py::arg("widths"), py::arg("period"), "List of (start_frame, end_frame, period) tuples.");

  m.def(
      "haar_dwt2",
      [](const F64Array& image) {
        const auto b = haar_dwt2(grid_from(image));
        return py::make_tuple(to_array(b.ll), to_array(b.lh), to_array(b.hl), to_array(b.hh));
      },
      py::arg("image"), "One-level orthonormal Haar transform: (LL, LH, HL, HH).");
  m.def(
      "haar_idwt2",
      [](const F64Array& ll, const F64Array& lh, const F64Array& hl, const F64Array& hh) {
        return to_array(haar_idwt2(HaarSubbands{grid_from(ll), grid_from(lh), grid_from(hl), grid_from(hh)}));
      },
      py::arg("ll"), py::arg("lh"), py::arg("hl"), py::arg("hh"));

  m.def("feature_names", [] {
    const auto& n = feature_names();
    return std::vector<std::string>(n.begin(), n.end());
  });
  m.def(
      "analyze_silhouettes",
      [](const U8Array& masks, double fps) {
        const auto ms = masks_from(masks);
        const auto a = analyze_silhouettes(ms, fps);
        py::dict d;
        d["period"] = a.period;
        d["cycles"] = cycles_to_list(a.cycles);
        d["window"] = cycles_to_list(a.window);
        d["features"] = a.features.fused();
        return d;
      },
      py::arg("masks"), py::arg("fps") = 25.0, "Period, cycles, feature window and the 14 fused features.");

  m.def(
      "kernel_eval",
      [](const std::vector<double>& x, const std::vector<double>& y, const std::string& kernel, int degree,
         double sigma) { return kernel_eval(kernel_from(kernel, 1.0, degree, sigma), x, y); },
      py::arg("x"), py::arg("y"), py::arg("kernel") = "linear", py::arg("degree") = 2, py::arg("sigma") = 1.0);

  py::class_<SvmModel>(m, "SvmModel")
      .def_property_readonly("classes", [](const SvmModel& s) { return s.classes; })
      .def_property_readonly("dimension", &SvmModel::dimension)
      .def_property_readonly("machine_count", [](const SvmModel& s) { return s.machines.size(); })
      .def("predict", [](const SvmModel& s, const std::vector<double>& x) { return predict(s, x); }, py::arg("x"))
      .def(
          "predict_many",
          [](const SvmModel& s, const F64Array& xs) {
            std::vector<std::string> out;
            for (const auto& x : samples_from(xs)) out.push_back(predict(s, x));
            return out;
          },
          py::arg("samples"))
      .def(
          "kkt",
          [](const SvmModel& s, const F64Array& xs, const std::vector<std::string>& labels) {
            py::list out;
            for (const auto& r : check_model_kkt(s, samples_from(xs), labels)) {
              py::dict d;
              d["max_violation"] = r.max_violation;
              d["max_box_excess"] = r.max_box_excess;
              d["equality_residual"] = r.equality_residual;
              out.append(d);
            }
            return out;
          },
          py::arg("samples"), py::arg("labels"), "KKT report per binary machine against its training data.")
      .def("to_text", [](const SvmModel& s) { return serialize_model(s); })
      .def_static("from_text", &parse_model, py::arg("text"))
      .def("save", [](const SvmModel& s, const std::filesystem::path& p) { save_model(s, p); }, py::arg("path"))
      .def_static("load", [](const std::filesystem::path& p) { return load_model(p); }, py::arg("path"));

  m.def(
      "train",
      [](const F64Array& samples, const std::vector<std::string>& labels, const std::string& kernel, double c,
         double sigma, int degree, std::uint64_t seed, double tol, int max_passes) {
        SmoOptions opt;
        opt.seed = seed;
        opt.tol = tol;
        opt.max_passes = max_passes;
        const auto x = samples_from(samples);
        py::gil_scoped_release release;
        return train_multiclass(x, labels, kernel_from(kernel, c, degree, sigma), opt);
      },
      py::arg("samples"), py::arg("labels"), py::arg("kernel") = "rbf", py::arg("c") = 10.0, py::arg("sigma") = 2.0,
      py::arg("degree") = 2, py::arg("seed") = 1, py::arg("tol") = 1e-3, py::arg("max_passes") = 10,
      "Train a z-scored one-vs-one SVM.");

  m.def(
      "evaluate",
      [](const std::vector<std::string>& truth, const std::vector<std::string>& predicted) {
        return measures_dict(evaluate(truth, predicted));
      },
      py::arg("truth"), py::arg("predicted"), "Confusion matrix with macro-averaged measures.");

  m.def(
      "generate",
      [](double body_height, double body_width, int period_frames, double stride_px, double leg_swing_amplitude,
         double start_x, int direction, double noise_rate, std::uint64_t seed, int frame_width, int frame_height,
         int n_frames, int background_level) {
        WalkerSpec w{body_height, body_width, period_frames, stride_px, leg_swing_amplitude,
                     start_x,     direction,  noise_rate,    seed};
        SceneSpec s;
        s.frame_width = frame_width;
        s.frame_height = frame_height;
        s.n_frames = n_frames;
        s.background_level = background_level;
        const auto seq = generate(w, s);
        py::array_t<int> boxes({static_cast<py::ssize_t>(seq.truth.bboxes.size()), py::ssize_t{4}});
        auto* b = boxes.mutable_data();
        for (const auto& bb : seq.truth.bboxes) {
          *b++ = bb.x_min;
          *b++ = bb.y_min;
          *b++ = bb.x_max;
          *b++ = bb.y_max;
        }
        py::dict truth;
        truth["period_frames"] = seq.truth.period_frames;
        truth["stride_px"] = seq.truth.stride_px;
        truth["bboxes"] = boxes;
        truth["centroids_x"] = seq.truth.centroids_x;
        return py::make_tuple(to_array(seq.frames.frames()), truth);
      },
      py::kw_only(), py::arg("body_height") = 100.0, py::arg("body_width") = 30.0, py::arg("period_frames") = 30,
      py::arg("stride_px") = 40.0, py::arg("leg_swing_amplitude") = 40.0, py::arg("start_x") = 60.0,
      py::arg("direction") = 1, py::arg("noise_rate") = 0.0, py::arg("seed") = 1, py::arg("frame_width") = 352,
      py::arg("frame_height") = 240, py::arg("n_frames") = 120, py::arg("background_level") = 40,
      "Render a synthetic walker; returns (frames, ground truth).");

  m.def(
      "run_pipeline",
      [](const std::filesystem::path& dataset, const std::filesystem::path& workdir,
         const std::map<std::string, std::string>& options) {
        const auto cfg = pipeline_config(dataset, workdir, options);
        PipelineReport rep;
        {
          py::gil_scoped_release release;
          rep = run_pipeline(cfg);
        }
        auto d = measures_dict(rep.evaluation.confusion);
        d["report"] = rep.text;
        d["truth"] = rep.evaluation.truth;
        d["predicted"] = rep.evaluation.predicted;
        return d;
      },
      py::arg("dataset"), py::arg("workdir"), py::arg("options") = std::map<std::string, std::string>{},
      "End-to-end run; options take the same keys as the configuration file.");
  m.def(
      "run_ablation",
      [](const std::filesystem::path& dataset, const std::filesystem::path& workdir,
         const std::map<std::string, std::string>& options) {
        const auto cfg = pipeline_config(dataset, workdir, options);
        std::vector<AblationRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_ablation(cfg);
        }
        py::list out;
        for (const auto& r : rows) out.append(py::make_tuple(to_string(r.set), r.dimension, r.accuracy));
        return out;
      },
      py::arg("dataset"), py::arg("workdir"), py::arg("options") = std::map<std::string, std::string>{});
}
