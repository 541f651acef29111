#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ctslim/codec.hpp"
#include "ctslim/config.hpp"
#include "ctslim/kde.hpp"
#include "ctslim/metrics.hpp"
#include "ctslim/morphology.hpp"
#include "ctslim/phantom.hpp"
#include "ctslim/pipeline.hpp"
#include "ctslim/report.hpp"
#include "ctslim/scan.hpp"
#include "ctslim/spatial.hpp"
#include "ctslim/window.hpp"

namespace py = pybind11;
using namespace ctslim;

namespace {

SliceImage image_from_array(const py::array_t<float, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw Error("expected a 2-D array");
  SliceImage img(static_cast<int>(arr.shape(0)), static_cast<int>(arr.shape(1)));
  std::copy(arr.data(), arr.data() + arr.size(), img.pixels.begin());
  return img;
}

py::array_t<float> image_to_array(const SliceImage& img) {
  py::array_t<float> arr({img.height, img.width});
  std::copy(img.pixels.begin(), img.pixels.end(), arr.mutable_data());
  return arr;
}

BinaryMask mask_from_array(const py::array_t<bool, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw Error("expected a 2-D boolean array");
  BinaryMask mask(static_cast<int>(arr.shape(0)), static_cast<int>(arr.shape(1)));
  const bool* src = arr.data();
  for (std::size_t i = 0; i < mask.bits.size(); ++i) mask.bits[i] = src[i] ? 1 : 0;
  return mask;
}

py::array_t<bool> mask_to_array(const BinaryMask& mask) {
  py::array_t<bool> arr({mask.height, mask.width});
  bool* dst = arr.mutable_data();
  for (std::size_t i = 0; i < mask.bits.size(); ++i) dst[i] = mask.bits[i] != 0;
  return arr;
}

std::vector<metrics::PredictionRecord> zip_records(const std::vector<int>& y,
                                                   const std::vector<double>& y_hat) {
  if (y.size() != y_hat.size()) throw Error("y and y_hat must have equal length");
  std::vector<metrics::PredictionRecord> records(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    records[i] = {std::to_string(i), y[i], y_hat[i]};
  return records;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Slice-stack reduction core: spatial/slice redundancy removal and "
            "density-aware slice sampling";

  py::register_exception<Error>(m, "CtslimError");

  py::class_<CropRect>(m, "CropRect")
      .def(py::init<int, int, int, int>(), py::arg("row_min"), py::arg("row_max"),
           py::arg("col_min"), py::arg("col_max"))
      .def_readwrite("row_min", &CropRect::row_min)
      .def_readwrite("row_max", &CropRect::row_max)
      .def_readwrite("col_min", &CropRect::col_min)
      .def_readwrite("col_max", &CropRect::col_max)
      .def_property_readonly("rows", &CropRect::rows)
      .def_property_readonly("cols", &CropRect::cols)
      .def_property_readonly("area", &CropRect::area)
      .def("__eq__", [](const CropRect& a, const CropRect& b) { return a == b; })
      .def("__repr__", [](const CropRect& r) {
        return "CropRect(" + std::to_string(r.row_min) + ", " + std::to_string(r.row_max) + ", " +
               std::to_string(r.col_min) + ", " + std::to_string(r.col_max) + ")";
      });

  py::class_<SliceWindow>(m, "SliceWindow")
      .def(py::init([](int s, int e, double fraction, bool relaxed) {
             return SliceWindow{s, e, fraction, relaxed};
           }),
           py::arg("s"), py::arg("e"), py::arg("area_fraction") = 0.0, py::arg("relaxed") = false)
      .def_readwrite("s", &SliceWindow::s)
      .def_readwrite("e", &SliceWindow::e)
      .def_readwrite("area_fraction", &SliceWindow::area_fraction)
      .def_readwrite("relaxed", &SliceWindow::relaxed)
      .def_property_readonly("length", &SliceWindow::length)
      .def("__repr__", [](const SliceWindow& w) {
        return "SliceWindow(s=" + std::to_string(w.s) + ", e=" + std::to_string(w.e) +
               ", area_fraction=" + std::to_string(w.area_fraction) + ")";
      });

  py::enum_<SamplingMode>(m, "SamplingMode")
      .value("KDS", SamplingMode::kKds)
      .value("RANDOM", SamplingMode::kRandom)
      .value("NONE", SamplingMode::kNone);

  py::class_<DensityEstimate>(m, "DensityEstimate")
      .def_property_readonly("grid",
                             [](const DensityEstimate& e) { return py::array(py::cast(e.grid)); })
      .def_property_readonly(
          "density", [](const DensityEstimate& e) { return py::array(py::cast(e.density)); })
      .def_property_readonly("cdf",
                             [](const DensityEstimate& e) { return py::array(py::cast(e.cdf)); })
      .def_readonly("bandwidth_h", &DensityEstimate::bandwidth_h)
      .def_readonly("raw_mass", &DensityEstimate::raw_mass)
      .def_readonly("bandwidth_fallback", &DensityEstimate::bandwidth_fallback)
      .def_readonly("uniform_weights", &DensityEstimate::uniform_weights)
      .def_readonly("grid_refined", &DensityEstimate::grid_refined)
      .def("density_at", &DensityEstimate::density_at, py::arg("x"));

  py::class_<SampleSelection>(m, "SampleSelection")
      .def_readonly("indices", &SampleSelection::indices)
      .def_readonly("strata", &SampleSelection::strata)
      .def_readonly("mode", &SampleSelection::mode);

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init<>())
      .def_readwrite("k", &PipelineConfig::k)
      .def_readwrite("t", &PipelineConfig::t)
      .def_readwrite("alpha", &PipelineConfig::alpha)
      .def_readwrite("n_c", &PipelineConfig::n_c)
      .def_readwrite("n_samples", &PipelineConfig::n_samples)
      .def_readwrite("out_h", &PipelineConfig::out_h)
      .def_readwrite("out_w", &PipelineConfig::out_w)
      .def_readwrite("seed", &PipelineConfig::seed)
      .def_readwrite("sampling_mode", &PipelineConfig::sampling_mode)
      .def_readwrite("dilate_radius", &PipelineConfig::dilate_radius)
      .def_readwrite("grid_size", &PipelineConfig::grid_size)
      .def_readwrite("per_slice_crop", &PipelineConfig::per_slice_crop)
      .def("validate", &PipelineConfig::validate);

  py::class_<phantom::PhantomSpec>(m, "PhantomSpec")
      .def(py::init<>())
      .def_readwrite("slices", &phantom::PhantomSpec::slices)
      .def_readwrite("height", &phantom::PhantomSpec::height)
      .def_readwrite("width", &phantom::PhantomSpec::width)
      .def_readwrite("body_radius_frac", &phantom::PhantomSpec::body_radius_frac)
      .def_readwrite("lung_a_frac", &phantom::PhantomSpec::lung_a_frac)
      .def_readwrite("lung_b_frac", &phantom::PhantomSpec::lung_b_frac)
      .def_readwrite("lung_offset_frac", &phantom::PhantomSpec::lung_offset_frac)
      .def_readwrite("profile_power", &phantom::PhantomSpec::profile_power)
      .def_readwrite("noise", &phantom::PhantomSpec::noise)
      .def_readwrite("seed", &phantom::PhantomSpec::seed);

  py::class_<phantom::PhantomTruth>(m, "PhantomTruth")
      .def_readonly("scan_id", &phantom::PhantomTruth::scan_id)
      .def_readonly("analytic_areas", &phantom::PhantomTruth::analytic_areas)
      .def_readonly("raster_areas", &phantom::PhantomTruth::raster_areas)
      .def_readonly("body_bbox", &phantom::PhantomTruth::body_bbox);

  // Image ops: 2-D float arrays with intensities in [0, 255].
  m.def("read_image", [](const std::filesystem::path& p) { return image_to_array(read_image(p)); },
        py::arg("path"), "Decode an 8-bit PNG/JPEG to a 2-D float array (RGB -> Rec.601)");
  m.def("write_png",
        [](const py::array_t<float, py::array::c_style | py::array::forcecast>& img,
           const std::filesystem::path& p) { write_png_gray8(image_from_array(img), p); },
        py::arg("image"), py::arg("path"), "Write a 2-D array as an 8-bit grayscale PNG");
  m.def("resize_bilinear",
        [](const py::array_t<float, py::array::c_style | py::array::forcecast>& img, int h, int w) {
          return image_to_array(resize_bilinear(image_from_array(img), h, w));
        },
        py::arg("image"), py::arg("out_h"), py::arg("out_w"));
  m.def("lowpass_filter",
        [](const py::array_t<float, py::array::c_style | py::array::forcecast>& img, int k) {
          return image_to_array(lowpass_filter(image_from_array(img), k));
        },
        py::arg("image"), py::arg("k"), "Box mean over (2k+1)^2 with shrinking borders");
  m.def("segment",
        [](const py::array_t<float, py::array::c_style | py::array::forcecast>& img, double t) {
          return mask_to_array(segment(image_from_array(img), t));
        },
        py::arg("image"), py::arg("t"), "Mask of pixels >= t");
  m.def("crop_rect",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& mask) {
          return crop_rect(mask_from_array(mask));
        },
        py::arg("mask"), "Tight bounding box of the set bits");
  m.def("apply_crop",
        [](const py::array_t<float, py::array::c_style | py::array::forcecast>& img,
           const CropRect& rect) { return image_to_array(apply_crop(image_from_array(img), rect)); },
        py::arg("image"), py::arg("rect"));

  // Morphology and the slice step.
  m.def("dilate",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& mask, int radius) {
          return mask_to_array(dilate(mask_from_array(mask), radius));
        },
        py::arg("mask"), py::arg("radius"));
  m.def("fill_holes",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& mask) {
          return mask_to_array(fill_holes(mask_from_array(mask)));
        },
        py::arg("mask"));
  m.def("slice_area",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& mask, int radius) {
          return slice_area(mask_from_array(mask), radius);
        },
        py::arg("mask"), py::arg("dilate_radius") = 3,
        "Enclosed-cavity pixel count after dilation and hole filling");
  m.def("select_window",
        [](const std::vector<double>& areas, double alpha, std::optional<int> n_c) {
          return select_window(AreaProfile::from(areas), alpha, n_c);
        },
        py::arg("areas"), py::arg("alpha") = 0.5, py::arg("n_c") = std::nullopt);

  // KDE sampling.
  m.def("scotts_bandwidth",
        [](const std::vector<double>& points, const std::vector<double>& weights) {
          const Bandwidth bw = scotts_bandwidth(points, weights);
          return py::make_tuple(bw.h, bw.fallback);
        },
        py::arg("points"), py::arg("weights"), "Returns (h, fallback)");
  m.def("estimate_density",
        [](const SliceWindow& window, const std::vector<double>& areas, int grid_size) {
          return estimate_density(window, AreaProfile::from(areas), grid_size);
        },
        py::arg("window"), py::arg("areas"), py::arg("grid_size") = 100);
  m.def("stratify", &stratify, py::arg("estimate"), py::arg("n"));
  m.def("sample",
        [](const DensityEstimate& est, const SliceWindow& window, int n, std::uint64_t seed) {
          return sample(est, window, n, seed);
        },
        py::arg("estimate"), py::arg("window"), py::arg("n"), py::arg("seed"));
  m.def("sample_random", &sample_random, py::arg("window"), py::arg("n"), py::arg("seed"));

  // Metrics.
  m.def("bce_loss",
        [](const std::vector<int>& y, const std::vector<double>& y_hat) {
          return metrics::bce_loss(zip_records(y, y_hat));
        },
        py::arg("y"), py::arg("y_hat"));
  m.def("f1_score",
        [](const std::vector<int>& y, const std::vector<double>& y_hat, double threshold) {
          const auto rep = metrics::f1_score(zip_records(y, y_hat), threshold);
          py::dict d;
          d["f1_positive"] = rep.f1_pos;
          d["f1_negative"] = rep.f1_neg;
          d["macro_f1"] = rep.macro_f1;
          d["precision_positive"] = rep.precision_pos;
          d["recall_positive"] = rep.recall_pos;
          d["precision_negative"] = rep.precision_neg;
          d["recall_negative"] = rep.recall_neg;
          d["zero_division"] = rep.zero_division;
          return d;
        },
        py::arg("y"), py::arg("y_hat"), py::arg("threshold") = 0.5);
  m.def("rank_auc",
        [](const std::vector<int>& y, const std::vector<double>& y_hat) {
          return metrics::rank_auc(zip_records(y, y_hat));
        },
        py::arg("y"), py::arg("y_hat"));

  // Phantoms and the full pipeline.
  m.def("generate_phantom", &phantom::generate_phantom, py::arg("spec"), py::arg("scan_dir"));
  m.def("run_pipeline",
        [](const std::filesystem::path& dataset, const std::filesystem::path& out,
           const PipelineConfig& config, int jobs,
           std::optional<std::filesystem::path> labels) {
          pipeline::RunOptions options;
          options.config = config;
          options.jobs = jobs;
          options.labels_csv = labels;
          options.quiet = true;
          const auto result = pipeline::run_pipeline(dataset, out, options);
          py::dict d;
          d["scans"] = result.outcomes.size();
          d["failed"] = result.failed;
          d["report_json"] = result.report_json.string();
          py::list windows;
          for (const auto& o : result.outcomes) {
            py::dict rec;
            rec["scan_id"] = o.scan_id;
            rec["ok"] = o.ok;
            if (o.ok) {
              rec["spatial_delta"] = o.record.spatial_delta();
              rec["slice_delta"] = o.record.slice_delta();
              rec["product_delta"] = o.record.product_delta();
            }
            windows.append(rec);
          }
          d["outcomes"] = windows;
          return d;
        },
        py::arg("dataset"), py::arg("out"), py::arg("config") = PipelineConfig{},
        py::arg("jobs") = 0, py::arg("labels") = std::nullopt);

  m.attr("__version__") = "0.1.0";
}
