// Copyright 2026 The ghostimg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "ghostimg/forward.hpp"
#include "ghostimg/io.hpp"
#include "ghostimg/metrics.hpp"
#include "ghostimg/patterns.hpp"
#include "ghostimg/reconstruct.hpp"

namespace py = pybind11;
using namespace ghostimg;

namespace {

using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> image_array(int width, int height, const std::vector<double>& data) {
  py::array_t<double> out({height, width});
  std::copy(data.begin(), data.end(), out.mutable_data());
  return out;
}

ObjectImage object_from_array(const F64Array& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::kDimension, "object must be a 2-D array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  return ObjectImage(w, h, std::vector<double>(a.data(), a.data() + a.size()));
}

std::vector<double> flat(const F64Array& a) { return {a.data(), a.data() + a.size()}; }

ReconstructedImage image_from_array(const F64Array& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::kDimension, "image must be a 2-D array");
  return ReconstructedImage{static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), flat(a),
                            Engine::kFloatDgi};
}

py::array_t<std::uint16_t> display_array(const DisplayImage& d) {
  py::array_t<std::uint16_t> out({d.height, d.width});
  std::copy(d.data.begin(), d.data.end(), out.mutable_data());
  return out;
}

DisplayImage display_from_array(const py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>& a,
                                int bits) {
  if (a.ndim() != 2) throw Error(ErrorCode::kDimension, "image must be a 2-D array");
  return DisplayImage{static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), bits,
                      std::vector<std::uint16_t>(a.data(), a.data() + a.size())};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ghost imaging simulation and reconstruction";

  // Lives as long as the interpreter; instances carry the error code name.
  static PyObject* error_type =
      PyErr_NewException("ghostimg._core.GhostImgError", PyExc_ValueError, nullptr);
  m.attr("GhostImgError") = py::reinterpret_borrow<py::object>(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string code(error_code_name(e.code()));
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(code + ": " + e.what());
      exc.attr("code") = code;
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::enum_<GeneratorKind>(m, "GeneratorKind")
      .value("MSEQUENCE", GeneratorKind::kMSequence)
      .value("LCG", GeneratorKind::kLcg)
      .value("MT", GeneratorKind::kMersenneTwister);

  py::class_<GeneratorDescriptor>(m, "Generator")
      .def_static("mseq", &GeneratorDescriptor::mseq, py::arg("seed") = 1)
      .def_static("lcg", &GeneratorDescriptor::lcg, py::arg("seed") = 1)
      .def_static("mt", &GeneratorDescriptor::mt, py::arg("seed") = 1)
      .def_static("parse", &GeneratorDescriptor::parse)
      .def_readonly("kind", &GeneratorDescriptor::kind)
      .def_readonly("seed", &GeneratorDescriptor::seed)
      .def("__str__", &GeneratorDescriptor::to_string)
      .def("__repr__", [](const GeneratorDescriptor& g) { return "Generator('" + g.to_string() + "')"; })
      .def("__eq__", [](const GeneratorDescriptor& a, const GeneratorDescriptor& b) { return a == b; });

  m.def("lfsr_step", [](std::uint64_t state) {
    const auto [next, bit] = lfsr_step(LfsrState{state, default_tap_mask()});
    return py::make_tuple(next.state, bit);
  }, py::arg("state"), "One clock of the default 64-bit LFSR: (next_state, output_bit).");
  m.def("lfsr_leap64", [](std::uint64_t state) {
    const auto [next, word] = lfsr_leap64(LfsrState{state, default_tap_mask()});
    return py::make_tuple(next.state, word);
  }, py::arg("state"), "64 clocks at once: (next_state, word), bit j = j-th output bit.");

  m.def("patterns", [](const GeneratorDescriptor& g, int width, int height, std::size_t n) {
    const PatternBank bank = generate_patterns(g, width, height, n);
    py::array_t<std::uint8_t> out({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(height),
                                   static_cast<py::ssize_t>(width)});
    auto* dst = out.mutable_data();
    const std::size_t pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t p = 0; p < pixels; ++p) *dst++ = bank.bit(i, p);
    return out;
  }, py::arg("generator"), py::arg("width"), py::arg("height"), py::arg("n"),
     "Replayed patterns as an (n, height, width) uint8 array.");

  py::class_<MeasurementSet>(m, "Measurement")
      .def_property_readonly("samples", [](const MeasurementSet& s) {
        return py::array_t<double>(static_cast<py::ssize_t>(s.samples.size()), s.samples.data());
      })
      .def_readonly("generator", &MeasurementSet::generator)
      .def_readonly("width", &MeasurementSet::width)
      .def_readonly("height", &MeasurementSet::height)
      .def_readonly("adc_bits", &MeasurementSet::adc_bits)
      .def_property_readonly("n", &MeasurementSet::n)
      .def("serialize", &serialize_measurement)
      .def_static("parse", [](const std::string& text) { return parse_measurement(text); })
      .def("__eq__", [](const MeasurementSet& a, const MeasurementSet& b) { return a == b; });

  py::class_<ReferenceTables>(m, "ReferenceTables")
      .def_readonly("mean_r", &ReferenceTables::mean_r)
      .def_property_readonly("mean_ri", [](const ReferenceTables& t) {
        return image_array(t.width, t.height, t.mean_ri);
      })
      .def_readonly("n", &ReferenceTables::n)
      .def("serialize", &serialize_tables)
      .def_static("parse", [](const std::string& text) { return parse_tables(text); });

  m.def("simulate", [](const F64Array& object, const GeneratorDescriptor& g, std::size_t n,
                       std::optional<int> adc_bits, double noise_sigma, std::uint64_t noise_seed) {
    return simulate_measurement(object_from_array(object), g, n, adc_bits, {noise_sigma, noise_seed});
  }, py::arg("object"), py::arg("generator"), py::arg("n"), py::arg("adc_bits") = kDefaultAdcBits,
     py::arg("noise_sigma") = 0.0, py::arg("noise_seed") = 0,
     "Bucket measurements of a 2-D transmittance array in [0, 1].");
  m.def("reference_tables", &build_reference_tables, py::arg("generator"), py::arg("n"),
        py::arg("width"), py::arg("height"));

  m.def("reconstruct_gi", [](const MeasurementSet& s, int threads) {
    const auto o = reconstruct_gi(s, {threads});
    return image_array(o.width, o.height, o.data);
  }, py::arg("measurement"), py::arg("threads") = 1);
  m.def("reconstruct_dgi", [](const MeasurementSet& s, std::optional<ReferenceTables> ref, int threads) {
    const ReferenceTables t = ref ? *ref : build_reference_tables(s.generator, s.n(), s.width, s.height);
    const auto o = reconstruct_dgi_float(s, t, {threads});
    return image_array(o.width, o.height, o.data);
  }, py::arg("measurement"), py::arg("tables") = py::none(), py::arg("threads") = 1);
  m.def("reconstruct_dgi_fixed", [](const MeasurementSet& s, int lanes, int threads) {
    FixedSchedule sched;
    sched.lanes = lanes;
    const auto tables = quantize_tables(
        build_reference_tables(s.generator, s.n(), s.width, s.height), sched);
    const FixedReconstruction r = reconstruct_dgi_fixed(s, tables, sched, {threads});
    py::array_t<std::int64_t> raw({s.height, s.width});
    std::copy(r.raw.begin(), r.raw.end(), raw.mutable_data());
    return py::make_tuple(image_array(s.width, s.height, r.image.data), raw);
  }, py::arg("measurement"), py::arg("lanes") = 64, py::arg("threads") = 1,
     "Division-free fixed-point DGI: (image, raw mantissas in (s,23,28)).");

  m.def("normalize", [](const F64Array& image, int bits) {
    return display_array(normalize_for_display(image_from_array(image), bits));
  }, py::arg("image"), py::arg("bits") = 8);

  m.def("psnr", [](const F64Array& a, const F64Array& b, double peak) {
    return psnr(flat(a), flat(b), peak);
  }, py::arg("a"), py::arg("b"), py::arg("peak") = 255.0);
  m.def("ssim", [](const F64Array& a, const F64Array& b, double peak, int window) {
    if (a.ndim() != 2) throw Error(ErrorCode::kDimension, "ssim needs 2-D arrays");
    return ssim(flat(a), flat(b), static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), peak,
                window);
  }, py::arg("a"), py::arg("b"), py::arg("peak") = 255.0, py::arg("window") = kDefaultSsimWindow);

  m.def("read_pgm", [](const std::filesystem::path& path) {
    const ObjectImage o = read_pgm(path);
    return image_array(o.width(), o.height(), std::vector<double>(o.data().begin(), o.data().end()));
  }, py::arg("path"), "Transmittance array scaled to [0, 1].");
  m.def("write_pgm", [](const py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>& image,
                        const std::filesystem::path& path, int bits) {
    write_pgm(display_from_array(image, bits), path);
  }, py::arg("image"), py::arg("path"), py::arg("bits") = 8);
}
