#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "spherechord/analytic.hpp"
#include "spherechord/geometry.hpp"
#include "spherechord/samplers.hpp"
#include "spherechord/stats.hpp"
#include "spherechord/verify.hpp"

namespace py = pybind11;
using namespace spherechord;

namespace {

py::object json_to_py(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Eigen::MatrixXd points_to_matrix(const std::vector<UnitVector>& points) {
  if (points.empty()) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd out(points.size(), points.front().dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = points[i].vec();
  }
  return out;
}

ConvexSphericalBody body_from_arrays(const Eigen::MatrixXd& normals,
                                     const Eigen::VectorXd& interior) {
  std::vector<UnitVector> units;
  units.reserve(normals.rows());
  for (Eigen::Index i = 0; i < normals.rows(); ++i) {
    units.emplace_back(Vector(normals.row(i).transpose()));
  }
  return ConvexSphericalBody(std::move(units), UnitVector(interior));
}

}  // namespace

PYBIND11_MODULE(_spherechord, m) {
  m.doc() = "chord-length and point-distance distributions for convex bodies on spheres";

  py::register_exception<UnsupportedBodyError>(m, "UnsupportedBodyError");
  py::register_exception<EfficiencyError>(m, "EfficiencyError");

  m.def("sphere_surface_area", &sphere_surface_area, py::arg("d"));
  m.def("ball_volume", &ball_volume, py::arg("d"));
  m.def("bp_constant", &bp_constant, py::arg("d"));

  m.def(
      "spherical_distance",
      [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return spherical_distance(UnitVector(x), UnitVector(y));
      },
      py::arg("x"), py::arg("y"));

  py::class_<SphericalCap>(m, "SphericalCap")
      .def(py::init([](const Eigen::VectorXd& center, double radius) {
             return SphericalCap(UnitVector(center), radius);
           }),
           py::arg("center"), py::arg("radius"))
      .def_property_readonly("radius", &SphericalCap::radius)
      .def_property_readonly("dim", &SphericalCap::dim)
      .def_property_readonly("center",
                             [](const SphericalCap& cap) { return cap.center().vec(); });

  py::class_<ConvexSphericalBody>(m, "ConvexSphericalBody")
      .def(py::init(&body_from_arrays), py::arg("normals"), py::arg("interior"))
      .def_static("orthant", &ConvexSphericalBody::orthant, py::arg("d"))
      .def_property_readonly("dim", &ConvexSphericalBody::dim)
      .def_property_readonly("bounding_radius",
                             [](const ConvexSphericalBody& b) { return b.bounding().radius; })
      .def("contains", [](const ConvexSphericalBody& b, const Eigen::VectorXd& x) {
        return body_membership(b, UnitVector(x));
      });

  m.def("cap_volume", &cap_volume, py::arg("cap"), py::arg("d"));
  m.def("cap_boundary_area", &cap_boundary_area, py::arg("cap"), py::arg("d"));
  m.def("orthant_volume", &orthant_volume, py::arg("d"));
  m.def("orthant_boundary_area", &orthant_boundary_area, py::arg("d"));

  m.def(
      "cap_sigma_survival",
      [](const SphericalCap& cap, int d, double s) { return cap_sigma_survival(cap, d, s); },
      py::arg("cap"), py::arg("d"), py::arg("s"));
  m.def("cap_delta_density", &cap_delta_density, py::arg("cap"), py::arg("d"), py::arg("t"));
  m.def("even_dim_cap_delta_density", &even_dim_cap_delta_density, py::arg("cap"),
        py::arg("d"), py::arg("t"));
  m.def("cap_delta_cdf", &cap_delta_cdf, py::arg("cap"), py::arg("d"), py::arg("t"));

  m.def("sin_power_antiderivative", &sin_power_antiderivative, py::arg("n"), py::arg("t"));
  m.def("sin_power_double_antiderivative", &sin_power_double_antiderivative, py::arg("n"),
        py::arg("t"));
  m.def("reduction_integral", &reduction_integral, py::arg("k"), py::arg("t"));

  m.def(
      "delta_density_from_cap_sigma",
      [](const SphericalCap& cap, int d, const std::vector<double>& grid) {
        DensityCurve curve =
            delta_density_from_sigma(SigmaCDF::cap_chord(cap, d), cap_volume(cap, d),
                                     cap_boundary_area(cap, d), d, grid);
        return py::make_tuple(curve.values, curve.clamped_points);
      },
      py::arg("cap"), py::arg("d"), py::arg("grid"),
      "transform of the analytic cap chord CDF; returns (density values, clamp count)");

  m.def(
      "delta_density_from_sigma_samples",
      [](const std::vector<double>& samples, double volume, double boundary_area, int d,
         const std::vector<double>& grid) {
        DensityCurve curve = delta_density_from_sigma(SigmaCDF::from_samples(samples), volume,
                                                      boundary_area, d, grid);
        return py::make_tuple(curve.values, curve.clamped_points);
      },
      py::arg("sigma_samples"), py::arg("volume"), py::arg("boundary_area"), py::arg("d"),
      py::arg("grid"));

  m.def(
      "sample_sigma_cap",
      [](const SphericalCap& cap, int d, std::int64_t n, std::uint64_t seed, int workers) {
        SampleBatch batch = sample_sigma_parallel(cap, d, n, seed, workers);
        return py::make_tuple(batch.values, batch.n_attempted);
      },
      py::arg("cap"), py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1,
      "returns (chord samples, plane draws attempted)");
  m.def(
      "sample_sigma_body",
      [](const ConvexSphericalBody& body, int d, std::int64_t n, std::uint64_t seed,
         int workers) {
        SampleBatch batch = sample_sigma_parallel(body, d, n, seed, workers);
        return py::make_tuple(batch.values, batch.n_attempted);
      },
      py::arg("body"), py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1);
  m.def(
      "sample_delta_cap",
      [](const SphericalCap& cap, int d, std::int64_t n, std::uint64_t seed, int workers) {
        return sample_delta_parallel(cap, d, n, seed, workers).values;
      },
      py::arg("cap"), py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1);
  m.def(
      "sample_delta_body",
      [](const ConvexSphericalBody& body, int d, std::int64_t n, std::uint64_t seed,
         int workers) {
        return sample_delta_parallel(body, d, n, seed, workers).values;
      },
      py::arg("body"), py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1);
  m.def(
      "sample_points_in_cap",
      [](const SphericalCap& cap, int d, std::int64_t n, std::uint64_t seed) {
        RngStream rng(seed);
        return points_to_matrix(sample_points_in_cap(cap, d, n, rng).points);
      },
      py::arg("cap"), py::arg("d"), py::arg("n"), py::arg("seed"));
  m.def(
      "sample_points_in_body",
      [](const ConvexSphericalBody& body, int d, std::int64_t n, std::uint64_t seed) {
        RngStream rng(seed);
        return points_to_matrix(sample_points_in_body(body, d, n, rng).points);
      },
      py::arg("body"), py::arg("d"), py::arg("n"), py::arg("seed"));

  m.def(
      "body_measures_mc",
      [](const ConvexSphericalBody& body, int d, std::int64_t n, std::uint64_t seed,
         int workers) {
        const BodyMeasures measures = body_measures_mc(body, d, n, seed, workers);
        py::dict out;
        out["volume"] = measures.volume.value;
        out["volume_se"] = measures.volume.std_error;
        out["boundary_area"] = measures.boundary_area.value;
        out["boundary_area_se"] = measures.boundary_area.std_error;
        out["n"] = measures.n;
        return out;
      },
      py::arg("body"), py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1);

  m.def(
      "crofton_hit_check",
      [](const SphericalCap& cap, int d, std::int64_t n, std::uint64_t seed, int workers) {
        return json_to_py(crofton_hit_check(cap, d, {n, seed, workers}).to_json());
      },
      py::arg("cap"), py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1);
  m.def(
      "cap_sigma_cdf_check",
      [](const SphericalCap& cap, int d, std::int64_t n, std::uint64_t seed, int workers) {
        return json_to_py(cap_sigma_cdf_check(cap, d, {n, seed, workers}).to_json());
      },
      py::arg("cap"), py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1);
  m.def(
      "run_suite",
      [](const std::string& suite, std::int64_t n, std::uint64_t seed, int workers) {
        py::list out;
        for (const auto& report : run_suite(suite, n, seed, workers, std::nullopt)) {
          out.append(json_to_py(report.to_json()));
        }
        return out;
      },
      py::arg("suite"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1);
}
