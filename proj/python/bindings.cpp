#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "fockpack/certify.hpp"
#include "fockpack/density.hpp"
#include "fockpack/errors.hpp"
#include "fockpack/fock.hpp"
#include "fockpack/json.hpp"
#include "fockpack/lattice.hpp"
#include "fockpack/version.hpp"

namespace py = pybind11;
using namespace fockpack;

namespace {

using Points = py::array_t<double, py::array::c_style | py::array::forcecast>;
using RegionTuple = std::tuple<double, double, double, double>;

PointSet to_point_set(const Points& a) {
  if (a.size() == 0) return PointSet{};
  if (a.ndim() != 2 || a.shape(1) != 2) throw InvalidInput("points must have shape (n, 2)");
  const auto v = a.unchecked<2>();
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(v.shape(0)));
  for (py::ssize_t i = 0; i < v.shape(0); ++i) pts.push_back({v(i, 0), v(i, 1)});
  return PointSet(std::move(pts));
}

py::array_t<double> to_array(const PointSet& ps) {
  py::array_t<double> out({static_cast<py::ssize_t>(ps.size()), py::ssize_t{2}});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    v(static_cast<py::ssize_t>(i), 0) = ps[i].x;
    v(static_cast<py::ssize_t>(i), 1) = ps[i].y;
  }
  return out;
}

Region to_region(const RegionTuple& r) {
  const Region region{std::get<0>(r), std::get<1>(r), std::get<2>(r), std::get<3>(r)};
  region.validate();
  return region;
}

py::object to_python(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      return py::none();
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(to_python(item));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = to_python(value);
      return out;
    }
    default:
      return py::none();
  }
}

template <typename T>
py::object as_dict(const T& value) {
  return to_python(nlohmann::json(value));
}

FockParams params(double alpha, double p) {
  FockParams fp{alpha, p};
  fp.validate();
  return fp;
}

}  // namespace

PYBIND11_MODULE(_fockpack, m) {
  m.doc() = "Separation, covering and density tools for sampling and interpolation in Fock spaces.";
  m.attr("__version__") = kVersion;

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);

  // Thresholds and bounds.
  m.def("tung_threshold", [](double alpha) { return tung_threshold(params(alpha, 2.0)); }, py::arg("alpha"));
  m.def("improved_interpolation_threshold",
        [](double alpha) { return improved_interpolation_threshold(params(alpha, 2.0)); }, py::arg("alpha"));
  m.def("covering_sampling_threshold",
        [](double alpha) { return covering_sampling_threshold(params(alpha, 2.0)); }, py::arg("alpha"));
  m.def("critical_density", [](double alpha) { return critical_density(params(alpha, 2.0)); },
        py::arg("alpha"));
  m.def("separation_density_bound", &separation_density_bound, py::arg("sigma"));
  m.def("covering_density_bound", &covering_density_bound, py::arg("sigma"));

  // Point sets.
  m.def(
      "lattice",
      [](const std::string& kind, double spacing, const RegionTuple& region, std::pair<double, double> offset,
         double rotation) {
        const LatticeSpec spec{parse_lattice_kind(kind), spacing, {offset.first, offset.second}, rotation};
        return to_array(generate(spec, to_region(region)));
      },
      py::arg("kind"), py::arg("spacing"), py::arg("region"), py::arg("offset") = std::pair{0.0, 0.0},
      py::arg("rotation") = 0.0, "Lattice points inside region = (xmin, xmax, ymin, ymax).");
  m.def(
      "lattice_patch",
      [](const std::string& kind, double spacing, double radius_in_spacings) {
        return to_array(lattice_patch({parse_lattice_kind(kind), spacing, {}, 0.0}, radius_in_spacings));
      },
      py::arg("kind"), py::arg("spacing"), py::arg("radius_in_spacings"));
  m.def(
      "perturb",
      [](const Points& pts, double magnitude, std::uint64_t seed) {
        return to_array(perturb(to_point_set(pts), magnitude, seed));
      },
      py::arg("points"), py::arg("magnitude"), py::arg("seed"));
  m.def(
      "random_separated",
      [](const RegionTuple& region, double sigma, std::size_t attempts, std::uint64_t seed) {
        return to_array(random_separated(to_region(region), sigma, attempts, seed));
      },
      py::arg("region"), py::arg("sigma"), py::arg("attempts"), py::arg("seed"));

  // Geometry.
  m.def("min_separation", [](const Points& pts) { return min_separation(to_point_set(pts)); },
        py::arg("points"));
  m.def(
      "count_in_disk",
      [](const Points& pts, std::pair<double, double> center, double radius) {
        return count_in_disk(to_point_set(pts), Disk({center.first, center.second}, radius));
      },
      py::arg("points"), py::arg("center"), py::arg("radius"), "Points strictly inside the disk.");
  m.def(
      "covering_radius",
      [](const Points& pts, const RegionTuple& region, double step) {
        return covering_radius(to_point_set(pts), to_region(region), GridSpec{step});
      },
      py::arg("points"), py::arg("region"), py::arg("step"));
  m.def(
      "is_covering",
      [](const Points& pts, double sigma, const RegionTuple& region, double step) {
        return as_dict(is_covering(to_point_set(pts), sigma, to_region(region), GridSpec{step}));
      },
      py::arg("points"), py::arg("sigma"), py::arg("region"), py::arg("step"));

  // Densities.
  m.def(
      "density_profile",
      [](const Points& pts, const std::vector<double>& radii, const RegionTuple& zeta_region, double step) {
        return as_dict(density_profile(to_point_set(pts), radii, to_region(zeta_region), GridSpec{step}));
      },
      py::arg("points"), py::arg("radii"), py::arg("zeta_region"), py::arg("step"));
  m.def(
      "densities",
      [](const Points& pts, const std::vector<double>& radii, const RegionTuple& zeta_region, double step) {
        const auto profile = density_profile(to_point_set(pts), radii, to_region(zeta_region), GridSpec{step});
        py::dict out;
        out["upper"] = as_dict(estimate_upper_density(profile));
        out["lower"] = as_dict(estimate_lower_density(profile));
        return out;
      },
      py::arg("points"), py::arg("radii"), py::arg("zeta_region"), py::arg("step"),
      "Extrapolated upper and lower densities.");
  m.def(
      "packing_density",
      [](const Points& pts, double r0, const std::vector<double>& radii, const RegionTuple& zeta_region,
         double step) {
        return as_dict(packing_density({to_point_set(pts), r0}, radii, to_region(zeta_region), GridSpec{step}));
      },
      py::arg("points"), py::arg("r0"), py::arg("radii"), py::arg("zeta_region"), py::arg("step"));
  m.def(
      "covering_density",
      [](const Points& pts, double r0, const std::vector<double>& radii, const RegionTuple& zeta_region,
         double step) {
        return as_dict(covering_density({to_point_set(pts), r0}, radii, to_region(zeta_region), GridSpec{step}));
      },
      py::arg("points"), py::arg("r0"), py::arg("radii"), py::arg("zeta_region"), py::arg("step"));

  // Certificates.
  m.def(
      "certify_interpolating",
      [](const Points& pts, double alpha, double p) {
        return as_dict(certify_interpolating_by_separation(to_point_set(pts), params(alpha, p)));
      },
      py::arg("points"), py::arg("alpha"), py::arg("p") = 2.0);
  m.def(
      "certify_sampling",
      [](const Points& pts, double sigma, const RegionTuple& region, double step, double alpha, double p) {
        return as_dict(certify_sampling_by_covering(to_point_set(pts), sigma, to_region(region), GridSpec{step},
                                                    params(alpha, p)));
      },
      py::arg("points"), py::arg("sigma"), py::arg("region"), py::arg("step"), py::arg("alpha"),
      py::arg("p") = 2.0);

  // Fock space.
  m.def(
      "gram",
      [](double alpha, const Points& pts) {
        const auto g = gram(alpha, to_point_set(pts));
        py::array_t<Complex> out({g.size(), g.size()});
        auto v = out.mutable_unchecked<2>();
        for (Eigen::Index i = 0; i < g.size(); ++i)
          for (Eigen::Index k = 0; k < g.size(); ++k) v(i, k) = g.entries(i, k);
        return out;
      },
      py::arg("alpha"), py::arg("points"));
  m.def(
      "eig_extremes",
      [](double alpha, const Points& pts, double tol) {
        const auto e = eig_extremes(gram(alpha, to_point_set(pts)), tol);
        return std::pair{e.lambda_min, e.lambda_max};
      },
      py::arg("alpha"), py::arg("points"), py::arg("tol") = 1e-10, "(lambda_min, lambda_max) of the Gram matrix.");
  m.def(
      "interpolate",
      [](double alpha, const Points& pts, const std::vector<Complex>& targets) {
        const auto sol = interpolate(alpha, to_point_set(pts), targets);
        py::dict out;
        out["coefficients"] = py::array_t<Complex>(static_cast<py::ssize_t>(sol.coefficients.size()),
                                                   sol.coefficients.data());
        out["residual_inf"] = sol.residual_inf;
        out["lambda_min"] = sol.lambda_min;
        out["lambda_max"] = sol.lambda_max;
        out["condition"] = sol.condition;
        out["coeff_norm"] = sol.coeff_norm;
        return out;
      },
      py::arg("alpha"), py::arg("points"), py::arg("targets"));
  m.def(
      "evaluate",
      [](double alpha, const Points& pts, const std::vector<Complex>& coefficients, Complex z) {
        return evaluate(alpha, to_point_set(pts), coefficients, z);
      },
      py::arg("alpha"), py::arg("points"), py::arg("coefficients"), py::arg("z"));
  m.def(
      "conditioning_sweep",
      [](double alpha, const std::vector<double>& spacings, double patch_radius) {
        return to_python(nlohmann::json(conditioning_sweep(alpha, spacings, patch_radius)));
      },
      py::arg("alpha"), py::arg("spacings"), py::arg("patch_radius") = 4.0);
}
