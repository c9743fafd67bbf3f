#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sphsamp/acceptance.hpp"
#include "sphsamp/cli.hpp"
#include "sphsamp/concentration.hpp"
#include "sphsamp/error.hpp"
#include "sphsamp/families.hpp"
#include "sphsamp/mz.hpp"
#include "sphsamp/parallel.hpp"
#include "sphsamp/sphere.hpp"

namespace py = pybind11;
using namespace sphsamp;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<SpherePoint> to_points(const Array& a) {
  if (a.ndim() != 2 || a.shape(1) < 2) throw InputError("points must be an (m, d+1) array");
  std::vector<SpherePoint> pts;
  pts.reserve(static_cast<std::size_t>(a.shape(0)));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < r.shape(0); ++i) {
    std::vector<double> c(static_cast<std::size_t>(r.shape(1)));
    for (py::ssize_t k = 0; k < r.shape(1); ++k) c[static_cast<std::size_t>(k)] = r(i, k);
    pts.emplace_back(std::move(c));
  }
  return pts;
}

SpherePoint to_point(const Array& a) {
  if (a.ndim() != 1) throw InputError("point must be a 1-d array");
  return SpherePoint(std::vector<double>(a.data(), a.data() + a.size()));
}

Array from_points(const std::vector<SpherePoint>& pts) {
  const py::ssize_t cols = pts.empty() ? 3 : pts.front().dim() + 1;
  Array out({static_cast<py::ssize_t>(pts.size()), cols});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (py::ssize_t k = 0; k < cols; ++k) w(static_cast<py::ssize_t>(i), k) = pts[i][static_cast<std::size_t>(k)];
  return out;
}

Array from_matrix(const Matrix& m) {
  Array out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

TriangularFamily to_family(const py::dict& gens) {
  TriangularFamily fam;
  bool first = true;
  for (auto item : gens) {
    auto pts = to_points(item.second.cast<Array>());
    if (first && !pts.empty()) fam.d = pts.front().dim();
    first = false;
    fam.generations[item.first.cast<int>()] = std::move(pts);
  }
  return fam;
}

py::dict bounds_dict(const FrameBounds& b) {
  py::dict d;
  d["L"] = b.L;
  d["m"] = b.m;
  d["A"] = b.A;
  d["B"] = b.B;
  d["condition"] = b.condition;
  return d;
}

py::dict scaling_dict(const ScalingFit& f) {
  py::dict d;
  d["slope"] = f.slope;
  d["expected_slope"] = f.expected_slope;
  std::vector<int> Ls;
  std::vector<double> values;
  for (const auto& r : f.rows) {
    Ls.push_back(r.L);
    values.push_back(r.value);
  }
  d["Ls"] = Ls;
  d["values"] = values;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sphsamp, m) {
  m.doc() = "Spherical harmonic sampling, concentration and interpolation";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);

  m.def("set_jobs", &set_jobs, py::arg("jobs"));

  m.def("gamma_fn", &gamma_fn);
  m.def("generalized_binomial", &generalized_binomial, py::arg("a"), py::arg("k"));
  m.def(
      "jacobi_eval",
      [](double a, double b, int n, double t) { return jacobi_eval(JacobiIndex(a, b), n, t); },
      py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("t"));
  m.def("gegenbauer_eval", &gegenbauer_eval, py::arg("lam"), py::arg("n"), py::arg("t"));
  m.def(
      "golub_welsch",
      [](int n, double a, double b) {
        const QuadratureRule r = golub_welsch(n, JacobiIndex(a, b));
        return py::make_tuple(r.nodes, r.weights);
      },
      py::arg("n"), py::arg("alpha") = 0.0, py::arg("beta") = 0.0);

  m.def("surface_area", &surface_area, py::arg("d"));
  m.def("cap_area", &cap_area, py::arg("d"), py::arg("theta"));
  m.def("dim_h", &dim_h, py::arg("d"), py::arg("ell"));
  m.def("dim_pi", &dim_pi, py::arg("d"), py::arg("L"));
  m.def("kernel_constant", &kernel_constant, py::arg("d"), py::arg("L"));
  m.def(
      "eval_kernel",
      [](int d, int L, const Array& u, const Array& v) { return eval_kernel(d, L, to_point(u), to_point(v)); },
      py::arg("d"), py::arg("L"), py::arg("u"), py::arg("v"));
  m.def(
      "basis_eval", [](int L, const Array& u) { return basis_eval_s2(L, to_point(u)); }, py::arg("L"),
      py::arg("u"));
  m.def(
      "evaluation_matrix",
      [](int L, const Array& pts) { return from_matrix(evaluation_matrix(HarmonicBasis(L), to_points(pts))); },
      py::arg("L"), py::arg("points"));

  m.def(
      "spectrum",
      [](int L, std::optional<double> alpha, std::optional<double> theta) {
        if (alpha.has_value() == theta.has_value()) throw InputError("spectrum: give exactly one of alpha, theta");
        const SpectrumReport s =
            alpha ? spectrum(L, *alpha, RadiusMode::kAlpha) : spectrum(L, *theta, RadiusMode::kTheta);
        py::dict d;
        d["L"] = L;
        d["alpha"] = s.alpha;
        d["theta"] = s.theta;
        d["eigenvalues"] = s.eigenvalues;
        d["trace"] = s.trace;
        d["trace_sq"] = s.trace_sq;
        d["clamped"] = s.clamped;
        return d;
      },
      py::arg("L"), py::arg("alpha") = py::none(), py::arg("theta") = py::none());
  m.def("trace_closed_form", &trace_closed_form, py::arg("d"), py::arg("L"), py::arg("alpha"));
  m.def(
      "trace_square",
      [](int d, int L, double alpha, const std::string& method) {
        TraceSquareMethod mth = TraceSquareMethod::kAuto;
        if (method == "spectral") mth = TraceSquareMethod::kSpectral;
        else if (method == "nested") mth = TraceSquareMethod::kNestedQuadrature;
        else if (method != "auto") throw InputError("trace_square: method is auto | spectral | nested");
        return trace_square(d, L, alpha, mth).value;
      },
      py::arg("d"), py::arg("L"), py::arg("alpha"), py::arg("method") = "auto");
  m.def(
      "trace_deficit_slope",
      [](int d, int L, const std::vector<double>& alphas) {
        const TraceDeficitFit f = trace_deficit_slope(d, L, alphas);
        py::dict out;
        out["slope"] = f.slope;
        out["intercept"] = f.intercept;
        std::vector<double> deficit;
        for (const auto& r : f.rows) deficit.push_back(r.deficit);
        out["deficits"] = deficit;
        return out;
      },
      py::arg("d"), py::arg("L"), py::arg("alphas"));

  m.def(
      "fibonacci", [](int L, double c) { return from_points(gen_fibonacci(L, c)); }, py::arg("L"),
      py::arg("c") = 1.0);
  m.def(
      "random_points", [](int d, std::size_t n, std::uint64_t seed) { return from_points(gen_random(d, n, seed)); },
      py::arg("d"), py::arg("m"), py::arg("seed"));
  m.def("tetrahedron", [] { return from_points(tetrahedron()); });
  m.def(
      "separation_constant", [](const Array& pts, int L) { return separation_constant(to_points(pts), L).value; },
      py::arg("points"), py::arg("L"));
  m.def(
      "extract_separated",
      [](const Array& pts, int L, double delta) { return extract_separated_indices(to_points(pts), L, delta); },
      py::arg("points"), py::arg("L"), py::arg("delta"));
  m.def(
      "density_scan",
      [](const py::dict& family, const std::vector<double>& alphas, const std::vector<int>& Ls, int probe_factor) {
        const DensityReport r = density_scan(to_family(family), alphas, Ls, probe_factor);
        py::dict d;
        d["d_minus_est"] = r.d_minus_est;
        d["d_plus_est"] = r.d_plus_est;
        d["warnings"] = r.warnings;
        return d;
      },
      py::arg("family"), py::arg("alphas"), py::arg("Ls"), py::arg("probe_factor") = 4);

  m.def(
      "frame_bounds", [](const Array& pts, int L) { return bounds_dict(frame_bounds_l2(to_points(pts), L)); },
      py::arg("points"), py::arg("L"));
  m.def(
      "interpolate",
      [](const Array& pts, int L, const std::vector<double>& values) {
        const InterpolationResult r = interpolate_min_norm(to_points(pts), L, values);
        py::dict d;
        d["coefficients"] = r.coefficients.coeffs;
        d["residual"] = r.residual;
        d["rank"] = r.rank;
        d["condition"] = r.condition;
        d["stability_quotient"] = r.stability_quotient;
        d["interpolating"] = r.interpolating;
        return d;
      },
      py::arg("points"), py::arg("L"), py::arg("values"));
  m.def("critical_density", &critical_density, py::arg("d"));
  m.def("critical_density_via_trace", &critical_density_via_trace, py::arg("d"), py::arg("L"), py::arg("alpha"));
  m.def(
      "delayed_means",
      [](int d, int L) {
        const DelayedMeans dm = delayed_means_check(d, L);
        py::dict out;
        out["symbols"] = dm.symbols;
        out["l1_norm"] = dm.l1_norm;
        out["scale"] = dm.scale;
        return out;
      },
      py::arg("d"), py::arg("L"));
  m.def(
      "mollifier_symbols", [](int d, int L, double delta) { return mollifier_symbol(d, L, delta).symbols; },
      py::arg("d"), py::arg("L"), py::arg("delta"));
  m.def(
      "jacobi_lp_scaling",
      [](int d, double p, const std::vector<int>& Ls) { return scaling_dict(jacobi_lp_scaling(d, p, Ls)); },
      py::arg("d"), py::arg("p"), py::arg("Ls"));
  m.def(
      "projection_l1_norm", [](int d, const std::vector<int>& Ls) { return scaling_dict(projection_l1_norm(d, Ls)); },
      py::arg("d"), py::arg("Ls"));
  m.def(
      "kernel_constant_scaling",
      [](int d, const std::vector<int>& Ls) { return scaling_dict(kernel_constant_scaling(d, Ls)); }, py::arg("d"),
      py::arg("Ls"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
  m.def(
      "run_acceptance",
      [](bool quick) {
        std::ostringstream os;
        std::vector<CriterionResult> res;
        {
          py::gil_scoped_release release;
          res = run_acceptance(quick, os);
        }
        py::list out;
        for (const auto& r : res) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["pass"] = r.pass;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("quick") = true);
}
