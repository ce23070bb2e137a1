#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hrnr/engine.hpp"
#include "hrnr/structured.hpp"

namespace py = pybind11;
using namespace hrnr;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-D array, got " + std::to_string(a.ndim()) + "-D");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return ComplexMatrix(rows, cols, std::vector<cplx>(a.data(), a.data() + rows * cols));
}

py::array_t<cplx> to_array(const ComplexMatrix& m) {
  py::array_t<cplx> out({m.rows(), m.cols()});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j);
  return out;
}

py::array_t<cplx> to_array(const std::vector<cplx>& v) {
  return py::array_t<cplx>(static_cast<py::ssize_t>(v.size()), v.data());
}

EngineOptions engine_options(int grid, double tol, double theta0) {
  EngineOptions o;
  o.grid = grid;
  o.tol = tol;
  o.theta0 = theta0;
  return o;
}

std::optional<std::size_t> block_r(std::optional<int> r) {
  if (!r) return std::nullopt;
  if (*r <= 0) throw ArgumentError("r must be positive");
  return static_cast<std::size_t>(*r);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Higher-rank numerical ranges: generic engine and closed forms";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  py::register_exception<StructureError>(m, "StructureError", error.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", error.ptr());
  py::register_exception<UnboundedRegionError>(m, "UnboundedRegionError", error.ptr());
  py::register_exception<EmptyRegionError>(m, "EmptyRegionError", error.ptr());
  py::register_exception<FitError>(m, "FitError", error.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", error.ptr());
  py::register_exception<HypothesisError>(m, "HypothesisError", error.ptr());
  py::register_exception<NoClosedFormError>(m, "NoClosedFormError", error.ptr());

  py::class_<ConvexRegion>(m, "ConvexRegion")
      .def_property_readonly("kind", [](const ConvexRegion& r) { return kind_name(r.kind()); })
      .def_property_readonly("points", [](const ConvexRegion& r) { return to_array(r.points()); })
      .def("is_empty", &ConvexRegion::is_empty)
      .def("support", &ConvexRegion::support, py::arg("theta"))
      .def("area", &ConvexRegion::area)
      .def("diameter", &ConvexRegion::diameter)
      .def("contains", [](const ConvexRegion& r, cplx z, double tol) { return region_contains(r, z, tol); },
           py::arg("z"), py::arg("tol") = 0.0)
      .def("__eq__", [](const ConvexRegion& a, const ConvexRegion& b) { return a == b; })
      .def("__repr__", [](const ConvexRegion& r) {
        return "<ConvexRegion " + std::string(kind_name(r.kind())) + " with " +
               std::to_string(r.points().size()) + " points>";
      });

  py::class_<EllipseDisc>(m, "EllipseDisc")
      .def_readonly("center", &EllipseDisc::center)
      .def_readonly("semi_major", &EllipseDisc::semi_major)
      .def_readonly("semi_minor", &EllipseDisc::semi_minor)
      .def_readonly("rotation", &EllipseDisc::rotation)
      .def_readonly("foci", &EllipseDisc::foci)
      .def("sample", [](const EllipseDisc& e, int count) { return to_array(e.sample(count)); }, py::arg("count"))
      .def("support", [](const EllipseDisc& e, double theta) { return ellipse_support(e, theta); },
           py::arg("theta"));

  py::class_<EmptinessCertificate>(m, "EmptinessCertificate")
      .def_property_readonly("kind",
                             [](const EmptinessCertificate& c) {
                               return c.kind == EmptinessCertificate::Kind::OppositePair ? "opposite_pair"
                                                                                          : "halfplane_triple";
                             })
      .def_readonly("theta", &EmptinessCertificate::theta)
      .def_readonly("angles", &EmptinessCertificate::angles)
      .def_readonly("weights", &EmptinessCertificate::weights)
      .def_readonly("margin", &EmptinessCertificate::margin);

  py::class_<RangeResult>(m, "RangeResult")
      .def_readonly("region", &RangeResult::region)
      .def_readonly("k", &RangeResult::k)
      .def_readonly("grid_size", &RangeResult::grid_size)
      .def_readonly("tol", &RangeResult::tol)
      .def_readonly("certificate", &RangeResult::certificate);

  py::class_<ClosedForm>(m, "ClosedForm")
      .def_readonly("k", &ClosedForm::k)
      .def_readonly("ellipse", &ClosedForm::ellipse)
      .def_readonly("region", &ClosedForm::region);

  m.def(
      "rank_k_range",
      [](const CArray& a, int k, int grid, double tol, double theta0) {
        return rank_k_range(to_matrix(a), k, engine_options(grid, tol, theta0));
      },
      py::arg("a"), py::arg("k"), py::arg("grid") = 720, py::arg("tol") = 1e-9, py::arg("theta0") = 0.0);

  m.def(
      "all_rank_k_ranges",
      [](const CArray& a, int grid, double tol, double theta0) {
        return all_rank_k_ranges(to_matrix(a), engine_options(grid, tol, theta0));
      },
      py::arg("a"), py::arg("grid") = 720, py::arg("tol") = 1e-9, py::arg("theta0") = 0.0);

  m.def(
      "membership",
      [](const CArray& a, int k, cplx z, int grid, double tol) {
        return membership(to_matrix(a), k, z, engine_options(grid, tol, 0.0));
      },
      py::arg("a"), py::arg("k"), py::arg("z"), py::arg("grid") = 720, py::arg("tol") = 1e-9);

  m.def(
      "membership_margin",
      [](const CArray& a, int k, cplx z, int grid) {
        return membership_margin(to_matrix(a), k, z, engine_options(grid, 1e-9, 0.0));
      },
      py::arg("a"), py::arg("k"), py::arg("z"), py::arg("grid") = 720);

  m.def(
      "support_spectrum",
      [](const CArray& a, double theta) { return support_spectrum(to_matrix(a), theta).values; },
      py::arg("a"), py::arg("theta"));

  m.def(
      "boundary_points",
      [](const CArray& a, int k, int grid) {
        return to_array(boundary_points(to_matrix(a), k, engine_options(grid, 1e-9, 0.0)));
      },
      py::arg("a"), py::arg("k"), py::arg("grid") = 720);

  m.def(
      "normal_range", [](const std::vector<cplx>& eigs, int k) { return normal_range(eigs, k); },
      py::arg("eigenvalues"), py::arg("k"));
  m.def("hermitian_range", &hermitian_range, py::arg("eigenvalues"), py::arg("k"), py::arg("tol") = 0.0);

  m.def(
      "classify",
      [](const CArray& a, std::optional<int> r, double tol) {
        StructureOptions o;
        o.tol = tol;
        const StructureReport rep = classify(to_matrix(a), block_r(r), o);
        py::dict d;
        d["detected_class"] = class_name(rep.detected_class);
        py::list flags;
        for (const auto c : rep.flags) flags.append(class_name(c));
        d["flags"] = flags;
        d["residuals"] = rep.residuals;
        d["zeta"] = rep.zeta;
        d["theorem_hypotheses"] = rep.theorem_hypotheses;
        d["r"] = rep.block ? py::cast(rep.block->r) : py::none();
        if (rep.singular_data) {
          d["rank"] = rep.singular_data->p;
          d["singular_values"] = rep.singular_data->s;
        }
        return d;
      },
      py::arg("a"), py::arg("r") = py::none(), py::arg("tol") = 1e-8);

  m.def(
      "closed_form_ranges",
      [](const CArray& a, std::optional<int> r, double tol) {
        StructureOptions o;
        o.tol = tol;
        ClosedRoute cr = closed_form_ranges(to_matrix(a), block_r(r), o);
        return py::make_tuple(cr.route, cr.ranges);
      },
      py::arg("a"), py::arg("r") = py::none(), py::arg("tol") = 1e-8);

  m.def(
      "ellipse_2x2", [](const CArray& a) { return ellipse_2x2(to_matrix(a)); }, py::arg("a"));
  m.def(
      "ellipse_fit",
      [](const std::vector<cplx>& pts) {
        const EllipseFit f = ellipse_fit(pts);
        return py::make_tuple(f.ellipse, f.residual);
      },
      py::arg("points"));
  m.def("two_toeplitz_singular_values", &two_toeplitz_singular_values, py::arg("c1"), py::arg("d2"), py::arg("n"));
  m.def(
      "shift_matrix", [](std::size_t n) { return to_array(shift_matrix(n)); }, py::arg("n"));
  m.def("hausdorff_distance", &hausdorff_distance, py::arg("a"), py::arg("b"));
  m.def("discretization_bound", &discretization_bound, py::arg("scale"), py::arg("grid"));
  m.def(
      "range_scale", [](const CArray& a) { return range_scale(to_matrix(a)); }, py::arg("a"));
}
