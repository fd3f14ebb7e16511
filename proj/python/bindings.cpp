#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "srgeom/grassmann.hpp"
#include "srgeom/sr_metric.hpp"
#include "srgeom/strata.hpp"

namespace py = pybind11;
using namespace srgeom;

namespace {

SpdMatrix as_spd(const Eigen::MatrixXd& m) { return SpdMatrix(m); }

py::dict report_dict(const SrReport& r) {
  py::dict d;
  d["d_sr"] = r.value;
  d["branch"] = r.branch;
  d["case"] = r.case_tag;
  d["stratum_x"] = r.stratum_x.parts;
  d["stratum_y"] = r.stratum_y.parts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Scaling-rotation distances and minimal smooth interpolation curves "
      "between symmetric positive-definite matrices";

  py::register_exception<Error>(m, "SrgeomError");

  py::class_<MssrCurve>(m, "Curve")
      .def_property_readonly("label",
                             [](const MssrCurve& c) { return c.class_label; })
      .def_property_readonly("length",
                             [](const MssrCurve& c) { return c.length; })
      .def_property_readonly(
          "start_U", [](const MssrCurve& c) { return c.start.U.matrix(); })
      .def_property_readonly(
          "start_D", [](const MssrCurve& c) { return c.start.D.diag(); })
      .def_property_readonly(
          "end_U", [](const MssrCurve& c) { return c.end.U.matrix(); })
      .def_property_readonly(
          "end_D", [](const MssrCurve& c) { return c.end.D.diag(); })
      .def_property_readonly("A", [](const MssrCurve& c) { return c.A; })
      .def_property_readonly("L", [](const MssrCurve& c) { return c.L; })
      .def(
          "eval",
          [](const MssrCurve& c, double t) { return eval_curve(c, t).matrix(); },
          py::arg("t"), "Interpolated SPD matrix at time t in [0, 1]")
      .def("__repr__", [](const MssrCurve& c) {
        return "<Curve " + c.class_label +
               " length=" + std::to_string(c.length) + ">";
      });

  py::class_<MssrSet>(m, "CurveSet")
      .def_property_readonly("curves",
                             [](const MssrSet& s) { return s.curves; })
      .def_property_readonly("cardinality",
                             [](const MssrSet& s) { return s.cardinality; })
      .def_property_readonly("infinite",
                             [](const MssrSet& s) { return s.infinite; })
      .def_property_readonly("case_tag",
                             [](const MssrSet& s) { return s.case_tag; })
      .def("__len__", [](const MssrSet& s) { return s.curves.size(); })
      .def("__repr__", [](const MssrSet& s) {
        return "<CurveSet " + s.case_tag + ">";
      });

  m.def(
      "d_sr",
      [](const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, double k,
         double tol_eig) { return d_sr(as_spd(X), as_spd(Y), k, tol_eig); },
      py::arg("X"), py::arg("Y"), py::arg("k") = 1.0,
      py::arg("tol_eig") = kTolEig,
      "Scaling-rotation distance between two SPD matrices");

  m.def(
      "d_sr_report",
      [](const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, double k,
         double tol_eig) {
        return report_dict(d_sr_report(as_spd(X), as_spd(Y), k, tol_eig));
      },
      py::arg("X"), py::arg("Y"), py::arg("k") = 1.0,
      py::arg("tol_eig") = kTolEig);

  m.def(
      "classify",
      [](const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, double k,
         double tol, double tol_eig) {
        return classify_mssr(as_spd(X), as_spd(Y), k, tol, tol_eig);
      },
      py::arg("X"), py::arg("Y"), py::arg("k") = 1.0,
      py::arg("tol") = kTolTie, py::arg("tol_eig") = kTolEig,
      "All minimal smooth scaling-rotation curves between X and Y (p = 3)");

  m.def(
      "classify_stepwise",
      [](const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, double k,
         double tol, double tol_eig) {
        return mssr_stepwise(as_spd(X), as_spd(Y), k, tol, tol_eig);
      },
      py::arg("X"), py::arg("Y"), py::arg("k") = 1.0,
      py::arg("tol") = kTolTie, py::arg("tol_eig") = kTolEig,
      "Independent step-by-step construction of the minimal curve set");

  m.def(
      "brute_force_oracle",
      [](const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, double k,
         int n_grid) {
        return brute_force_oracle(as_spd(X), as_spd(Y), k, n_grid);
      },
      py::arg("X"), py::arg("Y"), py::arg("k") = 1.0,
      py::arg("n_grid") = 720,
      "Grid minimization of the frame distance over both fibers (p = 3)");

  m.def(
      "curves_equal",
      [](const MssrCurve& a, const MssrCurve& b, double tol) {
        return curves_equal_p3(a, b, tol);
      },
      py::arg("a"), py::arg("b"), py::arg("tol") = kTolTie);

  m.def(
      "fiber",
      [](const Eigen::MatrixXd& X, double tol_eig) {
        FiberSummary f = fiber_summary(as_spd(X), tol_eig);
        py::dict d;
        d["num_components"] = f.num_components;
        d["component_dim"] = f.component_dim;
        d["total_fiber_dim"] = f.total_fiber_dim;
        d["group_parts"] = f.component_group_parts.parts;
        return d;
      },
      py::arg("X"), py::arg("tol_eig") = kTolEig,
      "Structure of the eigendecomposition fiber over X");

  m.def("count_strata", &count_strata, py::arg("p"),
        "(eigenvalue patterns of Sym+(p), eigenblock patterns upstairs)");

  m.def(
      "sign_change_reducible",
      [](const Eigen::MatrixXd& R) -> py::object {
        std::optional<SignChange> s =
            sign_change_reducible(Involution(Rotation(R)));
        if (!s) return py::none();
        return py::cast(s->signs);
      },
      py::arg("R"),
      "Signs of a closer even sign change, or None when R is irreducible");

  m.def(
      "best_coordinate_plane",
      [](const Eigen::MatrixXd& W) {
        PlaneScan s = best_coordinate_plane(Subspace(W));
        py::dict d;
        d["J"] = s.J;
        d["dist"] = s.dist;
        d["within_bound"] = s.within_bound;
        return d;
      },
      py::arg("W"), "Closest coordinate plane to the column span of W");

  m.def(
      "principal_angles",
      [](const Eigen::MatrixXd& W, const Eigen::MatrixXd& Z) {
        return principal_angles(Subspace(W), Subspace(Z));
      },
      py::arg("W"), py::arg("Z"));

  m.def(
      "d_gr",
      [](const Eigen::MatrixXd& W, const Eigen::MatrixXd& Z) {
        return d_gr(Subspace(W), Subspace(Z));
      },
      py::arg("W"), py::arg("Z"), "Grassmann distance between column spans");
}
