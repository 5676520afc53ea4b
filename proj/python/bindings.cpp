#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rslab/comparison.hpp"
#include "rslab/curvature.hpp"
#include "rslab/geodesic.hpp"
#include "rslab/neumann.hpp"
#include "rslab/runner.hpp"
#include "rslab/transport.hpp"

namespace py = pybind11;
using namespace rslab;

namespace {

RotSymSpace make_space_py(int m, double alpha, const std::string& warp,
                          const std::vector<double>& warp_params, const std::string& density,
                          const std::vector<double>& density_params, double r_max) {
    return RotSymSpace(m, alpha, make_profile(warp, warp_params, r_max),
                       make_profile(density, density_params, r_max));
}

py::dict series_dict(const ComparisonSeries& s) {
    py::dict d;
    d["radii"] = s.radii;
    d["values"] = s.values;
    d["normalized"] = s.normalized;
    d["bound"] = s.bound;
    if (s.monotone_violation) {
        py::dict v;
        v["index"] = s.monotone_violation->index;
        v["t"] = s.monotone_violation->t;
        v["magnitude"] = s.monotone_violation->magnitude;
        d["violation"] = v;
    } else {
        d["violation"] = py::none();
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_rslab, mod) {
    mod.doc() = "numerical audits of weighted curvature comparison and isoperimetric "
                "inequalities on rotationally symmetric spaces";

    py::class_<RadialProfile>(mod, "RadialProfile")
        .def_property_readonly("kind", &RadialProfile::kind)
        .def_property_readonly("r_max", &RadialProfile::r_max)
        .def("value", &RadialProfile::value)
        .def("deriv1", &RadialProfile::deriv1)
        .def("deriv2", &RadialProfile::deriv2);
    mod.def("make_profile", &make_profile, py::arg("preset"), py::arg("params"),
            py::arg("r_max"));

    py::class_<RotSymSpace>(mod, "RotSymSpace")
        .def(py::init(&make_space_py), py::arg("m"), py::arg("alpha"),
             py::arg("warp") = "euclidean", py::arg("warp_params") = std::vector<double>{},
             py::arg("density") = "const", py::arg("density_params") = std::vector<double>{1.0},
             py::arg("r_max") = 100.0)
        .def_property_readonly("m", &RotSymSpace::m)
        .def_property_readonly("alpha", &RotSymSpace::alpha)
        .def_property_readonly("r_max", &RotSymSpace::r_max);

    mod.def("sectional_curvatures", &sectional_curvatures);
    mod.def("ricci_radial_tangential", &ricci_radial_tangential);
    mod.def("weighted_ball_volume", &weighted_ball_volume);
    mod.def("weighted_sphere_area", &weighted_sphere_area);
    mod.def("bakry_emery_eigs", &bakry_emery_eigs);
    mod.def("fd_crosscheck", &fd_crosscheck);

    mod.def("distance",
            [](const RotSymSpace& space, double s1, double theta1, double s2, double theta2) {
                return distance(space, {s1, theta1}, {s2, theta2});
            },
            py::arg("space"), py::arg("s1"), py::arg("theta1"), py::arg("s2"), py::arg("theta2"));

    mod.def("cd_scan", [](const RotSymSpace& space) {
        const CdReport rep = cd_scan(space);
        py::dict d;
        d["verdict"] = to_string(rep.verdict);
        d["min_eig"] = rep.min_eig;
        d["argmin_r"] = rep.argmin_r;
        d["grid"] = rep.grid;
        d["radial_eig"] = rep.radial_eig;
        d["tangential_eig"] = rep.tangential_eig;
        return d;
    });

    mod.def("bishop_gromov",
            [](const RotSymSpace& space, const std::vector<double>& radii,
               const std::string& mode) {
                return series_dict(bishop_gromov(space, radii,
                                                 mode == "sphere" ? BishopGromovMode::Sphere
                                                                  : BishopGromovMode::Ball));
            },
            py::arg("space"), py::arg("radii"), py::arg("mode") = "ball");

    mod.def("mean_curvature_comparison",
            [](const RotSymSpace& space, const std::vector<double>& t_grid) {
                return series_dict(mean_curvature_comparison(space, t_grid));
            });

    mod.def("avr_estimate", [](const RotSymSpace& space) {
        const AvrEstimate a = avr_estimate(space);
        py::dict d;
        d["estimate"] = a.estimate;
        d["error"] = a.extrapolation_error;
        d["upper_bound"] = a.upper_bound;
        d["settled"] = a.settled;
        return d;
    });

    py::class_<NeumannSolution>(mod, "NeumannSolution")
        .def_readonly("lambda_", &NeumannSolution::lambda)
        .def_readonly("grid", &NeumannSolution::grid)
        .def_readonly("u", &NeumannSolution::u)
        .def_readonly("uprime", &NeumannSolution::uprime)
        .def_readonly("usecond", &NeumannSolution::usecond)
        .def_readonly("U_set", &NeumannSolution::U_set)
        .def_readonly("pde_residual_max", &NeumannSolution::pde_residual_max)
        .def("u_at", &NeumannSolution::u_at)
        .def("uprime_at", &NeumannSolution::uprime_at);

    mod.def("normalize_f",
            [](const RotSymSpace& space, double R, const RadialProfile& f0) {
                const NormalizationResult n = normalize_f(space, {R}, f0);
                return py::make_tuple(n.lambda, n.lhs, n.rhs);
            });
    mod.def("solve_neumann_radial",
            [](const RotSymSpace& space, double R, const RadialProfile& f0) {
                return solve_neumann_radial(space, {R}, f0);
            });
    mod.def("verify_lemma1", [](const RotSymSpace& space, const NeumannSolution& sol) {
        const Lemma1Check c = verify_lemma1(space, sol);
        return py::make_tuple(c.max_defect, c.argmax_r);
    });

    mod.def("transport_audit",
            [](const RotSymSpace& space, const NeumannSolution& sol, double s_bar, double r,
               bool certify_ar) {
                const TransportAudit a = transport(space, sol, s_bar, r, certify_ar);
                py::dict d;
                d["base"] = a.base;
                d["r"] = a.r;
                d["image"] = a.image;
                d["in_U"] = a.in_U;
                d["detJ"] = a.detJ;
                d["w_image_detJ"] = a.w_image_detJ;
                d["corollary_bound"] = a.corollary_bound;
                d["jacobian_bound_ok"] = a.jacobian_bound_ok;
                d["monotonicity"] = series_dict(a.monotonicity);
                if (a.ar) d["in_Ar"] = a.ar->in_Ar;
                return d;
            },
            py::arg("space"), py::arg("sol"), py::arg("s_bar"), py::arg("r"),
            py::arg("certify_ar") = false);

    mod.def("sobolev_audit",
            [](const RotSymSpace& space, double R, const RadialProfile& f0,
               const std::vector<double>& r_list) {
                return sobolev_audit(space, {R}, f0, r_list).to_json();
            });
    mod.def("isoperimetric_check",
            [](const RotSymSpace& space, double R, const std::vector<double>& r_list) {
                return isoperimetric_check(space, {R}, r_list).to_json();
            });
}
