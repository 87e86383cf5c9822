#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "filament/config.hpp"
#include "filament/oracle.hpp"
#include "filament/report.hpp"

namespace py = pybind11;
using namespace filament;

namespace {

Branch parse_branch(const std::string& text) {
    if (text == "+" || text == "plus") return Branch::Plus;
    if (text == "-" || text == "minus") return Branch::Minus;
    fail(ErrorCode::ParseError, "branch must be '+' or '-', got '" + text + "'");
}

MassInterpretation parse_interpretation(const std::string& text) {
    if (text == "drop_div_b") return MassInterpretation::DropDivB;
    if (text == "keep_div_b") return MassInterpretation::KeepDivB;
    fail(ErrorCode::ParseError,
         "mass interpretation must be 'drop_div_b' or 'keep_div_b', got '" + text + "'");
}

FrameField frame_of(const DiscreteCurve& curve, std::optional<Vec3> fallback_normal) {
    FrameOptions options;
    options.fallback_normal = fallback_normal;
    return compute_frame(curve, options);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Frenet-frame linear stability analysis of thin plasma filaments";
    m.attr("__version__") = kToolVersion;
    m.attr("SCHEMA_VERSION") = kSchemaVersion;

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string message =
                std::string(error_code_name(e.code())) + ": " + e.what();
            PyErr_SetString(PyExc_ValueError, message.c_str());
        }
    });

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z)
        .def("norm", &Vec3::norm)
        .def("dot", &Vec3::dot)
        .def("cross", &Vec3::cross)
        .def("__repr__", [](const Vec3& v) {
            return "Vec3(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " +
                   std::to_string(v.z) + ")";
        });

    py::class_<DiscreteCurve>(m, "DiscreteCurve")
        .def_readonly("samples", &DiscreteCurve::samples)
        .def_readonly("arc_length", &DiscreteCurve::arc_length)
        .def_readonly("closed", &DiscreteCurve::closed)
        .def("size", &DiscreteCurve::size)
        .def("length", &DiscreteCurve::length)
        .def("spacing", &DiscreteCurve::spacing);

    py::class_<FrameField>(m, "FrameField")
        .def_readonly("t", &FrameField::t)
        .def_readonly("n", &FrameField::n)
        .def_readonly("b", &FrameField::b)
        .def_readonly("kappa", &FrameField::kappa)
        .def_readonly("tau", &FrameField::tau)
        .def_readonly("h", &FrameField::h)
        .def_readonly("closed", &FrameField::closed)
        .def("size", &FrameField::size)
        .def("mean_kappa", &FrameField::mean_kappa);

    py::class_<FrenetResiduals>(m, "FrenetResiduals")
        .def_readonly("tangent", &FrenetResiduals::tangent)
        .def_readonly("normal", &FrenetResiduals::normal)
        .def_readonly("binormal", &FrenetResiduals::binormal)
        .def("max", &FrenetResiduals::max);

    py::enum_<Stability>(m, "Stability")
        .value("STABLE", Stability::Stable)
        .value("MARGINAL", Stability::Marginal)
        .value("UNSTABLE", Stability::Unstable);

    py::class_<RootPair>(m, "RootPair")
        .def_readonly("plus", &RootPair::plus)
        .def_readonly("minus", &RootPair::minus)
        .def("__repr__", [](const RootPair& r) {
            return "RootPair(plus=" + std::to_string(r.plus) +
                   ", minus=" + std::to_string(r.minus) + ")";
        });

    py::class_<GrowthRate>(m, "GrowthRate")
        .def_readonly("im_omega", &GrowthRate::im_omega)
        .def_readonly("im_omega_squared_root", &GrowthRate::im_omega_squared_root)
        .def_readonly("stability", &GrowthRate::stability)
        .def("omega", &GrowthRate::omega);

    py::class_<ScanResult>(m, "ScanResult")
        .def_readonly("im_omega", &ScanResult::im_omega)
        .def_readonly("residual", &ScanResult::residual)
        .def_readonly("cell", &ScanResult::cell);

    // --- geometry ----------------------------------------------------------

    m.def(
        "build_line",
        [](const Vec3& from, const Vec3& to, std::size_t resolution) {
            return build_line({from, to}, resolution);
        },
        py::arg("from_point"), py::arg("to_point"), py::arg("resolution") = 2000);
    m.def(
        "build_circle",
        [](double radius, double turns, std::size_t resolution) {
            return build_circle({radius, turns}, resolution);
        },
        py::arg("radius"), py::arg("turns") = 1.0, py::arg("resolution") = 2000);
    m.def(
        "build_helix",
        [](double a, double b, double turns, std::size_t resolution) {
            return build_helix({a, b, turns}, resolution);
        },
        py::arg("a"), py::arg("b"), py::arg("turns") = 1.0, py::arg("resolution") = 2000);
    m.def(
        "build_polyline",
        [](const std::vector<Vec3>& points, std::size_t resolution, bool closed) {
            return build_polyline(points, resolution, closed);
        },
        py::arg("points"), py::arg("resolution") = 2000, py::arg("closed") = false);

    m.def("compute_frame", &frame_of, py::arg("curve"),
          py::arg("fallback_normal") = std::nullopt);
    m.def("frenet_residual", &frenet_residual, py::arg("frame"), py::arg("curve"));
    m.def("is_planar", &is_planar, py::arg("frame"), py::arg("tol") = 1e-6);
    m.def(
        "filament_length",
        [](const DiscreteCurve& curve, const std::string& convention) {
            return filament_length(curve, convention == "solar_half_loop"
                                              ? LengthConvention::SolarHalfLoop
                                              : LengthConvention::Full);
        },
        py::arg("curve"), py::arg("convention") = "full");

    // --- mode algebra --------------------------------------------------------

    m.def(
        "moivre_expand", [](double theta) { return moivre_expand({theta}); },
        py::arg("theta"), "exp[-i theta] as the pair (cos theta, -sin theta)");
    m.def("solve_kperp", &solve_kperp, py::arg("kappa0"), py::arg("B1_0"), py::arg("J1_0"),
          py::arg("mu0"));
    m.def("solve_kparallel", &solve_kparallel, py::arg("theta_ns"), py::arg("theta_bs"));
    m.def("growth_rate", &growth_rate, py::arg("v1_0"), py::arg("rho0"), py::arg("rho1_0"));
    m.def("adiabatic_relation", &adiabatic_relation, py::arg("rho1_0"), py::arg("rho0"),
          py::arg("p0"));
    m.def(
        "alfven_frequency",
        [](double k_par, double L, double B0, double kappa0, double div_n, double B1_0,
           const std::string& branch) {
            return alfven_frequency(k_par, L, B0, kappa0, div_n, B1_0, parse_branch(branch));
        },
        py::arg("k_par"), py::arg("L"), py::arg("B0"), py::arg("kappa0"), py::arg("div_n"),
        py::arg("B1_0"), py::arg("branch") = "+");
    m.def(
        "alfven_velocity",
        [](double L, double B0, double kappa0, double div_n, double B1_0,
           const std::string& branch) {
            return alfven_velocity(L, B0, kappa0, div_n, B1_0, parse_branch(branch));
        },
        py::arg("L"), py::arg("B0"), py::arg("kappa0"), py::arg("div_n"), py::arg("B1_0"),
        py::arg("branch") = "+");
    m.def(
        "omega_residual_scan",
        [](double rho1_0, double v1_0, double rho0, double div_b,
           const std::string& interpretation, double im_min, double im_max,
           std::size_t steps) {
            return omega_residual_scan(rho1_0, v1_0, rho0, div_b,
                                       parse_interpretation(interpretation),
                                       {im_min, im_max, steps});
        },
        py::arg("rho1_0"), py::arg("v1_0"), py::arg("rho0"), py::arg("div_b") = 0.0,
        py::arg("interpretation") = "drop_div_b", py::arg("im_min") = -2.0,
        py::arg("im_max") = 2.0, py::arg("steps") = 401);

    // --- whole-run entry points ---------------------------------------------
    // Results cross as JSON strings so the python side never shadows the
    // report layout the CLI writes.

    m.def(
        "analyze_json",
        [](const std::string& config_text) {
            return report_json(run_analysis(parse_config_text(config_text))).dump(2);
        },
        py::arg("config_text"));
    m.def(
        "verify_json",
        [](const std::string& config_text) {
            return report_json(run_verify(parse_config_text(config_text))).dump(2);
        },
        py::arg("config_text"));
    m.def(
        "sweep_json",
        [](const std::string& config_text) {
            const AnalysisConfig config = parse_config_text(config_text);
            return report_json(run_sweep(config), config).dump(2);
        },
        py::arg("config_text"));
    m.def(
        "sweep_csv",
        [](const std::string& config_text) {
            return summary_csv(run_sweep(parse_config_text(config_text)));
        },
        py::arg("config_text"),
        "per-row sweep results; the JSON report only counts them");
    m.def(
        "analyze_file_json",
        [](const std::string& path) {
            return report_json(run_analysis(parse_config_file(path))).dump(2);
        },
        py::arg("path"));
}
