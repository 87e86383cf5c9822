#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "filament/config.hpp"
#include "filament/report.hpp"

using namespace filament;

namespace {

const char* kBaseConfig = R"(# circular filament, unstable mode
curve.family = circle
curve.radius = 1.0
curve.resolution = 500
congruence.theta_ns = 0.15
congruence.theta_bs = 0.05
congruence.omega_b = 1.0
equilibrium.c0 = -1.0
equilibrium.rho0 = 1.0
equilibrium.p0 = 0.4
mode.B1_0 = 1.0
mode.J1_0 = 0.5
mode.v1_0 = 0.25
mode.rho1_0 = 1.0
)";

AnalysisConfig base_config() { return parse_config_text(kBaseConfig); }

bool message_mentions(const Error& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("parser fills documented defaults") {
    const AnalysisConfig config = base_config();
    CHECK(config.curve.family == CurveFamily::Circle);
    CHECK(config.curve.circle.radius == 1.0);
    CHECK(config.curve.resolution == 500);
    CHECK(config.frame_reading == FrameDerivativeReading::Antisymmetric);
    CHECK(config.b0_form == B0Form::RateSum);
    CHECK(config.branch == Branch::Plus);
    CHECK(config.mass_interpretation == MassInterpretation::DropDivB);
    CHECK(config.length_convention == LengthConvention::Full);
    CHECK(config.gamma == doctest::Approx(5.0 / 3.0));
    CHECK(config.numerics.tol == 1e-6);
    CHECK(config.numerics.scan.steps == 401);
    CHECK(config.sweep.empty());

    const AnalysisConfig defaulted = parse_config_text(
        "curve.family = circle\ncurve.radius = 2\nequilibrium.c0 = -1\n"
        "equilibrium.rho0 = 1\nequilibrium.p0 = 0\nmode.B1_0 = 1\nmode.J1_0 = 0\n"
        "mode.v1_0 = 0\nmode.rho1_0 = 1\n");
    CHECK(defaulted.curve.resolution == 2000);
}

TEST_CASE("parse errors name the offending key and line") {
    SUBCASE("missing required key") {
        const std::string text =
            "curve.family = circle\ncurve.radius = 1\nequilibrium.c0 = -1\n"
            "equilibrium.p0 = 0\nmode.B1_0 = 1\nmode.J1_0 = 0\nmode.v1_0 = 0\n"
            "mode.rho1_0 = 1\n";  // equilibrium.rho0 absent
        bool threw = false;
        try {
            parse_config_text(text);
        } catch (const Error& e) {
            threw = true;
            CHECK(e.code() == ErrorCode::ParseError);
            CHECK(message_mentions(e, "equilibrium.rho0"));
        }
        CHECK(threw);
    }
    SUBCASE("unknown key") {
        bool threw = false;
        try {
            parse_config_text(std::string(kBaseConfig) + "mode.bogus = 1\n");
        } catch (const Error& e) {
            threw = true;
            CHECK(e.code() == ErrorCode::ParseError);
            CHECK(message_mentions(e, "mode.bogus"));
        }
        CHECK(threw);
    }
    SUBCASE("duplicate key") {
        CHECK_THROWS_AS(parse_config_text(std::string(kBaseConfig) + "curve.radius = 2\n"),
                        Error);
    }
    SUBCASE("malformed number carries the line") {
        bool threw = false;
        try {
            // kBaseConfig spans lines 1-14, so the appended line is 15.
            parse_config_text(std::string(kBaseConfig) + "equilibrium.gamma = five\n");
        } catch (const Error& e) {
            threw = true;
            CHECK(message_mentions(e, "line 15"));
        }
        CHECK(threw);
    }
    SUBCASE("bad enum values") {
        CHECK_THROWS_AS(parse_config_text(std::string(kBaseConfig) + "mode.branch = up\n"),
                        Error);
        CHECK_THROWS_AS(
            parse_config_text(std::string(kBaseConfig) + "equilibrium.b0_form = other\n"),
            Error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(parse_config_file("/nonexistent/filament.cfg"), Error);
    }
}

TEST_CASE("tabulated coefficient profiles interpolate onto the curve grid") {
    const AnalysisConfig config = parse_config_text(
        std::string(kBaseConfig) + "congruence.div_n = table: 0 1, 10 2\n");
    const DiscreteCurve curve = config.curve.build();
    const CongruenceCoefficients coeffs = materialize_coefficients(config, curve);
    CHECK(coeffs.div_n.front() == doctest::Approx(1.0));
    // L = 2 pi < 10, so the ramp is still rising at the end of the curve.
    CHECK(coeffs.div_n.back() == doctest::Approx(1.0 + curve.length() / 10.0));
    CHECK(coeffs.theta_ns.front() == 0.15);  // constants broadcast unchanged

    CHECK_THROWS_AS(
        parse_config_text(std::string(kBaseConfig) + "congruence.div_b = table: 0 1\n"), Error);
}

TEST_CASE("set_scalar reaches the same fields the parser does") {
    AnalysisConfig config = base_config();
    set_scalar(config, "curve.radius", 2.5);
    CHECK(config.curve.circle.radius == 2.5);
    set_scalar(config, "mode.v1_0", -0.125);
    CHECK(config.v1_0 == -0.125);
    set_scalar(config, "congruence.omega_b", 0.4);
    CHECK(config.omega_b.constant == 0.4);
    CHECK_THROWS_AS(set_scalar(config, "mode.nope", 1.0), Error);
}

TEST_CASE("run_analysis classifies the configured mode") {
    AnalysisConfig config = base_config();
    const AnalysisResult result = run_analysis(config);

    CHECK(result.growth.stability == Stability::Unstable);
    CHECK(result.growth.im_omega == 0.25);
    CHECK(result.growth.im_omega_squared_root == -0.25);
    CHECK(result.p1_0 == doctest::Approx(0.4 * 1.0 / 1.0));
    CHECK(result.planar);
    CHECK(result.reductions.kappa0 == doctest::Approx(1.0).epsilon(1e-4));
    // mu0 J1_0 is tiny against kappa0 B1_0 at SI mu0, so k_perp tracks kappa0.
    CHECK(result.k_perp.plus == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(result.k_par.plus == doctest::Approx(0.2));
    CHECK(result.verification.b0_form_gap > 1e-3);
    REQUIRE(result.verification.scan.has_value());
    CHECK(result.verification.scan_matches);
    CHECK(result.verification.scan_target == -0.25);

    bool noted_unstable = false;
    for (const std::string& note : result.notes) {
        noted_unstable = noted_unstable || note.find("grows exponentially") != std::string::npos;
    }
    CHECK(noted_unstable);
}

TEST_CASE("stable runs carry the damping note") {
    AnalysisConfig config = base_config();
    set_scalar(config, "mode.v1_0", -0.25);
    const AnalysisResult result = run_analysis(config);
    CHECK(result.growth.stability == Stability::Stable);
    bool damped = false;
    for (const std::string& note : result.notes) {
        damped = damped || note.find("magnetic field is damped") != std::string::npos;
    }
    CHECK(damped);
}

TEST_CASE("degenerate amplitudes surface with their own codes") {
    AnalysisConfig config = base_config();
    set_scalar(config, "mode.B1_0", 0.0);
    bool threw = false;
    try {
        run_analysis(config);
    } catch (const Error& e) {
        threw = true;
        CHECK(e.code() == ErrorCode::DegenerateAmplitude);
    }
    CHECK(threw);

    config = base_config();
    set_scalar(config, "equilibrium.rho0", -1.0);
    bool density = false;
    try {
        run_analysis(config);
    } catch (const Error& e) {
        density = e.code() == ErrorCode::InvalidDensity;
    }
    CHECK(density);
}

TEST_CASE("analysis report JSON is complete and deterministic") {
    const AnalysisConfig config = base_config();
    const nlohmann::ordered_json a = report_json(run_analysis(config));
    const nlohmann::ordered_json b = report_json(run_analysis(config));
    CHECK(a.dump(2) == b.dump(2));

    CHECK(a["schema_version"] == 1);
    CHECK(a["tool"]["name"] == "filament-stability");
    CHECK(a["verb"] == "analyze");

    // Every interpretation flag is echoed.
    CHECK(a["config"]["congruence"]["frame_reading"] == "antisymmetric");
    CHECK(a["config"]["equilibrium"]["b0_form"] == "rate_sum");
    CHECK(a["config"]["mode"]["branch"] == "+");
    CHECK(a["config"]["mode"]["mass_interpretation"] == "drop_div_b");
    CHECK(a["config"]["length"]["convention"] == "full");
    CHECK(a["config"]["numerics"]["tol"] == 1e-6);

    // Solved roots arrive with their verification residuals.
    CHECK(a["mode"]["k_perp"].contains("plus"));
    CHECK(a["verification"]["current_balance"]["plus"].contains("max_sq"));
    CHECK(a["verification"]["mass_conservation"].contains("satisfied_branch"));
    CHECK(a["verification"].contains("b0_form_gap"));
    CHECK(a["stability"] == "UNSTABLE");
}

TEST_CASE("sweep over v1_0 walks the stability trichotomy in order") {
    AnalysisConfig config =
        parse_config_text(std::string(kBaseConfig) + "sweep.mode.v1_0 = -1, 0, 1\n");
    const SweepResult sweep = run_sweep(config);
    REQUIRE(sweep.axes.size() == 1);
    CHECK(sweep.axes[0] == "mode.v1_0");
    REQUIRE(sweep.rows.size() == 3);
    CHECK(sweep.rows[0].stability == Stability::Stable);
    CHECK(sweep.rows[1].stability == Stability::Marginal);
    CHECK(sweep.rows[2].stability == Stability::Unstable);
    CHECK(sweep.rows[0].axis_values[0] == -1.0);
    CHECK(sweep.rows[2].axis_values[0] == 1.0);
}

TEST_CASE("single-point sweep reproduces run_analysis") {
    AnalysisConfig config =
        parse_config_text(std::string(kBaseConfig) + "sweep.mode.v1_0 = 0.25\n");
    const SweepResult sweep = run_sweep(config);
    REQUIRE(sweep.rows.size() == 1);

    AnalysisConfig single = base_config();
    const AnalysisResult direct = run_analysis(single);
    const SweepRow& row = sweep.rows[0];
    CHECK(row.kappa0 == direct.reductions.kappa0);
    CHECK(row.L == direct.reductions.L);
    CHECK(row.im_omega == direct.growth.im_omega);
    CHECK(row.va == direct.va);
    CHECK(row.stability == direct.growth.stability);
    CHECK(row.p1_0 == direct.p1_0);
}

TEST_CASE("alfven velocity is linear in div_n across a sweep") {
    AnalysisConfig config =
        parse_config_text(std::string(kBaseConfig) + "sweep.congruence.div_n = 0, 0.5, 1\n");
    const SweepResult sweep = run_sweep(config);
    REQUIRE(sweep.rows.size() == 3);
    const double va0 = sweep.rows[0].va;
    const double va1 = sweep.rows[1].va;
    const double va2 = sweep.rows[2].va;
    CHECK(va1 > va0);
    CHECK(va2 > va1);
    CHECK(va2 - va1 == doctest::Approx(va1 - va0).epsilon(1e-9));
}

TEST_CASE("multi-axis sweeps are lexicographic with sorted axes") {
    AnalysisConfig config = parse_config_text(std::string(kBaseConfig) +
                                              "sweep.mode.v1_0 = linspace(-1, 1, 2)\n"
                                              "sweep.equilibrium.p0 = 1, 2, 3\n");
    const SweepResult sweep = run_sweep(config);
    REQUIRE(sweep.axes.size() == 2);
    CHECK(sweep.axes[0] == "equilibrium.p0");  // sorted by key
    CHECK(sweep.axes[1] == "mode.v1_0");
    REQUIRE(sweep.rows.size() == 6);
    // Last axis fastest.
    CHECK(sweep.rows[0].axis_values == std::vector<double>{1.0, -1.0});
    CHECK(sweep.rows[1].axis_values == std::vector<double>{1.0, 1.0});
    CHECK(sweep.rows[2].axis_values == std::vector<double>{2.0, -1.0});
    CHECK(sweep.rows[5].axis_values == std::vector<double>{3.0, 1.0});
}

TEST_CASE("sweeps above the cap are rejected") {
    AnalysisConfig config = parse_config_text(std::string(kBaseConfig) +
                                              "numerics.sweep_cap = 4\n"
                                              "sweep.mode.v1_0 = 1, 2, 3\n"
                                              "sweep.equilibrium.p0 = 1, 2\n");
    bool threw = false;
    try {
        run_sweep(config);
    } catch (const Error& e) {
        threw = true;
        CHECK(e.code() == ErrorCode::SweepTooLarge);
    }
    CHECK(threw);
}

TEST_CASE("verify passes on the base config and lists every check") {
    const VerifyOutcome outcome = run_verify(base_config());
    CHECK(outcome.ok());
    const std::vector<std::string> expected = {
        "curvature_matches_analytic", "torsion_matches_analytic",
        "arc_length_matches_analytic", "frame_orthonormal",
        "frame_chirality", "frenet_residual",
        "b0_log_derivative", "k_perp_squared_root",
        "k_par_squared_root", "mass_squared_root",
        "growth_scan_matches_root", "alfven_identity",
        "pressure_identity"};
    REQUIRE(outcome.checks.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(outcome.checks[i].name == expected[i]);
        CHECK(outcome.checks[i].ok);
    }

    const nlohmann::ordered_json json = report_json(outcome);
    CHECK(json["verb"] == "verify");
    CHECK(json["ok"] == true);
    CHECK(json["checks"].size() == expected.size());
    CHECK(json["verification"].contains("b0_form_gap"));
}

TEST_CASE("csv emitters produce one row per record") {
    const AnalysisResult result = run_analysis(base_config());
    const std::string summary = summary_csv(result);
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 2);  // header + one row

    const std::string curve = curve_csv(result);
    CHECK(std::count(curve.begin(), curve.end(), '\n') ==
          static_cast<long>(result.curve.size()) + 1);

    const std::string profile = b0_profile_csv(result);
    const std::string header = profile.substr(0, profile.find('\n'));
    CHECK(std::count(header.begin(), header.end(), ',') == 11);  // 12 columns

    AnalysisConfig config =
        parse_config_text(std::string(kBaseConfig) + "sweep.mode.v1_0 = -1, 0, 1\n");
    const SweepResult sweep = run_sweep(config);
    const std::string sweep_summary = summary_csv(sweep);
    CHECK(std::count(sweep_summary.begin(), sweep_summary.end(), '\n') == 4);
    CHECK(sweep_summary.rfind("mode.v1_0,", 0) == 0);  // axis column first
}
