#include "filament/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "filament/grid.hpp"

namespace filament {

namespace {

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* ok_str(bool ok) { return ok ? "ok" : "FAIL"; }

std::string reading_name(FrameDerivativeReading reading) {
    return reading == FrameDerivativeReading::Antisymmetric ? "antisymmetric" : "literal";
}

std::string b0_form_name(B0Form form) {
    return form == B0Form::RateSum ? "rate_sum" : "divergence_balance";
}

std::string convention_name(LengthConvention convention) {
    return convention == LengthConvention::Full ? "full" : "solar_half_loop";
}

nlohmann::ordered_json vec3_json(const Vec3& v) {
    return nlohmann::ordered_json::array({v.x, v.y, v.z});
}

nlohmann::ordered_json profile_json(const ProfileSpec& spec) {
    if (!spec.is_table()) return spec.constant;
    nlohmann::ordered_json knots = nlohmann::ordered_json::array();
    for (const auto& [s, v] : spec.table) {
        knots.push_back(nlohmann::ordered_json::array({s, v}));
    }
    return nlohmann::ordered_json{{"table", std::move(knots)}};
}

nlohmann::ordered_json config_json(const AnalysisConfig& config) {
    nlohmann::ordered_json curve;
    curve["family"] = to_string(config.curve.family);
    curve["resolution"] = config.curve.resolution;
    switch (config.curve.family) {
        case CurveFamily::Line:
            curve["from"] = vec3_json(config.curve.line.from);
            curve["to"] = vec3_json(config.curve.line.to);
            break;
        case CurveFamily::Circle:
            curve["radius"] = config.curve.circle.radius;
            curve["turns"] = config.curve.circle.turns;
            break;
        case CurveFamily::Helix:
            curve["a"] = config.curve.helix.a;
            curve["b"] = config.curve.helix.b;
            curve["turns"] = config.curve.helix.turns;
            break;
        case CurveFamily::Points: {
            nlohmann::ordered_json pts = nlohmann::ordered_json::array();
            for (const Vec3& p : config.curve.points) pts.push_back(vec3_json(p));
            curve["points"] = std::move(pts);
            curve["closed"] = config.curve.points_closed;
            break;
        }
    }
    if (config.curve.fallback_normal) {
        curve["fallback_normal"] = vec3_json(*config.curve.fallback_normal);
    }

    nlohmann::ordered_json congruence;
    congruence["theta_ns"] = profile_json(config.theta_ns);
    congruence["theta_bs"] = profile_json(config.theta_bs);
    congruence["omega_s"] = profile_json(config.omega_s);
    congruence["omega_n"] = profile_json(config.omega_n);
    congruence["omega_b"] = profile_json(config.omega_b);
    congruence["div_n"] = profile_json(config.div_n);
    congruence["div_b"] = profile_json(config.div_b);
    congruence["frame_reading"] = reading_name(config.frame_reading);

    nlohmann::ordered_json equilibrium;
    equilibrium["c0"] = config.c0;
    equilibrium["rho0"] = config.rho0;
    equilibrium["p0"] = config.p0;
    equilibrium["gamma"] = config.gamma;
    equilibrium["mu0"] = config.mu0;
    equilibrium["b0_form"] = b0_form_name(config.b0_form);

    nlohmann::ordered_json mode;
    mode["B1_0"] = config.B1_0;
    mode["J1_0"] = config.J1_0;
    mode["v1_0"] = config.v1_0;
    mode["rho1_0"] = config.rho1_0;
    mode["branch"] = to_string(config.branch);
    mode["mass_interpretation"] = to_string(config.mass_interpretation);

    nlohmann::ordered_json numerics;
    numerics["tol"] = config.numerics.tol;
    numerics["seed"] = config.numerics.seed;
    numerics["scan"] = {{"min", config.numerics.scan.im_min},
                        {"max", config.numerics.scan.im_max},
                        {"steps", config.numerics.scan.steps}};
    numerics["sweep_cap"] = config.numerics.sweep_cap;

    nlohmann::ordered_json sweep = nlohmann::ordered_json::array();
    for (const auto& [key, values] : config.sweep) {
        sweep.push_back({{"key", key}, {"values", values}});
    }

    return nlohmann::ordered_json{{"curve", std::move(curve)},
                                  {"congruence", std::move(congruence)},
                                  {"equilibrium", std::move(equilibrium)},
                                  {"mode", std::move(mode)},
                                  {"length", {{"convention", convention_name(config.length_convention)}}},
                                  {"numerics", std::move(numerics)},
                                  {"sweep", std::move(sweep)}};
}

nlohmann::ordered_json backsub_json(const BacksubReport& report) {
    const auto side = [](const BranchResidual& r) {
        return nlohmann::ordered_json{
            {"max_abs", r.max_abs}, {"max_sq", r.max_sq}, {"spread_sq", r.spread_sq}};
    };
    return nlohmann::ordered_json{{"plus", side(report.plus)},
                                  {"minus", side(report.minus)},
                                  {"satisfied_branch", report.satisfied_branch}};
}

nlohmann::ordered_json header_json(const char* verb) {
    return nlohmann::ordered_json{
        {"schema_version", kSchemaVersion},
        {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
        {"verb", verb}};
}

nlohmann::ordered_json body_json(const AnalysisResult& r) {
    nlohmann::ordered_json out;
    out["config"] = config_json(r.config);

    double kappa_min = r.frame.kappa[0];
    double kappa_max = r.frame.kappa[0];
    double max_abs_tau = 0.0;
    for (std::size_t i = 0; i < r.frame.unique_samples(); ++i) {
        kappa_min = std::min(kappa_min, r.frame.kappa[i]);
        kappa_max = std::max(kappa_max, r.frame.kappa[i]);
        max_abs_tau = std::max(max_abs_tau, std::abs(r.frame.tau[i]));
    }
    double b0_min = r.equilibrium.B0[0];
    double b0_max = r.equilibrium.B0[0];
    for (double b : r.equilibrium.B0) {
        b0_min = std::min(b0_min, b);
        b0_max = std::max(b0_max, b);
    }

    out["curve"] = {{"family", to_string(r.config.curve.family)},
                    {"closed", r.curve.closed},
                    {"samples", r.curve.size()},
                    {"arc_length", r.curve.length()},
                    {"spacing", r.curve.spacing()},
                    {"planar", r.planar}};

    out["frame"] = {{"kappa0", r.reductions.kappa0},
                    {"kappa_min", kappa_min},
                    {"kappa_max", kappa_max},
                    {"max_abs_tau", max_abs_tau},
                    {"frenet_residual",
                     {{"tangent", r.frenet.tangent},
                      {"normal", r.frenet.normal},
                      {"binormal", r.frenet.binormal},
                      {"max", r.frenet.max()}}}};

    out["congruence"] = {{"means",
                          {{"theta_ns", r.reductions.theta_ns_mean},
                           {"theta_bs", r.reductions.theta_bs_mean},
                           {"omega_s", r.reductions.omega_s_mean},
                           {"omega_n", r.reductions.omega_n_mean},
                           {"omega_b", r.reductions.omega_b_mean},
                           {"div_n", r.reductions.div_n_mean},
                           {"div_b", r.reductions.div_b_mean}}},
                         {"geodesic", r.validation.constraints.geodesic}};

    const ConstraintReport& c = r.validation.constraints;
    out["equilibrium"] = {
        {"b0_form", b0_form_name(r.config.b0_form)},
        {"B0_ref", r.reductions.B0_ref},
        {"B0_min", b0_min},
        {"B0_max", b0_max},
        {"b0_form_gap", r.verification.b0_form_gap},
        {"constraints",
         {{"planar_ok", c.planar_ok},
          {"omega_n_ok", c.omega_n_ok},
          {"kappa_eq_omega_b_ok", c.kappa_eq_omega_b_ok},
          {"geodesic", c.geodesic},
          {"max_abs_tau", c.max_abs_tau},
          {"max_abs_omega_n", c.max_abs_omega_n},
          {"max_abs_kappa_minus_omega_b", c.max_abs_kappa_minus_omega_b},
          {"max_abs_omega_s", c.max_abs_omega_s},
          {"tol", c.tol}}},
        {"current_residual_max", r.validation.max_current_residual},
        {"current_ok", r.validation.current_ok},
        {"b0_nonvanishing_ok", r.validation.b0_nonvanishing_ok},
        {"rho0_positive", r.validation.rho0_positive},
        {"p0_nonnegative", r.validation.p0_nonnegative},
        {"all_ok", r.validation.all_ok()}};

    out["length"] = {{"convention", convention_name(r.config.length_convention)},
                     {"L", r.reductions.L}};

    const double kpar_va = r.mode.k_par * r.va;
    out["mode"] = {
        {"branch", to_string(r.mode.branch)},
        {"k_perp", {{"plus", r.k_perp.plus}, {"minus", r.k_perp.minus}, {"selected", r.mode.k_perp}}},
        {"k_par", {{"plus", r.k_par.plus}, {"minus", r.k_par.minus}, {"selected", r.mode.k_par}}},
        {"growth",
         {{"im_omega", r.growth.im_omega},
          {"im_omega_squared_root", r.growth.im_omega_squared_root},
          {"stability", to_string(r.growth.stability)}}},
        {"alfven",
         {{"omega0", r.omega0},
          {"va", r.va},
          {"omega0_squared", r.omega0 * r.omega0},
          {"kpar_va_squared", kpar_va * kpar_va}}},
        {"p1_0", r.p1_0},
        {"mass_interpretation", to_string(r.config.mass_interpretation)}};

    nlohmann::ordered_json verification;
    verification["current_balance"] = backsub_json(r.verification.current_balance);
    verification["divergence_free"] = backsub_json(r.verification.divergence_free);
    verification["mass_conservation"] = backsub_json(r.verification.mass_conservation);
    if (r.verification.scan) {
        verification["scan"] = {{"im_omega", r.verification.scan->im_omega},
                                {"residual", r.verification.scan->residual},
                                {"cell", r.verification.scan->cell},
                                {"target", r.verification.scan_target},
                                {"matches", r.verification.scan_matches}};
    } else {
        verification["scan"] = {{"note", r.verification.scan_note},
                                {"target", r.verification.scan_target}};
    }
    verification["b0_form_gap"] = r.verification.b0_form_gap;
    out["verification"] = std::move(verification);

    out["stability"] = to_string(r.growth.stability);
    out["notes"] = r.notes;
    return out;
}

void append_analysis_columns(std::ostringstream& os) {
    os << "kappa0,L,B0_ref,k_par_plus,k_par_minus,k_perp_plus,k_perp_minus,"
          "im_omega,im_omega_squared_root,stability,omega0,va,p1_0,"
          "frenet_max,current_residual_max,equilibrium_ok\n";
}

}  // namespace

bool VerifyOutcome::ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.ok; });
}

AnalysisResult run_analysis(const AnalysisConfig& config) {
    AnalysisResult r;
    r.config = config;

    r.curve = config.curve.build();
    FrameOptions frame_options;
    frame_options.fallback_normal = config.curve.fallback_normal;
    r.frame = compute_frame(r.curve, frame_options);
    r.frenet = frenet_residual(r.frame, r.curve);
    r.planar = is_planar(r.frame, config.numerics.tol);

    r.coeffs = materialize_coefficients(config, r.curve);

    r.equilibrium.B0 = solve_B0(r.coeffs, config.c0, config.b0_form);
    r.B0_alt = solve_B0(r.coeffs, config.c0,
                        config.b0_form == B0Form::RateSum ? B0Form::DivergenceBalance
                                                          : B0Form::RateSum);
    r.equilibrium.rho0 = config.rho0;
    r.equilibrium.p0 = config.p0;
    r.equilibrium.gamma = config.gamma;
    r.equilibrium.mu0 = config.mu0;
    r.equilibrium.c0 = config.c0;
    r.equilibrium.validate();

    r.validation = validate_equilibrium(r.equilibrium, r.coeffs, r.frame, config.numerics.tol,
                                        config.frame_reading);

    const bool closed = r.curve.closed;
    r.reductions.kappa0 = r.frame.mean_kappa();
    r.reductions.B0_ref = r.equilibrium.B0.front();
    r.reductions.L = filament_length(r.curve, config.length_convention);
    r.reductions.theta_ns_mean = profile_mean(r.coeffs.theta_ns, closed);
    r.reductions.theta_bs_mean = profile_mean(r.coeffs.theta_bs, closed);
    r.reductions.omega_s_mean = profile_mean(r.coeffs.omega_s, closed);
    r.reductions.omega_n_mean = profile_mean(r.coeffs.omega_n, closed);
    r.reductions.omega_b_mean = profile_mean(r.coeffs.omega_b, closed);
    r.reductions.div_n_mean = profile_mean(r.coeffs.div_n, closed);
    r.reductions.div_b_mean = profile_mean(r.coeffs.div_b, closed);

    r.k_perp = solve_kperp(r.reductions.kappa0, config.B1_0, config.J1_0, config.mu0);
    r.k_par = solve_kparallel(r.reductions.theta_ns_mean, r.reductions.theta_bs_mean);
    r.growth = growth_rate(config.v1_0, config.rho0, config.rho1_0);
    r.p1_0 = adiabatic_relation(config.rho1_0, config.rho0, config.p0);

    const bool plus = config.branch == Branch::Plus;
    r.mode.B1_0 = config.B1_0;
    r.mode.J1_0 = config.J1_0;
    r.mode.v1_0 = config.v1_0;
    r.mode.rho1_0 = config.rho1_0;
    r.mode.p1_0 = r.p1_0;
    r.mode.k_par = plus ? r.k_par.plus : r.k_par.minus;
    r.mode.k_perp = plus ? r.k_perp.plus : r.k_perp.minus;
    r.mode.omega = r.growth.omega();
    r.mode.branch = config.branch;
    r.mode.validate();

    r.omega0 = alfven_frequency(r.mode.k_par, r.reductions.L, r.reductions.B0_ref,
                                r.reductions.kappa0, r.reductions.div_n_mean, config.B1_0,
                                config.branch);
    r.va = alfven_velocity(r.reductions.L, r.reductions.B0_ref, r.reductions.kappa0,
                           r.reductions.div_n_mean, config.B1_0, config.branch);

    ModeContext context;
    context.kappa0 = r.reductions.kappa0;
    context.mu0 = config.mu0;
    context.theta_ns = r.reductions.theta_ns_mean;
    context.theta_bs = r.reductions.theta_bs_mean;
    context.rho0 = config.rho0;
    context.div_b = r.reductions.div_b_mean;

    r.verification.current_balance =
        complex_backsubstitution(r.mode, context, ModeEquation::CurrentBalance);
    r.verification.divergence_free =
        complex_backsubstitution(r.mode, context, ModeEquation::DivergenceFree);
    r.verification.mass_conservation =
        complex_backsubstitution(r.mode, context, ModeEquation::MassConservation);

    const double mass_factor =
        config.mass_interpretation == MassInterpretation::DropDivB ? 1.0
                                                                   : r.reductions.div_b_mean;
    r.verification.scan_target = -config.v1_0 * config.rho0 * mass_factor / config.rho1_0;
    try {
        r.verification.scan = omega_residual_scan(config.rho1_0, config.v1_0, config.rho0,
                                                  r.reductions.div_b_mean,
                                                  config.mass_interpretation,
                                                  config.numerics.scan);
        r.verification.scan_matches =
            std::abs(r.verification.scan->im_omega - r.verification.scan_target) <=
            r.verification.scan->cell + 1e-12;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoRootInBracket) throw;
        r.verification.scan_note = e.what();
    }

    for (std::size_t i = 0; i < r.equilibrium.B0.size(); ++i) {
        r.verification.b0_form_gap = std::max(
            r.verification.b0_form_gap, std::abs(r.equilibrium.B0[i] - r.B0_alt[i]));
    }

    r.notes.push_back("transverse frame derivatives use the " +
                      reading_name(config.frame_reading) + " sign convention");
    r.notes.push_back("background field uses the " + b0_form_name(config.b0_form) +
                      " form; the alternative form differs by the reported b0_form_gap");
    r.notes.push_back(
        "growth-rate closed form (+v1_0 rho0 / rho1_0) and the root of the squared mass "
        "relation (-v1_0 rho0 / rho1_0) differ in sign; both are reported and the closed "
        "form drives the classification");
    r.notes.push_back("squared mass relation " +
                      std::string(config.mass_interpretation == MassInterpretation::DropDivB
                                      ? "drops"
                                      : "keeps") +
                      " the div b factor");
    r.notes.push_back(
        "wavenumber and frequency relations fix magnitudes only; signs are reported as "
        "+/- root pairs and the configured branch selects one");
    if (!r.validation.current_ok) {
        r.notes.push_back("equilibrium current residual exceeds tol: the transverse "
                          "derivative terms leave a curvature-sized remainder for this "
                          "configuration");
    }
    switch (r.growth.stability) {
        case Stability::Stable:
            r.notes.push_back("stable: Im omega < 0, the magnetic field is damped");
            break;
        case Stability::Unstable:
            r.notes.push_back("unstable: Im omega > 0, the perturbation grows exponentially");
            break;
        case Stability::Marginal:
            r.notes.push_back("marginal: Im omega = 0, the perturbation neither grows nor decays");
            break;
    }
    return r;
}

VerifyOutcome run_verify(const AnalysisConfig& config) {
    VerifyOutcome outcome;
    outcome.result = run_analysis(config);
    const AnalysisResult& r = outcome.result;
    auto& checks = outcome.checks;

    const auto add = [&checks](const std::string& name, double value, double bound) {
        checks.push_back({name, value <= bound, value, bound});
    };

    if (config.curve.family != CurveFamily::Points) {
        AnalyticFrame analytic;
        switch (config.curve.family) {
            case CurveFamily::Line: analytic = analytic_frame_oracle(config.curve.line); break;
            case CurveFamily::Circle:
                analytic = analytic_frame_oracle(config.curve.circle);
                break;
            default: analytic = analytic_frame_oracle(config.curve.helix); break;
        }
        // Centered stencils on an exactly sampled circle/helix leave a
        // sinc-factor error of about q (h w)^2 / 6 in kappa and tau, where
        // w is the turning rate of the frame; bound with a 6x margin.
        const double w = std::hypot(analytic.kappa, analytic.tau);
        const double stencil = r.frame.h * w * r.frame.h * w;
        add("curvature_matches_analytic", std::abs(r.reductions.kappa0 - analytic.kappa),
            std::max(1e-8, analytic.kappa * stencil));
        double mean_tau = 0.0;
        for (std::size_t i = 0; i < r.frame.unique_samples(); ++i) mean_tau += r.frame.tau[i];
        mean_tau /= static_cast<double>(r.frame.unique_samples());
        add("torsion_matches_analytic", std::abs(mean_tau - analytic.tau),
            std::max(1e-8, std::max(std::abs(analytic.tau), analytic.kappa) * stencil));
        add("arc_length_matches_analytic", std::abs(r.curve.length() - analytic.length),
            1e-9 * analytic.length);
    }

    double ortho = 0.0;
    double chirality = 0.0;
    for (std::size_t i = 0; i < r.frame.size(); ++i) {
        const Vec3& t = r.frame.t[i];
        const Vec3& n = r.frame.n[i];
        const Vec3& b = r.frame.b[i];
        ortho = std::max({ortho, std::abs(t.dot(n)), std::abs(t.dot(b)), std::abs(n.dot(b)),
                          std::abs(t.norm() - 1.0), std::abs(n.norm() - 1.0),
                          std::abs(b.norm() - 1.0)});
        chirality = std::max(chirality, (b - t.cross(n)).norm());
    }
    add("frame_orthonormal", ortho, 1e-10);
    add("frame_chirality", chirality, 1e-12);

    double kappa_max = 0.0;
    for (std::size_t i = 0; i < r.frame.unique_samples(); ++i) {
        kappa_max = std::max(kappa_max, r.frame.kappa[i]);
    }
    const double kmax1 = std::max(1.0, kappa_max);
    add("frenet_residual", r.frenet.max(),
        std::max(1e-8, 200.0 * kmax1 * kmax1 * kmax1 * r.frame.h * r.frame.h));

    {
        // d(ln B0)/ds must reproduce the field-relation integrand. The
        // centered-difference error is exactly a quarter of the integrand's
        // second difference, so half of that second difference is a valid
        // a-priori bound; rounding floor added for flat profiles.
        const std::size_t n = r.equilibrium.B0.size();
        Profile log_b0(n);
        Profile integrand(n);
        for (std::size_t i = 0; i < n; ++i) {
            log_b0[i] = std::log(std::abs(r.equilibrium.B0[i]));
            integrand[i] = config.b0_form == B0Form::RateSum
                               ? r.coeffs.theta_bs[i] + r.coeffs.theta_ns[i]
                               : -(r.coeffs.theta_bs[i] + r.coeffs.div_b[i]);
        }
        // ln B0 is not periodic when the loop integral of the integrand is
        // nonzero, so the derivative is taken with open-end stencils and the
        // comparison sticks to interior samples.
        const std::vector<double> dlog =
            derivative(std::span<const double>(log_b0), r.frame.h, false);
        double value = 0.0;
        double curvature_bound = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            value = std::max(value, std::abs(dlog[i] - integrand[i]));
            curvature_bound = std::max(curvature_bound,
                                       std::abs(integrand[i - 1] - 2.0 * integrand[i] +
                                                integrand[i + 1]));
        }
        add("b0_log_derivative", value, 0.5 * curvature_bound + 1e-8);
    }

    const double kperp_scale =
        std::abs(r.reductions.kappa0 * config.B1_0) + std::abs(config.mu0 * config.J1_0);
    add("k_perp_squared_root",
        std::min(r.verification.current_balance.plus.max_sq,
                 r.verification.current_balance.minus.max_sq),
        1e-12 * std::max(1.0, kperp_scale * kperp_scale));
    const double kpar_scale = std::abs(r.mode.k_par * config.B1_0);
    add("k_par_squared_root",
        std::min(r.verification.divergence_free.plus.max_sq,
                 r.verification.divergence_free.minus.max_sq),
        1e-12 * std::max(1.0, kpar_scale * kpar_scale));
    // The squared mass relation, evaluated under the configured
    // interpretation; one of the two sign roots must zero it.
    const double mass_scale = std::abs(config.v1_0 * config.rho0) +
                              std::abs(r.growth.im_omega * config.rho1_0);
    const double mass_plus = mass_conservation_residual(
        {0.0, r.growth.im_omega}, config.rho1_0, config.v1_0, config.rho0,
        r.reductions.div_b_mean, config.mass_interpretation);
    const double mass_minus = mass_conservation_residual(
        {0.0, r.growth.im_omega_squared_root}, config.rho1_0, config.v1_0, config.rho0,
        r.reductions.div_b_mean, config.mass_interpretation);
    add("mass_squared_root", std::min(mass_plus, mass_minus),
        1e-12 * std::max(1.0, mass_scale * mass_scale));

    {
        VerifyCheck scan_check;
        scan_check.name = "growth_scan_matches_root";
        if (r.verification.scan) {
            scan_check.value = std::abs(r.verification.scan->im_omega -
                                        r.verification.scan_target);
            scan_check.bound = r.verification.scan->cell + 1e-12;
            scan_check.ok = r.verification.scan_matches;
        } else {
            scan_check.value = -1.0;
            scan_check.bound = 0.0;
            scan_check.ok = false;
        }
        checks.push_back(scan_check);
    }

    add("alfven_identity", std::abs(r.omega0 - r.mode.k_par * r.va),
        1e-12 * std::max(1.0, std::abs(r.omega0)));
    add("pressure_identity", std::abs(r.p1_0 - config.rho1_0 / config.rho0 * config.p0),
        1e-12 * std::max(1.0, std::abs(r.p1_0)));

    return outcome;
}

SweepResult run_sweep(const AnalysisConfig& config) {
    SweepResult sweep;

    std::vector<std::pair<std::string, std::vector<double>>> axes = config.sweep;
    std::sort(axes.begin(), axes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::size_t total = 1;
    for (const auto& [key, values] : axes) {
        if (values.empty()) {
            fail(ErrorCode::InvalidInput, "sweep axis '" + key + "' has no values");
        }
        if (total > config.numerics.sweep_cap / values.size()) {
            fail(ErrorCode::SweepTooLarge,
                 "sweep size exceeds the cap of " + std::to_string(config.numerics.sweep_cap) +
                     " combinations");
        }
        total *= values.size();
        sweep.axes.push_back(key);
        sweep.axis_values.push_back(values);
    }

    sweep.rows.reserve(total);
    for (std::size_t index = 0; index < total; ++index) {
        AnalysisConfig combo = config;
        combo.sweep.clear();
        std::vector<double> axis_values(axes.size());
        std::size_t rest = index;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const std::vector<double>& values = axes[a].second;
            axis_values[a] = values[rest % values.size()];
            rest /= values.size();
        }
        for (std::size_t a = 0; a < axes.size(); ++a) {
            set_scalar(combo, axes[a].first, axis_values[a]);
        }

        const AnalysisResult r = run_analysis(combo);
        SweepRow row;
        row.axis_values = std::move(axis_values);
        row.kappa0 = r.reductions.kappa0;
        row.L = r.reductions.L;
        row.B0_ref = r.reductions.B0_ref;
        row.k_par_plus = r.k_par.plus;
        row.k_perp_plus = r.k_perp.plus;
        row.im_omega = r.growth.im_omega;
        row.im_omega_squared_root = r.growth.im_omega_squared_root;
        row.stability = r.growth.stability;
        row.omega0 = r.omega0;
        row.va = r.va;
        row.p1_0 = r.p1_0;
        row.frenet_max = r.frenet.max();
        row.current_residual_max = r.validation.max_current_residual;
        row.equilibrium_ok = r.validation.all_ok();
        sweep.rows.push_back(std::move(row));
    }
    return sweep;
}

nlohmann::ordered_json report_json(const AnalysisResult& result) {
    nlohmann::ordered_json out = header_json("analyze");
    out.update(body_json(result), true);
    return out;
}

nlohmann::ordered_json report_json(const VerifyOutcome& outcome) {
    nlohmann::ordered_json out = header_json("verify");
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const VerifyCheck& c : outcome.checks) {
        checks.push_back(
            {{"name", c.name}, {"ok", c.ok}, {"value", c.value}, {"bound", c.bound}});
    }
    out["ok"] = outcome.ok();
    out["checks"] = std::move(checks);
    out.update(body_json(outcome.result), true);
    return out;
}

nlohmann::ordered_json report_json(const SweepResult& sweep, const AnalysisConfig& config) {
    nlohmann::ordered_json out = header_json("sweep");
    out["config"] = config_json(config);
    out["axes"] = sweep.axes;
    out["axis_values"] = sweep.axis_values;
    out["rows"] = sweep.rows.size();
    out["columns"] = "see summary.csv";
    return out;
}

std::string human_summary(const AnalysisResult& r) {
    std::ostringstream os;
    os << kToolName << " " << kToolVersion << "\n";
    os << "curve        : " << to_string(r.config.curve.family)
       << (r.curve.closed ? ", closed, " : ", open, ") << r.curve.size() << " samples, length "
       << num6(r.curve.length()) << "\n";
    os << "frame        : kappa0 " << num6(r.reductions.kappa0) << ", frenet residual "
       << num6(r.frenet.max()) << (r.planar ? ", planar" : ", non-planar") << "\n";
    os << "length       : L = " << num6(r.reductions.L) << " ("
       << convention_name(r.config.length_convention) << ")\n";
    os << "equilibrium  : B0(0) = " << num6(r.reductions.B0_ref) << ", constraints "
       << ok_str(r.validation.constraints.all_ok()) << ", current residual "
       << num6(r.validation.max_current_residual) << " (" << ok_str(r.validation.current_ok)
       << ")\n";
    os << "mode         : branch " << to_string(r.mode.branch) << ", k_par +-"
       << num6(r.k_par.plus) << ", k_perp +-" << num6(r.k_perp.plus) << "\n";
    os << "growth       : Im omega = " << num6(r.growth.im_omega) << " (squared-relation root "
       << num6(r.growth.im_omega_squared_root) << ") -> " << to_string(r.growth.stability)
       << "\n";
    os << "alfven       : omega0 = " << num6(r.omega0) << ", Va = " << num6(r.va) << "\n";
    os << "pressure     : p1_0 = " << num6(r.p1_0) << "\n";
    if (r.verification.scan) {
        os << "verification : scan root " << num6(r.verification.scan->im_omega) << " (cell "
           << num6(r.verification.scan->cell) << ") "
           << (r.verification.scan_matches ? "matches" : "DOES NOT MATCH")
           << " the closed-form root\n";
    } else {
        os << "verification : scan skipped (" << r.verification.scan_note << ")\n";
    }
    os << "notes:\n";
    for (const std::string& note : r.notes) os << "  - " << note << "\n";
    return os.str();
}

std::string human_summary(const VerifyOutcome& outcome) {
    std::ostringstream os;
    os << human_summary(outcome.result);
    os << "checks:\n";
    for (const VerifyCheck& c : outcome.checks) {
        os << "  " << (c.ok ? "ok   " : "FAIL ") << c.name << " (value " << num6(c.value)
           << ", bound " << num6(c.bound) << ")\n";
    }
    os << "verify: " << (outcome.ok() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string human_summary(const SweepResult& sweep) {
    std::ostringstream os;
    os << kToolName << " " << kToolVersion << " sweep\n";
    os << "axes         : ";
    if (sweep.axes.empty()) {
        os << "(none)";
    } else {
        for (std::size_t a = 0; a < sweep.axes.size(); ++a) {
            if (a) os << " x ";
            os << sweep.axes[a] << "[" << sweep.axis_values[a].size() << "]";
        }
    }
    os << "\nrows         : " << sweep.rows.size() << "\n";
    std::size_t unstable = 0;
    for (const SweepRow& row : sweep.rows) {
        if (row.stability == Stability::Unstable) ++unstable;
    }
    os << "unstable     : " << unstable << " of " << sweep.rows.size() << "\n";
    return os.str();
}

namespace {

void append_row(std::ostringstream& os, const SweepRow& row) {
    for (double v : row.axis_values) os << num17(v) << ",";
    os << num17(row.kappa0) << "," << num17(row.L) << "," << num17(row.B0_ref) << ","
       << num17(row.k_par_plus) << "," << num17(-row.k_par_plus) << ","
       << num17(row.k_perp_plus) << "," << num17(-row.k_perp_plus) << ","
       << num17(row.im_omega) << "," << num17(row.im_omega_squared_root) << ","
       << to_string(row.stability) << "," << num17(row.omega0) << "," << num17(row.va) << ","
       << num17(row.p1_0) << "," << num17(row.frenet_max) << ","
       << num17(row.current_residual_max) << "," << (row.equilibrium_ok ? "true" : "false")
       << "\n";
}

SweepRow row_from_result(const AnalysisResult& r) {
    SweepRow row;
    row.kappa0 = r.reductions.kappa0;
    row.L = r.reductions.L;
    row.B0_ref = r.reductions.B0_ref;
    row.k_par_plus = r.k_par.plus;
    row.k_perp_plus = r.k_perp.plus;
    row.im_omega = r.growth.im_omega;
    row.im_omega_squared_root = r.growth.im_omega_squared_root;
    row.stability = r.growth.stability;
    row.omega0 = r.omega0;
    row.va = r.va;
    row.p1_0 = r.p1_0;
    row.frenet_max = r.frenet.max();
    row.current_residual_max = r.validation.max_current_residual;
    row.equilibrium_ok = r.validation.all_ok();
    return row;
}

}  // namespace

std::string summary_csv(const AnalysisResult& result) {
    std::ostringstream os;
    append_analysis_columns(os);
    append_row(os, row_from_result(result));
    return os.str();
}

std::string summary_csv(const SweepResult& sweep) {
    std::ostringstream os;
    for (const std::string& axis : sweep.axes) os << axis << ",";
    append_analysis_columns(os);
    for (const SweepRow& row : sweep.rows) append_row(os, row);
    return os.str();
}

std::string curve_csv(const AnalysisResult& r) {
    std::ostringstream os;
    os << "index,s,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau\n";
    for (std::size_t i = 0; i < r.curve.size(); ++i) {
        const Vec3& p = r.curve.samples[i];
        const Vec3& t = r.frame.t[i];
        const Vec3& n = r.frame.n[i];
        const Vec3& b = r.frame.b[i];
        os << i << "," << num17(r.curve.arc_length[i]) << "," << num17(p.x) << ","
           << num17(p.y) << "," << num17(p.z) << "," << num17(t.x) << "," << num17(t.y) << ","
           << num17(t.z) << "," << num17(n.x) << "," << num17(n.y) << "," << num17(n.z) << ","
           << num17(b.x) << "," << num17(b.y) << "," << num17(b.z) << ","
           << num17(r.frame.kappa[i]) << "," << num17(r.frame.tau[i]) << "\n";
    }
    return os.str();
}

std::string b0_profile_csv(const AnalysisResult& r) {
    std::ostringstream os;
    const bool rate_sum = r.config.b0_form == B0Form::RateSum;
    os << "index,s,B0,B0_rate_sum,B0_divergence_balance,theta_ns,theta_bs,omega_s,omega_n,"
          "omega_b,div_n,div_b\n";
    for (std::size_t i = 0; i < r.equilibrium.B0.size(); ++i) {
        const double selected = r.equilibrium.B0[i];
        const double alt = r.B0_alt[i];
        os << i << "," << num17(r.coeffs.s[i]) << "," << num17(selected) << ","
           << num17(rate_sum ? selected : alt) << "," << num17(rate_sum ? alt : selected) << ","
           << num17(r.coeffs.theta_ns[i]) << "," << num17(r.coeffs.theta_bs[i]) << ","
           << num17(r.coeffs.omega_s[i]) << "," << num17(r.coeffs.omega_n[i]) << ","
           << num17(r.coeffs.omega_b[i]) << "," << num17(r.coeffs.div_n[i]) << ","
           << num17(r.coeffs.div_b[i]) << "\n";
    }
    return os.str();
}

void write_text_file(const std::string& out_dir, const std::string& name,
                     const std::string& content) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        fail(ErrorCode::InvalidInput, "cannot create output directory '" + out_dir + "'");
    }
    const std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        fail(ErrorCode::InvalidInput, "cannot write '" + path.string() + "'");
    }
}

}  // namespace filament
