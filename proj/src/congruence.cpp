#include "filament/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace filament {

namespace {

void require_profile(const Profile& p, std::size_t n, const char* name) {
    if (p.size() != n) {
        fail(ErrorCode::InvalidInput,
             std::string(name) + " profile has " + std::to_string(p.size()) +
                 " entries, expected " + std::to_string(n));
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!std::isfinite(p[i])) {
            fail(ErrorCode::InvalidInput,
                 std::string(name) + " profile is not finite at sample " + std::to_string(i), i);
        }
    }
}

}  // namespace

void CongruenceCoefficients::validate() const {
    if (s.size() < 4) {
        fail(ErrorCode::InvalidInput, "congruence grid needs at least 4 samples");
    }
    if (s.front() != 0.0) {
        fail(ErrorCode::InvalidInput, "congruence grid must start at 0");
    }
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!(s[i] > s[i - 1])) {
            fail(ErrorCode::InvalidInput, "congruence grid must be strictly increasing");
        }
    }
    require_profile(theta_ns, s.size(), "theta_ns");
    require_profile(theta_bs, s.size(), "theta_bs");
    require_profile(omega_s, s.size(), "omega_s");
    require_profile(omega_n, s.size(), "omega_n");
    require_profile(omega_b, s.size(), "omega_b");
    require_profile(div_n, s.size(), "div_n");
    require_profile(div_b, s.size(), "div_b");
}

CongruenceCoefficients CongruenceCoefficients::constants(const DiscreteCurve& curve,
                                                          double theta_ns, double theta_bs,
                                                          double omega_s, double omega_n,
                                                          double omega_b, double div_n,
                                                          double div_b) {
    curve.validate();
    const std::size_t n = curve.size();
    CongruenceCoefficients c;
    c.s = curve.arc_length;
    c.theta_ns.assign(n, theta_ns);
    c.theta_bs.assign(n, theta_bs);
    c.omega_s.assign(n, omega_s);
    c.omega_n.assign(n, omega_n);
    c.omega_b.assign(n, omega_b);
    c.div_n.assign(n, div_n);
    c.div_b.assign(n, div_b);
    c.validate();
    return c;
}

double profile_mean(std::span<const double> profile, bool closed) {
    if (profile.empty() || (closed && profile.size() < 2)) {
        fail(ErrorCode::InvalidInput, "cannot average an empty profile");
    }
    const std::size_t m = closed ? profile.size() - 1 : profile.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += profile[i];
    return sum / static_cast<double>(m);
}

FrameGradient frame_gradient(double d_s, double d_n, double d_b) {
    FrameGradient g;
    g.d_s = d_s;
    g.d_n = d_n;
    g.d_b = d_b;
    return g;
}

TransverseDerivatives transverse_frame_derivatives(const CongruenceCoefficients& coeffs,
                                                   const FrameField& frame, std::size_t sample,
                                                   FrameDerivativeReading reading) {
    coeffs.validate();
    if (coeffs.size() != frame.size()) {
        fail(ErrorCode::InvalidInput, "congruence grid does not match the frame");
    }
    if (sample >= frame.size()) {
        fail(ErrorCode::InvalidInput, "sample index out of range", sample);
    }

    const Vec3& t = frame.t[sample];
    const Vec3& n = frame.n[sample];
    const Vec3& b = frame.b[sample];
    const double tau = frame.tau[sample];
    const double kappa = frame.kappa[sample];
    const double tns = coeffs.theta_ns[sample];
    const double tbs = coeffs.theta_bs[sample];
    const double on = coeffs.omega_n[sample];
    const double ob = coeffs.omega_b[sample];
    const double dn = coeffs.div_n[sample];
    const double db = coeffs.div_b[sample];

    const bool literal = reading == FrameDerivativeReading::Literal;

    TransverseDerivatives d;
    d.dn_t = n * tns + b * (ob + tau);
    d.dn_n = t * -tns + b * (literal ? -db : db);
    d.dn_b = t * -(ob + tau) + n * -db;
    d.db_t = n * -(on + tau) + b * tbs;
    d.db_n = t * (on + tau) + b * (literal ? (-kappa + dn) : -(kappa + dn));
    d.db_b = t * -tbs + n * (literal ? -(kappa + dn) : (kappa + dn));
    return d;
}

std::vector<Vec3> equilibrium_current_residual(const CongruenceCoefficients& coeffs,
                                               const FrameField& frame, const Profile& B0,
                                               FrameDerivativeReading reading) {
    coeffs.validate();
    if (coeffs.size() != frame.size() || B0.size() != frame.size()) {
        fail(ErrorCode::InvalidInput, "congruence grid, frame and B0 profile must align");
    }
    std::vector<Vec3> residual(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        const TransverseDerivatives d = transverse_frame_derivatives(coeffs, frame, i, reading);
        residual[i] = (frame.n[i].cross(d.dn_t) + frame.b[i].cross(d.db_t)) * B0[i];
    }
    return residual;
}

ConstraintReport check_equilibrium_constraints(const CongruenceCoefficients& coeffs,
                                               const FrameField& frame, double tol) {
    coeffs.validate();
    if (coeffs.size() != frame.size()) {
        fail(ErrorCode::InvalidInput, "congruence grid does not match the frame");
    }
    if (!(tol > 0.0)) {
        fail(ErrorCode::InvalidInput, "tolerance must be positive");
    }
    ConstraintReport report;
    report.tol = tol;
    for (std::size_t i = 0; i < frame.size(); ++i) {
        report.max_abs_tau = std::max(report.max_abs_tau, std::abs(frame.tau[i]));
        report.max_abs_omega_n = std::max(report.max_abs_omega_n, std::abs(coeffs.omega_n[i]));
        report.max_abs_kappa_minus_omega_b = std::max(
            report.max_abs_kappa_minus_omega_b, std::abs(frame.kappa[i] - coeffs.omega_b[i]));
        report.max_abs_omega_s = std::max(report.max_abs_omega_s, std::abs(coeffs.omega_s[i]));
    }
    report.planar_ok = report.max_abs_tau < tol;
    report.omega_n_ok = report.max_abs_omega_n < tol;
    report.kappa_eq_omega_b_ok = report.max_abs_kappa_minus_omega_b < tol;
    report.geodesic = report.max_abs_omega_s < tol;
    return report;
}

}  // namespace filament
