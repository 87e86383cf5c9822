#include <cmath>
#include <vector>

#include "doctest.h"

#include "filament/congruence.hpp"
#include "helpers.hpp"

using namespace filament;

namespace {

// Coefficients of the six directional derivatives in the (t, n, b) basis:
// two 3x3 matrices, one per transverse direction.
struct CoefficientMatrices {
    double dn[3][3];
    double db[3][3];
};

CoefficientMatrices project(const TransverseDerivatives& d, const FrameField& frame,
                            std::size_t i) {
    const Vec3 axes[3] = {frame.t[i], frame.n[i], frame.b[i]};
    const Vec3 dn_rows[3] = {d.dn_t, d.dn_n, d.dn_b};
    const Vec3 db_rows[3] = {d.db_t, d.db_n, d.db_b};
    CoefficientMatrices m{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            m.dn[r][c] = dn_rows[r].dot(axes[c]);
            m.db[r][c] = db_rows[r].dot(axes[c]);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("frame gradient packs components; squared norm is the dot with itself") {
    const FrameGradient g = frame_gradient(1.0, 2.0, 3.0);
    CHECK(g.d_s == 1.0);
    CHECK(g.d_n == 2.0);
    CHECK(g.d_b == 3.0);
    CHECK(g.squared_norm() == 14.0);

    // Gradient of the perturbation phase -(k_par s + k_perp n): constant
    // coefficients, nothing in the binormal direction.
    const double k_par = 0.7;
    const double k_perp = -1.3;
    const FrameGradient phase = frame_gradient(-k_par, -k_perp, 0.0);
    CHECK(phase.d_s == -k_par);
    CHECK(phase.d_n == -k_perp);
    CHECK(phase.d_b == 0.0);
    CHECK(phase.squared_norm() == doctest::Approx(k_par * k_par + k_perp * k_perp));
}

TEST_CASE("transverse derivatives: zero coefficients and a flat frame give six zero vectors") {
    // kappa and tau feed the relations alongside the supplied coefficients,
    // so the all-zero case needs a straight segment (kappa = tau = 0).
    const DiscreteCurve line = build_line({{0, 0, 0}, {1, 0, 0}}, 100);
    FrameOptions options;
    options.fallback_normal = Vec3{0.0, 1.0, 0.0};
    const FrameField frame = compute_frame(line, options);
    const CongruenceCoefficients coeffs =
        CongruenceCoefficients::constants(line, 0, 0, 0, 0, 0, 0, 0);
    const TransverseDerivatives d = transverse_frame_derivatives(coeffs, frame, 17);
    CHECK(d.dn_t.norm() == 0.0);
    CHECK(d.dn_n.norm() == 0.0);
    CHECK(d.dn_b.norm() == 0.0);
    CHECK(d.db_t.norm() == 0.0);
    CHECK(d.db_n.norm() == 0.0);
    CHECK(d.db_b.norm() == 0.0);

    // On a curved centerline the same zero coefficients leave the curvature
    // terms alive in the d/db relations.
    const DiscreteCurve circle = build_circle({1.0, 1.0}, 400);
    const FrameField circle_frame = compute_frame(circle);
    const CongruenceCoefficients zero =
        CongruenceCoefficients::constants(circle, 0, 0, 0, 0, 0, 0, 0);
    const TransverseDerivatives dc = transverse_frame_derivatives(zero, circle_frame, 17);
    CHECK(dc.db_n.norm() + dc.db_b.norm() > 0.5);
}

TEST_CASE("transverse derivatives: theta_ns alone rotates t into n") {
    const DiscreteCurve circle = build_circle({1.0, 1.0}, 400);
    const FrameField frame = compute_frame(circle);
    const CongruenceCoefficients coeffs =
        CongruenceCoefficients::constants(circle, 1.0, 0, 0, 0, 0, 0, 0);
    const std::size_t i = 42;
    const TransverseDerivatives d = transverse_frame_derivatives(coeffs, frame, i);
    CHECK(std::abs(d.dn_t.dot(frame.n[i]) - 1.0) < 1e-14);
    CHECK(std::abs(d.dn_t.dot(frame.t[i])) < 1e-14);
    CHECK(std::abs(d.dn_n.dot(frame.t[i]) + 1.0) < 1e-14);
    CHECK(std::abs(d.dn_n.dot(frame.b[i])) < 1e-14);
}

TEST_CASE("transverse derivatives: omega_b = kappa puts the curvature in dn_t . b") {
    const DiscreteCurve circle = build_circle({2.0, 1.0}, 400);
    const FrameField frame = compute_frame(circle);
    const std::size_t i = 5;
    const double kappa = frame.kappa[i];
    const CongruenceCoefficients coeffs =
        CongruenceCoefficients::constants(circle, 0, 0, 0, 0, kappa, 0, 0);
    const TransverseDerivatives d = transverse_frame_derivatives(coeffs, frame, i);
    CHECK(std::abs(d.dn_t.dot(frame.b[i]) - kappa) < 1e-14);
}

TEST_CASE("antisymmetric reading yields antisymmetric coefficient matrices") {
    testutil::Rng rng(77u);
    const DiscreteCurve helix = build_helix({1.0, 0.6, 1.5}, 500);
    const FrameField frame = compute_frame(helix);
    const CongruenceCoefficients coeffs = CongruenceCoefficients::constants(
        helix, rng.signed_range(0.1, 1.0), rng.signed_range(0.1, 1.0),
        rng.signed_range(0.1, 1.0), rng.signed_range(0.1, 1.0), rng.signed_range(0.1, 1.0),
        rng.signed_range(0.1, 1.0), rng.signed_range(0.1, 1.0));

    for (std::size_t trial = 0; trial < 20; ++trial) {
        const std::size_t i = rng.index(frame.size());
        const TransverseDerivatives d = transverse_frame_derivatives(
            coeffs, frame, i, FrameDerivativeReading::Antisymmetric);
        const CoefficientMatrices m = project(d, frame, i);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                CHECK(std::abs(m.dn[r][c] + m.dn[c][r]) < 1e-12);
                CHECK(std::abs(m.db[r][c] + m.db[c][r]) < 1e-12);
            }
        }
    }
}

TEST_CASE("literal reading breaks antisymmetry in exactly the two documented pairs") {
    const DiscreteCurve circle = build_circle({2.0, 1.0}, 400);
    const FrameField frame = compute_frame(circle);
    const double div_b = 0.4;
    const CongruenceCoefficients coeffs =
        CongruenceCoefficients::constants(circle, 0.3, -0.2, 0.0, 0.1, 0.5, 0.25, div_b);
    const std::size_t i = 11;
    const double kappa = frame.kappa[i];

    const TransverseDerivatives d =
        transverse_frame_derivatives(coeffs, frame, i, FrameDerivativeReading::Literal);
    const CoefficientMatrices m = project(d, frame, i);

    // d/dn: the (n, b) pair picks up -div_b on both sides.
    CHECK(std::abs(m.dn[1][2] + m.dn[2][1] + 2.0 * div_b) < 1e-12);
    // d/db: the (n, b) pair misses the curvature by 2 kappa.
    CHECK(std::abs(m.db[1][2] + m.db[2][1] + 2.0 * kappa) < 1e-12);
    // The (t, n) and (t, b) pairs stay antisymmetric in both readings.
    CHECK(std::abs(m.dn[0][1] + m.dn[1][0]) < 1e-12);
    CHECK(std::abs(m.dn[0][2] + m.dn[2][0]) < 1e-12);
    CHECK(std::abs(m.db[0][1] + m.db[1][0]) < 1e-12);
    CHECK(std::abs(m.db[0][2] + m.db[2][0]) < 1e-12);
}

TEST_CASE("equilibrium current residual") {
    testutil::Rng rng(123u);
    const DiscreteCurve helix = build_helix({1.0, 1.0, 1.0}, 600);
    const FrameField frame = compute_frame(helix);
    const double ob = rng.signed_range(0.1, 1.0);
    const double on = rng.signed_range(0.1, 1.0);
    const CongruenceCoefficients coeffs = CongruenceCoefficients::constants(
        helix, rng.signed_range(0.1, 1.0), rng.signed_range(0.1, 1.0), 0.0, on, ob,
        rng.signed_range(0.1, 1.0), rng.signed_range(0.1, 1.0));

    SUBCASE("zero field carries zero residual") {
        const Profile zero(frame.size(), 0.0);
        for (const Vec3& r : equilibrium_current_residual(coeffs, frame, zero)) {
            CHECK(r.norm() == 0.0);
        }
    }
    SUBCASE("matches the closed form B0 (omega_b + omega_n + 2 tau) t") {
        Profile B0(frame.size());
        for (std::size_t i = 0; i < B0.size(); ++i) B0[i] = 1.0 + 0.1 * std::sin(0.5 * coeffs.s[i]);
        const std::vector<Vec3> residual = equilibrium_current_residual(coeffs, frame, B0);
        bool nonzero = false;
        for (std::size_t i = 0; i < residual.size(); ++i) {
            const Vec3 expected = frame.t[i] * (B0[i] * (ob + on + 2.0 * frame.tau[i]));
            CHECK((residual[i] - expected).norm() < 1e-12);
            nonzero = nonzero || residual[i].norm() > 1e-3;
        }
        CHECK(nonzero);  // tau != 0 on a helix keeps the residual alive
    }
}

TEST_CASE("equilibrium constraints") {
    SUBCASE("circle with omega_b = kappa and the rest zero passes all checks") {
        const DiscreteCurve circle = build_circle({1.0, 1.0}, 4000);
        const FrameField frame = compute_frame(circle);
        const CongruenceCoefficients coeffs =
            CongruenceCoefficients::constants(circle, 0.2, 0.1, 0.0, 0.0, 1.0, 0.0, 0.3);
        const ConstraintReport report = check_equilibrium_constraints(coeffs, frame);
        CHECK(report.planar_ok);
        CHECK(report.omega_n_ok);
        CHECK(report.kappa_eq_omega_b_ok);
        CHECK(report.geodesic);
        CHECK(report.all_ok());
    }
    SUBCASE("helix fails planarity; omega_s != 0 fails the geodesic flag") {
        const DiscreteCurve helix = build_helix({1.0, 1.0, 1.0}, 500);
        const FrameField frame = compute_frame(helix);
        const CongruenceCoefficients coeffs =
            CongruenceCoefficients::constants(helix, 0, 0, 1.0, 0, 0.5, 0, 0);
        const ConstraintReport report = check_equilibrium_constraints(coeffs, frame);
        CHECK_FALSE(report.planar_ok);
        CHECK_FALSE(report.geodesic);
        CHECK(report.max_abs_tau > 0.4);
        CHECK(report.max_abs_omega_s == 1.0);
        CHECK_FALSE(report.all_ok());
    }
}

TEST_CASE("constraint checks are monotone in the tolerance") {
    const DiscreteCurve circle = build_circle({1.0, 1.0}, 500);
    const FrameField frame = compute_frame(circle);
    const CongruenceCoefficients coeffs =
        CongruenceCoefficients::constants(circle, 0, 0, 1e-4, 2e-4, 1.0, 0, 0);
    const ConstraintReport tight = check_equilibrium_constraints(coeffs, frame, 1e-5);
    const ConstraintReport loose = check_equilibrium_constraints(coeffs, frame, 1e-2);
    CHECK_FALSE(tight.geodesic);
    CHECK_FALSE(tight.omega_n_ok);
    CHECK(loose.geodesic);
    CHECK(loose.omega_n_ok);
    CHECK(loose.planar_ok);
    CHECK(loose.kappa_eq_omega_b_ok);
}

TEST_CASE("profile mean skips the duplicate closing sample") {
    const DiscreteCurve circle = build_circle({1.0, 1.0}, 100);
    Profile p(circle.size(), 1.0);
    p.back() = 100.0;  // duplicate sample must not contaminate the mean
    CHECK(profile_mean(p, true) == 1.0);
    CHECK(profile_mean(p, false) > 1.0);
}

TEST_CASE("coefficient validation catches misaligned and non-finite profiles") {
    const DiscreteCurve circle = build_circle({1.0, 1.0}, 100);
    CongruenceCoefficients coeffs =
        CongruenceCoefficients::constants(circle, 0.1, 0.2, 0, 0, 0, 0, 0);
    coeffs.theta_bs.pop_back();
    CHECK_THROWS_AS(coeffs.validate(), Error);

    CongruenceCoefficients bad = CongruenceCoefficients::constants(circle, 0, 0, 0, 0, 0, 0, 0);
    bad.div_n[3] = std::nan("");
    CHECK_THROWS_AS(bad.validate(), Error);
}
