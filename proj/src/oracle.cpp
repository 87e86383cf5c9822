#include "filament/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace filament {

namespace {

constexpr double kBranchTol = 1e-10;

std::complex<double> unit_phase(double theta) {
    const auto [re, im] = moivre_expand(ModePhase{theta});
    return {re, im};
}

struct EquationSides {
    std::complex<double> lhs;
    std::complex<double> rhs;
};

EquationSides evaluate_sides(const PerturbationMode& mode, const ModeContext& ctx,
                             ModeEquation equation, double solved, double theta) {
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> phase = unit_phase(theta);
    switch (equation) {
        case ModeEquation::CurrentBalance:
            return {i * solved * mode.B1_0 * phase,
                    (ctx.kappa0 * mode.B1_0 + ctx.mu0 * mode.J1_0) * phase};
        case ModeEquation::DivergenceFree:
            return {i * solved * mode.B1_0 * phase,
                    -(ctx.theta_ns + ctx.theta_bs) * mode.B1_0 * phase};
        case ModeEquation::MassConservation:
            return {-i * std::complex<double>{mode.omega.real(), solved} * mode.rho1_0 * phase,
                    mode.v1_0 * ctx.rho0 * ctx.div_b * phase};
    }
    fail(ErrorCode::InvalidInput, "unknown mode equation");
}

double solved_quantity(const PerturbationMode& mode, ModeEquation equation) {
    switch (equation) {
        case ModeEquation::CurrentBalance: return mode.k_perp;
        case ModeEquation::DivergenceFree: return mode.k_par;
        case ModeEquation::MassConservation: return mode.omega.imag();
    }
    fail(ErrorCode::InvalidInput, "unknown mode equation");
}

BranchResidual branch_residual(const PerturbationMode& mode, const ModeContext& ctx,
                               ModeEquation equation, double solved, std::size_t samples) {
    BranchResidual r;
    double min_sq = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < samples; ++j) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples);
        const EquationSides sides = evaluate_sides(mode, ctx, equation, solved, theta);
        r.max_abs = std::max(r.max_abs, std::abs(sides.lhs - sides.rhs));
        const double sq = std::abs(std::norm(sides.lhs) - std::norm(sides.rhs));
        r.max_sq = std::max(r.max_sq, sq);
        min_sq = std::min(min_sq, sq);
    }
    r.spread_sq = r.max_sq - min_sq;
    return r;
}

}  // namespace

AnalyticFrame analytic_frame_oracle(const LineSpec& spec) {
    const double length = (spec.to - spec.from).norm();
    if (!(length > 0.0)) {
        fail(ErrorCode::DegenerateCurve, "line endpoints coincide");
    }
    return {0.0, 0.0, length};
}

AnalyticFrame analytic_frame_oracle(const CircleSpec& spec) {
    if (!(spec.radius > 0.0) || !(spec.turns > 0.0)) {
        fail(ErrorCode::InvalidInput, "circle radius and turns must be positive");
    }
    return {1.0 / spec.radius, 0.0, 2.0 * std::numbers::pi * spec.radius * spec.turns};
}

AnalyticFrame analytic_frame_oracle(const HelixSpec& spec) {
    if (!(spec.a > 0.0) || !(spec.turns > 0.0)) {
        fail(ErrorCode::InvalidInput, "helix radius and turns must be positive");
    }
    const double c2 = spec.a * spec.a + spec.b * spec.b;
    return {spec.a / c2, spec.b / c2, 2.0 * std::numbers::pi * spec.turns * std::sqrt(c2)};
}

BacksubReport complex_backsubstitution(const PerturbationMode& mode, const ModeContext& context,
                                       ModeEquation equation, std::size_t theta_samples) {
    mode.validate();
    if (theta_samples == 0) {
        fail(ErrorCode::InvalidInput, "theta_samples must be positive");
    }
    const double solved = solved_quantity(mode, equation);
    BacksubReport report;
    report.plus = branch_residual(mode, context, equation, solved, theta_samples);
    report.minus = branch_residual(mode, context, equation, -solved, theta_samples);
    if (report.plus.max_abs < kBranchTol) {
        report.satisfied_branch = 1;
    } else if (report.minus.max_abs < kBranchTol) {
        report.satisfied_branch = -1;
    }
    return report;
}

ScanResult omega_residual_scan(double rho1_0, double v1_0, double rho0, double div_b,
                               MassInterpretation interpretation, const ScanGrid& grid) {
    if (grid.steps < 3) {
        fail(ErrorCode::InvalidInput, "scan grid needs at least 3 steps");
    }
    if (!(grid.im_min < grid.im_max) || !std::isfinite(grid.im_min) ||
        !std::isfinite(grid.im_max)) {
        fail(ErrorCode::InvalidInput, "scan interval must be finite and ordered");
    }
    if (!std::isfinite(rho1_0) || rho1_0 == 0.0) {
        fail(ErrorCode::DegenerateAmplitude, "rho1_0 must be nonzero for the residual scan");
    }

    const auto residual_at = [&](double im) {
        return mass_conservation_residual({0.0, im}, rho1_0, v1_0, rho0, div_b, interpretation);
    };
    // Lexicographic order: residual, then |im|, then im, so ties resolve
    // deterministically toward the smaller-magnitude root.
    const auto better = [](double res_a, double a, double res_b, double b) {
        if (res_a != res_b) return res_a < res_b;
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        return a < b;
    };

    const double width =
        (grid.im_max - grid.im_min) / static_cast<double>(grid.steps - 1);
    std::size_t best_index = 0;
    double best_im = grid.im_min;
    double best_res = residual_at(grid.im_min);
    for (std::size_t j = 1; j < grid.steps; ++j) {
        const double im = grid.im_min + width * static_cast<double>(j);
        const double res = residual_at(im);
        if (better(res, im, best_res, best_im)) {
            best_index = j;
            best_im = im;
            best_res = res;
        }
    }
    if (best_index == 0 || best_index == grid.steps - 1) {
        fail(ErrorCode::NoRootInBracket,
             "residual minimizer sits on the scan boundary; widen the scan interval");
    }

    double lo = best_im - width;
    double hi = best_im + width;
    for (int round = 0; round < 3; ++round) {
        const double ml = 0.5 * (lo + best_im);
        const double mr = 0.5 * (best_im + hi);
        const double res_ml = residual_at(ml);
        const double res_mr = residual_at(mr);
        int winner = 0;  // -1 left midpoint, 0 incumbent, +1 right midpoint
        double win_im = best_im;
        double win_res = best_res;
        if (better(res_ml, ml, win_res, win_im)) {
            winner = -1;
            win_im = ml;
            win_res = res_ml;
        }
        if (better(res_mr, mr, win_res, win_im)) {
            winner = 1;
            win_im = mr;
            win_res = res_mr;
        }
        if (winner < 0) {
            hi = best_im;
        } else if (winner > 0) {
            lo = best_im;
        } else {
            lo = ml;
            hi = mr;
        }
        best_im = win_im;
        best_res = win_res;
    }
    return {best_im, best_res, 0.5 * (hi - lo)};
}

}  // namespace filament
