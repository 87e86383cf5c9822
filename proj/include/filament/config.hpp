#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "filament/congruence.hpp"
#include "filament/curve.hpp"
#include "filament/equilibrium.hpp"
#include "filament/modes.hpp"
#include "filament/oracle.hpp"

namespace filament {

/// Scalar-or-table value for a congruence coefficient. Tables are (s, value)
/// knots, linearly interpolated onto the curve grid and clamped at the ends.
struct ProfileSpec {
    double constant = 0.0;
    std::vector<std::pair<double, double>> table;

    bool is_table() const { return !table.empty(); }
    Profile materialize(std::span<const double> s) const;
};

enum class CurveFamily { Line, Circle, Helix, Points };

std::string to_string(CurveFamily family);

struct CurveConfig {
    CurveFamily family = CurveFamily::Circle;
    LineSpec line;
    CircleSpec circle;
    HelixSpec helix;
    std::vector<Vec3> points;
    bool points_closed = false;
    std::size_t resolution = 2000;
    std::optional<Vec3> fallback_normal;

    DiscreteCurve build() const;
};

struct NumericsConfig {
    double tol = 1e-6;
    unsigned long long seed = 0;
    ScanGrid scan;
    std::size_t sweep_cap = 1000000;
};

/// Full description of one analysis run: curve, congruence coefficients,
/// equilibrium parameters, perturbation amplitudes and solver knobs, plus
/// any sweep axes. Produced by the config parser; every field has the
/// documented default so a parsed config is always complete.
struct AnalysisConfig {
    CurveConfig curve;

    ProfileSpec theta_ns, theta_bs, omega_s, omega_n, omega_b, div_n, div_b;
    FrameDerivativeReading frame_reading = FrameDerivativeReading::Antisymmetric;

    double c0 = -1.0;
    double rho0 = 1.0;
    double p0 = 0.0;
    double gamma = 5.0 / 3.0;
    double mu0 = 4.0e-7 * 3.14159265358979323846;
    B0Form b0_form = B0Form::RateSum;

    double B1_0 = 1.0;
    double J1_0 = 0.0;
    double v1_0 = 0.0;
    double rho1_0 = 1.0;
    Branch branch = Branch::Plus;
    MassInterpretation mass_interpretation = MassInterpretation::DropDivB;

    LengthConvention length_convention = LengthConvention::Full;
    NumericsConfig numerics;

    /// Sweep axes in file order: dotted scalar key -> values.
    std::vector<std::pair<std::string, std::vector<double>>> sweep;
};

/// Parses the dotted-key config format:
///   # comment
///   curve.family = circle
///   curve.radius = 1.0
///   mode.v1_0 = 0.25
///   congruence.theta_bs = table: 0 0.1, 3.14 0.2
///   sweep.mode.v1_0 = -0.5, 0, 0.5        (or linspace(a, b, n))
/// Unknown keys and missing required keys are parse errors naming the key.
AnalysisConfig parse_config_text(const std::string& text);
AnalysisConfig parse_config_file(const std::string& path);

/// Assigns one sweepable scalar by dotted key; parse-error on unknown keys.
/// The same assignment path the parser uses, so sweeps cannot drift from it.
void set_scalar(AnalysisConfig& config, const std::string& key, double value);

/// Evaluates the configured coefficient profiles on the curve's grid.
CongruenceCoefficients materialize_coefficients(const AnalysisConfig& config,
                                                const DiscreteCurve& curve);

}  // namespace filament
