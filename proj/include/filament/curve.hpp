#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "filament/errors.hpp"
#include "filament/vec3.hpp"

namespace filament {

/// Arc-length-sampled space curve: the filament centerline.
///
/// Samples are uniformly spaced in arc length, arc_length[0] = 0 and the
/// last entry is the total length L. A closed curve stores a duplicate
/// closing sample (samples.front() == samples.back()); derivative stencils
/// then wrap periodically over the size()-1 unique samples.
struct DiscreteCurve {
    std::vector<Vec3> samples;
    std::vector<double> arc_length;
    bool closed = false;

    std::size_t size() const { return samples.size(); }
    std::size_t unique_samples() const { return closed ? samples.size() - 1 : samples.size(); }
    double length() const { return arc_length.back(); }
    double spacing() const { return arc_length.back() / static_cast<double>(samples.size() - 1); }

    /// Enforces the type invariants; throws on violation.
    void validate() const;
};

struct LineSpec {
    Vec3 from{0.0, 0.0, 0.0};
    Vec3 to{1.0, 0.0, 0.0};
};

struct CircleSpec {
    double radius = 1.0;
    double turns = 1.0;  // integral turns close the curve
};

struct HelixSpec {
    double a = 1.0;  // radius
    double b = 1.0;  // axial rise per radian
    double turns = 1.0;
};

DiscreteCurve build_line(const LineSpec& spec, std::size_t resolution);
DiscreteCurve build_circle(const CircleSpec& spec, std::size_t resolution);
DiscreteCurve build_helix(const HelixSpec& spec, std::size_t resolution);

/// Resamples a polyline to uniform arc length (measured along the chords).
/// With closed = true the closing chord is implied when the endpoints differ.
DiscreteCurve build_polyline(std::span<const Vec3> points, std::size_t resolution,
                             bool closed = false);

/// Frenet triads with curvature and torsion profiles along the curve.
/// Triads are orthonormal by construction and b = t x n componentwise.
/// On open curves the outermost kappa (two samples per end) and tau (three
/// samples per end) are quadratic extrapolations of the interior: one-sided
/// stencil cascades cannot recover higher-derivative quantities at ends.
struct FrameField {
    std::vector<Vec3> t;
    std::vector<Vec3> n;
    std::vector<Vec3> b;
    std::vector<double> kappa;
    std::vector<double> tau;
    double h = 0.0;
    bool closed = false;

    std::size_t size() const { return t.size(); }
    std::size_t unique_samples() const { return closed ? t.size() - 1 : t.size(); }
    double mean_kappa() const;
};

struct FrameOptions {
    /// Direction used for n where kappa degenerates (e.g. straight
    /// segments). Absent -> degenerate-normal error carrying the sample index.
    std::optional<Vec3> fallback_normal;
    /// Degeneracy threshold is degeneracy_scale / h.
    double degeneracy_scale = 1e-10;
};

FrameField compute_frame(const DiscreteCurve& curve, const FrameOptions& options = {});

/// Max-norm defects of the three Frenet-Serret relations, O(h^2) on smooth
/// curves: |t' - kappa n|, |n' + kappa t - tau b|, |b' + tau n|. On open
/// curves the three outermost samples per end are excluded; they carry the
/// one-sided boundary defect rather than the interior scheme's error.
struct FrenetResiduals {
    double tangent = 0.0;
    double normal = 0.0;
    double binormal = 0.0;
    double max() const;
};

FrenetResiduals frenet_residual(const FrameField& frame, const DiscreteCurve& curve);

/// True iff max |tau| < tol.
bool is_planar(const FrameField& frame, double tol = 1e-6);

enum class LengthConvention {
    Full,          // L = total arc length
    SolarHalfLoop  // L = pi R for a circular loop, half of it below the surface
};

double filament_length(const DiscreteCurve& curve, LengthConvention convention);

/// Kinematic time derivatives of the frame:
/// t_dot = -tau kappa n + kappa' b,  n_dot = -kappa tau t,  b_dot = -kappa' t.
struct FrameRates {
    std::vector<Vec3> t_dot;
    std::vector<Vec3> n_dot;
    std::vector<Vec3> b_dot;
};

FrameRates frame_time_derivative(const FrameField& frame);

}  // namespace filament
