#include "filament/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "filament/grid.hpp"

namespace filament {

namespace {

constexpr std::size_t kMinSamples = 4;  // torsion stencils need four points

std::vector<double> uniform_arc_length(double total, std::size_t resolution) {
    std::vector<double> s(resolution);
    for (std::size_t j = 0; j < resolution; ++j) {
        s[j] = total * static_cast<double>(j) / static_cast<double>(resolution - 1);
    }
    s.front() = 0.0;
    s.back() = total;
    return s;
}

void require_resolution(std::size_t resolution) {
    if (resolution < kMinSamples) {
        fail(ErrorCode::InvalidInput,
             "resolution must be at least " + std::to_string(kMinSamples) + ", got " +
                 std::to_string(resolution));
    }
}

// Replaces the `band` outermost values at each end with a quadratic
// extrapolation of the adjacent clean interior samples. Used for the scalar
// profiles an open curve's one-sided stencil cascade cannot recover.
void extrapolate_end_band(std::vector<double>& v, std::size_t band) {
    const std::size_t n = v.size();
    if (n < 2 * band + 4) return;  // too short for clean quadratic support
    for (std::size_t d = 1; d <= band; ++d) {
        const double fd = static_cast<double>(d);
        const double w0 = 0.5 * (fd + 1.0) * (fd + 2.0);
        const double w1 = -fd * (fd + 2.0);
        const double w2 = 0.5 * fd * (fd + 1.0);
        v[band - d] = w0 * v[band] + w1 * v[band + 1] + w2 * v[band + 2];
        v[n - 1 - band + d] =
            w0 * v[n - 1 - band] + w1 * v[n - 2 - band] + w2 * v[n - 3 - band];
    }
}

double bounding_diagonal(std::span<const Vec3> points) {
    Vec3 lo = points.front();
    Vec3 hi = points.front();
    for (const Vec3& p : points) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return (hi - lo).norm();
}

}  // namespace

void DiscreteCurve::validate() const {
    if (samples.size() < kMinSamples) {
        fail(ErrorCode::InvalidInput, "curve needs at least 4 samples");
    }
    if (arc_length.size() != samples.size()) {
        fail(ErrorCode::InvalidInput, "arc_length/sample count mismatch");
    }
    if (arc_length.front() != 0.0) {
        fail(ErrorCode::InvalidInput, "arc_length must start at 0");
    }
    for (std::size_t i = 1; i < arc_length.size(); ++i) {
        if (!(arc_length[i] > arc_length[i - 1])) {
            fail(ErrorCode::InvalidInput, "arc_length must be strictly increasing");
        }
    }
    const double tol = 1e-9 * spacing();
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (closed && i == samples.size() - 1) continue;  // closure pair may coincide
        if ((samples[i] - samples[i - 1]).norm() <= tol) {
            fail(ErrorCode::DegenerateCurve,
                 "coincident consecutive samples at index " + std::to_string(i));
        }
    }
}

DiscreteCurve build_line(const LineSpec& spec, std::size_t resolution) {
    require_resolution(resolution);
    const Vec3 d = spec.to - spec.from;
    const double length = d.norm();
    if (!(length > 0.0) || !d.finite()) {
        fail(ErrorCode::DegenerateCurve, "line endpoints coincide");
    }
    DiscreteCurve curve;
    curve.closed = false;
    curve.arc_length = uniform_arc_length(length, resolution);
    curve.samples.resize(resolution);
    for (std::size_t j = 0; j < resolution; ++j) {
        curve.samples[j] = spec.from + d * (curve.arc_length[j] / length);
    }
    curve.validate();
    return curve;
}

DiscreteCurve build_circle(const CircleSpec& spec, std::size_t resolution) {
    require_resolution(resolution);
    if (!(spec.radius > 0.0) || !std::isfinite(spec.radius)) {
        fail(ErrorCode::InvalidInput, "circle radius must be positive");
    }
    if (!(spec.turns > 0.0) || !std::isfinite(spec.turns)) {
        fail(ErrorCode::InvalidInput, "circle turns must be positive");
    }
    const double length = 2.0 * std::numbers::pi * spec.radius * spec.turns;
    const bool whole_turns =
        std::abs(spec.turns - std::round(spec.turns)) < 1e-9 && spec.turns > 0.5;
    DiscreteCurve curve;
    curve.closed = whole_turns;
    curve.arc_length = uniform_arc_length(length, resolution);
    curve.samples.resize(resolution);
    for (std::size_t j = 0; j < resolution; ++j) {
        const double phi = curve.arc_length[j] / spec.radius;
        curve.samples[j] = {spec.radius * std::cos(phi), spec.radius * std::sin(phi), 0.0};
    }
    if (curve.closed) curve.samples.back() = curve.samples.front();
    curve.validate();
    return curve;
}

DiscreteCurve build_helix(const HelixSpec& spec, std::size_t resolution) {
    require_resolution(resolution);
    if (!(spec.a > 0.0) || !std::isfinite(spec.a) || !std::isfinite(spec.b)) {
        fail(ErrorCode::InvalidInput, "helix radius a must be positive");
    }
    if (!(spec.turns > 0.0) || !std::isfinite(spec.turns)) {
        fail(ErrorCode::InvalidInput, "helix turns must be positive");
    }
    const double c = std::hypot(spec.a, spec.b);  // |r'(theta)|
    const double length = 2.0 * std::numbers::pi * spec.turns * c;
    DiscreteCurve curve;
    curve.closed = false;
    curve.arc_length = uniform_arc_length(length, resolution);
    curve.samples.resize(resolution);
    for (std::size_t j = 0; j < resolution; ++j) {
        const double theta = curve.arc_length[j] / c;
        curve.samples[j] = {spec.a * std::cos(theta), spec.a * std::sin(theta), spec.b * theta};
    }
    curve.validate();
    return curve;
}

DiscreteCurve build_polyline(std::span<const Vec3> points, std::size_t resolution, bool closed) {
    require_resolution(resolution);
    // Two input points suffice: the output resolution, not the knot count,
    // is what the downstream stencils need.
    if (points.size() < 2) {
        fail(ErrorCode::InvalidInput,
             "polyline needs at least 2 points, got " + std::to_string(points.size()));
    }
    for (const Vec3& p : points) {
        if (!p.finite()) fail(ErrorCode::InvalidInput, "polyline point is not finite");
    }

    std::vector<Vec3> pts(points.begin(), points.end());
    const double scale = bounding_diagonal(pts);
    if (!(scale > 0.0)) fail(ErrorCode::DegenerateCurve, "all polyline points coincide");
    const double coincident_tol = 1e-12 * scale;

    // A closed input may or may not repeat its start point; drop the repeat
    // and re-close explicitly.
    if (closed && (pts.back() - pts.front()).norm() <= coincident_tol) {
        pts.pop_back();
    }
    if (closed && pts.size() < 3) {
        fail(ErrorCode::InvalidInput, "closed polyline needs at least 3 distinct points");
    }

    std::vector<Vec3> nodes = pts;
    if (closed) nodes.push_back(pts.front());

    std::vector<double> cum(nodes.size(), 0.0);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double chord = (nodes[i] - nodes[i - 1]).norm();
        if (chord <= coincident_tol) {
            fail(ErrorCode::DegenerateCurve,
                 "coincident consecutive points at index " + std::to_string(i));
        }
        cum[i] = cum[i - 1] + chord;
    }
    const double total = cum.back();

    DiscreteCurve curve;
    curve.closed = closed;
    curve.arc_length = uniform_arc_length(total, resolution);
    curve.samples.resize(resolution);
    std::size_t seg = 1;
    for (std::size_t j = 0; j < resolution; ++j) {
        const double u = curve.arc_length[j];
        while (seg + 1 < cum.size() && cum[seg] < u) ++seg;
        const double w = (u - cum[seg - 1]) / (cum[seg] - cum[seg - 1]);
        curve.samples[j] = nodes[seg - 1] + (nodes[seg] - nodes[seg - 1]) * w;
    }
    curve.samples.front() = nodes.front();
    curve.samples.back() = closed ? nodes.front() : nodes.back();
    curve.validate();
    return curve;
}

double FrameField::mean_kappa() const {
    const std::size_t m = unique_samples();
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += kappa[i];
    return sum / static_cast<double>(m);
}

FrameField compute_frame(const DiscreteCurve& curve, const FrameOptions& options) {
    curve.validate();
    const std::size_t n = curve.size();
    const double h = curve.spacing();

    FrameField frame;
    frame.h = h;
    frame.closed = curve.closed;
    frame.t.resize(n);
    frame.n.resize(n);
    frame.b.resize(n);
    frame.kappa.resize(n);
    frame.tau.resize(n);

    const std::vector<Vec3> dr = derivative(std::span<const Vec3>(curve.samples), h, curve.closed);
    for (std::size_t i = 0; i < n; ++i) {
        const double speed = dr[i].norm();
        if (!(speed > 0.0)) {
            fail(ErrorCode::DegenerateCurve, "vanishing tangent at sample " + std::to_string(i));
        }
        frame.t[i] = dr[i] / speed;
    }

    const std::vector<Vec3> dt = derivative(std::span<const Vec3>(frame.t), h, curve.closed);
    const double threshold = options.degeneracy_scale / h;
    const std::size_t m = frame.unique_samples();
    for (std::size_t i = 0; i < m; ++i) {
        const double kappa = dt[i].norm();
        frame.kappa[i] = kappa;
        Vec3 ortho = dt[i] - frame.t[i] * dt[i].dot(frame.t[i]);
        if (kappa < threshold || ortho.norm() < 1e-300) {
            if (!options.fallback_normal) {
                fail(ErrorCode::DegenerateNormal,
                     "curvature below degeneracy threshold at sample " + std::to_string(i) +
                         " and no fallback normal supplied",
                     i);
            }
            const Vec3 f = *options.fallback_normal;
            ortho = f - frame.t[i] * f.dot(frame.t[i]);
            if (ortho.norm() < 1e-12 * f.norm() || !(f.norm() > 0.0)) {
                fail(ErrorCode::InvalidInput,
                     "fallback normal is parallel to the tangent at sample " + std::to_string(i));
            }
        }
        frame.n[i] = ortho.normalized();
        frame.b[i] = frame.t[i].cross(frame.n[i]).normalized();
    }
    if (curve.closed) {
        frame.kappa[n - 1] = frame.kappa[0];
        frame.n[n - 1] = frame.n[0];
        frame.b[n - 1] = frame.b[0];
        frame.t[n - 1] = frame.t[0];
    }

    const std::vector<Vec3> db = derivative(std::span<const Vec3>(frame.b), h, curve.closed);
    for (std::size_t i = 0; i < n; ++i) {
        frame.tau[i] = -db[i].dot(frame.n[i]);  // b' = -tau n
    }
    if (!curve.closed) {
        // One-sided end stencils feed the t -> n -> b -> tau cascade with a
        // leading-error coefficient different from the centered interior.
        // Each derivative stage turns that mismatch into a defect one order
        // lower and smears it one sample further in, so kappa is unreliable
        // on the outermost two samples and tau on the outermost three. Those
        // band values are quadratically extrapolated from the clean interior
        // instead of being reported as computed.
        extrapolate_end_band(frame.kappa, 2);
        extrapolate_end_band(frame.tau, 3);
    }
    return frame;
}

double FrenetResiduals::max() const { return std::max({tangent, normal, binormal}); }

FrenetResiduals frenet_residual(const FrameField& frame, const DiscreteCurve& curve) {
    if (frame.size() != curve.size() || frame.closed != curve.closed) {
        fail(ErrorCode::InvalidInput, "frame was not built from this curve");
    }
    const double h = frame.h;
    const std::vector<Vec3> dt = derivative(std::span<const Vec3>(frame.t), h, frame.closed);
    const std::vector<Vec3> dn = derivative(std::span<const Vec3>(frame.n), h, frame.closed);
    const std::vector<Vec3> db = derivative(std::span<const Vec3>(frame.b), h, frame.closed);

    // Open ends: the three outermost samples per side carry the one-sided
    // cascade defect, not the interior scheme's error, and the frame's
    // kappa/tau there are extrapolated values. Measure the interior only.
    const std::size_t skip = frame.closed ? 0 : 3;
    const std::size_t start = std::min(skip, frame.size());
    const std::size_t stop = frame.size() - std::min(skip, frame.size());

    FrenetResiduals r;
    for (std::size_t i = start; i < stop; ++i) {
        const Vec3 et = dt[i] - frame.n[i] * frame.kappa[i];
        const Vec3 en = dn[i] + frame.t[i] * frame.kappa[i] - frame.b[i] * frame.tau[i];
        const Vec3 eb = db[i] + frame.n[i] * frame.tau[i];
        r.tangent = std::max(r.tangent, et.norm());
        r.normal = std::max(r.normal, en.norm());
        r.binormal = std::max(r.binormal, eb.norm());
    }
    return r;
}

bool is_planar(const FrameField& frame, double tol) {
    for (double tau : frame.tau) {
        if (std::abs(tau) >= tol) return false;
    }
    return true;
}

double filament_length(const DiscreteCurve& curve, LengthConvention convention) {
    curve.validate();
    if (convention == LengthConvention::Full) {
        return curve.length();
    }
    // Solar half-loop: L = pi R, defined for circular loops only.
    const FrameField frame = compute_frame(curve);
    const double mean = frame.mean_kappa();
    if (!(mean > 0.0)) {
        fail(ErrorCode::InvalidConvention, "solar_half_loop requires nonzero curvature");
    }
    // One-sided end stencils perturb kappa/tau at O(h^2) near open ends;
    // judge circularity on samples with clean centered stencils only.
    const std::size_t margin = frame.closed ? 0 : std::min<std::size_t>(4, frame.size() / 4);
    double max_dev = 0.0;
    double max_tau = 0.0;
    for (std::size_t i = margin; i < frame.unique_samples() - margin; ++i) {
        max_dev = std::max(max_dev, std::abs(frame.kappa[i] - mean));
        max_tau = std::max(max_tau, std::abs(frame.tau[i]));
    }
    if (max_dev / mean > 1e-6 || max_tau > 1e-6) {
        fail(ErrorCode::InvalidConvention,
             "solar_half_loop requires a circular curve (curvature varies or torsion nonzero)");
    }
    return std::numbers::pi / mean;
}

FrameRates frame_time_derivative(const FrameField& frame) {
    const std::vector<double> kprime =
        derivative(std::span<const double>(frame.kappa), frame.h, frame.closed);
    FrameRates rates;
    const std::size_t n = frame.size();
    rates.t_dot.resize(n);
    rates.n_dot.resize(n);
    rates.b_dot.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double kt = frame.kappa[i] * frame.tau[i];
        rates.t_dot[i] = frame.n[i] * -kt + frame.b[i] * kprime[i];
        rates.n_dot[i] = frame.t[i] * -kt;
        rates.b_dot[i] = frame.t[i] * -kprime[i];
    }
    return rates;
}

}  // namespace filament
