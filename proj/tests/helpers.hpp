#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "filament/curve.hpp"

namespace testutil {

// splitmix64: tiny deterministic generator so property draws reproduce
// bit-for-bit across platforms (no <random> distribution variance).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0, 1)

    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    double sign() { return (next() & 1u) ? 1.0 : -1.0; }

    // Magnitude drawn from [lo, hi], sign drawn separately.
    double signed_range(double lo, double hi) { return sign() * range(lo, hi); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

// Closed analytic curve r(theta), theta in [0, 2pi), resampled to uniform
// arc length at machine accuracy. theta(s) comes from integrating
// d theta / ds = 1/|r'(theta)| with RK4 substeps after fixing the total
// length by composite Simpson, so the samples carry no resampling error a
// second-order frame stencil could see.
struct ParametricLoop {
    std::function<filament::Vec3(double)> position;
    std::function<filament::Vec3(double)> velocity;

    double speed(double theta) const { return velocity(theta).norm(); }

    double total_length(std::size_t panels = std::size_t{1} << 16) const {
        const double two_pi = 2.0 * std::numbers::pi;
        const double w = two_pi / static_cast<double>(panels);
        double sum = speed(0.0) + speed(two_pi);
        for (std::size_t j = 1; j < panels; ++j) {
            sum += (j % 2 == 1 ? 4.0 : 2.0) * speed(w * static_cast<double>(j));
        }
        return sum * w / 3.0;
    }

    filament::DiscreteCurve sample(std::size_t resolution, std::size_t substeps = 32) const {
        const double length = total_length();
        const double h = length / static_cast<double>(resolution);
        const double ds = h / static_cast<double>(substeps);

        filament::DiscreteCurve curve;
        curve.closed = true;
        curve.samples.reserve(resolution + 1);
        curve.arc_length.reserve(resolution + 1);

        double theta = 0.0;
        const auto f = [this](double th) { return 1.0 / speed(th); };
        for (std::size_t i = 0; i < resolution; ++i) {
            curve.samples.push_back(position(theta));
            curve.arc_length.push_back(h * static_cast<double>(i));
            for (std::size_t k = 0; k < substeps; ++k) {
                const double k1 = f(theta);
                const double k2 = f(theta + 0.5 * ds * k1);
                const double k3 = f(theta + 0.5 * ds * k2);
                const double k4 = f(theta + ds * k3);
                theta += ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
        curve.samples.push_back(curve.samples.front());
        curve.arc_length.push_back(length);
        curve.validate();
        return curve;
    }
};

// Bumpy non-planar loop: three gentle radial lobes plus an out-of-plane
// wobble. Curvature and torsion both vary with s, so frame residuals decay
// at the plain stencil order -- unlike exactly sampled circles and helices,
// whose symmetry cancels the leading error term entirely. The lobe amplitude
// obeys the same cap as the random planar loops (rho rho'' < rho^2 + 2 rho'^2)
// so curvature never approaches zero and the principal normal stays smooth;
// larger lobes create inflection points where n swings by O(1) per sample.
inline ParametricLoop wobbly_loop() {
    ParametricLoop loop;
    loop.position = [](double th) {
        const double rho = 2.0 + 0.08 * std::cos(3.0 * th);
        return filament::Vec3{rho * std::cos(th), rho * std::sin(th), 0.12 * std::sin(2.0 * th)};
    };
    loop.velocity = [](double th) {
        const double rho = 2.0 + 0.08 * std::cos(3.0 * th);
        const double drho = -0.24 * std::sin(3.0 * th);
        return filament::Vec3{drho * std::cos(th) - rho * std::sin(th),
                              drho * std::sin(th) + rho * std::cos(th),
                              0.24 * std::cos(2.0 * th)};
    };
    return loop;
}

// Random smooth planar loop rho(theta) = 2 + sum a_m cos(m theta + phi_m),
// m in {2, 3}, a_m in [0.02, 0.08]. The amplitude cap keeps
// rho * rho'' < rho^2 + 2 rho'^2 everywhere, so curvature stays positive,
// the discrete normal never flips, and tau vanishes identically (z = 0).
inline ParametricLoop random_planar_loop(Rng& rng) {
    const double a2 = rng.range(0.02, 0.08);
    const double a3 = rng.range(0.02, 0.08);
    const double p2 = rng.range(0.0, 2.0 * std::numbers::pi);
    const double p3 = rng.range(0.0, 2.0 * std::numbers::pi);

    ParametricLoop loop;
    loop.position = [a2, a3, p2, p3](double th) {
        const double rho = 2.0 + a2 * std::cos(2.0 * th + p2) + a3 * std::cos(3.0 * th + p3);
        return filament::Vec3{rho * std::cos(th), rho * std::sin(th), 0.0};
    };
    loop.velocity = [a2, a3, p2, p3](double th) {
        const double rho = 2.0 + a2 * std::cos(2.0 * th + p2) + a3 * std::cos(3.0 * th + p3);
        const double drho =
            -2.0 * a2 * std::sin(2.0 * th + p2) - 3.0 * a3 * std::sin(3.0 * th + p3);
        return filament::Vec3{drho * std::cos(th) - rho * std::sin(th),
                              drho * std::sin(th) + rho * std::cos(th), 0.0};
    };
    return loop;
}

}  // namespace testutil
