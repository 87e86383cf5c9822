#include "filament/grid.hpp"

#include <algorithm>
#include <cstddef>

#include "filament/errors.hpp"

namespace filament {

namespace {

// Shared stencil driver: T is double or Vec3.
template <typename T>
std::vector<T> derivative_impl(std::span<const T> f, double h, bool closed) {
    const std::size_t n = f.size();
    if (n < 4) fail(ErrorCode::InvalidInput, "derivative: need at least 4 samples");
    std::vector<T> d(n);
    const double inv2h = 1.0 / (2.0 * h);
    if (closed) {
        // Periodic over the n-1 unique samples; f[n-1] duplicates f[0].
        const std::size_t m = n - 1;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t prev = (i == 0) ? m - 1 : i - 1;
            const std::size_t next = (i == m - 1) ? 0 : i + 1;
            d[i] = (f[next] - f[prev]) * inv2h;
        }
        d[n - 1] = d[0];
    } else {
        d[0] = (f[0] * -3.0 + f[1] * 4.0 - f[2]) * inv2h;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            d[i] = (f[i + 1] - f[i - 1]) * inv2h;
        }
        d[n - 1] = (f[n - 1] * 3.0 - f[n - 2] * 4.0 + f[n - 3]) * inv2h;
    }
    return d;
}

}  // namespace

std::vector<double> derivative(std::span<const double> f, double h, bool closed) {
    return derivative_impl(f, h, closed);
}

std::vector<Vec3> derivative(std::span<const Vec3> f, double h, bool closed) {
    return derivative_impl(f, h, closed);
}

std::vector<double> cumulative_trapezoid(std::span<const double> g, double h) {
    std::vector<double> integral(g.size(), 0.0);
    for (std::size_t i = 1; i < g.size(); ++i) {
        integral[i] = integral[i - 1] + 0.5 * h * (g[i - 1] + g[i]);
    }
    return integral;
}

std::vector<double> interpolate_linear(std::span<const std::pair<double, double>> knots,
                                       std::span<const double> s) {
    if (knots.empty()) fail(ErrorCode::InvalidInput, "interpolate_linear: empty table");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i].first > knots[i - 1].first)) {
            fail(ErrorCode::InvalidInput, "interpolate_linear: table s values must increase");
        }
    }
    std::vector<double> out(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double x = s[j];
        if (x <= knots.front().first) {
            out[j] = knots.front().second;
        } else if (x >= knots.back().first) {
            out[j] = knots.back().second;
        } else {
            auto it = std::upper_bound(knots.begin(), knots.end(), x,
                                       [](double v, const auto& k) { return v < k.first; });
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double w = (x - lo.first) / (hi.first - lo.first);
            out[j] = lo.second + w * (hi.second - lo.second);
        }
    }
    return out;
}

}  // namespace filament
