#pragma once

#include <span>
#include <utility>
#include <vector>

#include "filament/vec3.hpp"

namespace filament {

// Second-order finite differences and quadrature on a uniform arc-length
// grid. Closed grids carry a duplicate closing sample (last == first); the
// stencils wrap over the size()-1 unique samples and the derivative at the
// duplicate is copied from sample 0. Open grids use centered interior
// stencils and one-sided second-order stencils at the two ends.

std::vector<double> derivative(std::span<const double> f, double h, bool closed);
std::vector<Vec3> derivative(std::span<const Vec3> f, double h, bool closed);

/// Cumulative trapezoid of g on the uniform grid, anchored at 0.
std::vector<double> cumulative_trapezoid(std::span<const double> g, double h);

/// Piecewise-linear interpolation of (s, value) knots onto a target grid,
/// clamped at both ends. Knots must be strictly increasing in s.
std::vector<double> interpolate_linear(std::span<const std::pair<double, double>> knots,
                                       std::span<const double> s);

}  // namespace filament
