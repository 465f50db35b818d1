#pragma once

#include <array>
#include <cmath>

namespace nlparab {

/// Spatial point in one or two dimensions. One-dimensional data keeps the
/// second component at zero, so euclidean norms are dimension-agnostic.
using Point = std::array<double, 2>;

inline constexpr Point origin{0.0, 0.0};

inline Point operator+(Point a, Point b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Point operator-(Point a, Point b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Point operator*(double s, Point p) { return {s * p[0], s * p[1]}; }

inline double dot(Point a, Point b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(Point p) { return std::hypot(p[0], p[1]); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline double norm_inf(Point p) {
  return std::max(std::fabs(p[0]), std::fabs(p[1]));
}

}  // namespace nlparab
