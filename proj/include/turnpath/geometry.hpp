#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace turnpath {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point {
    double c1 = 0.0;
    double c2 = 0.0;
};

using Vec = Point;

inline Point operator+(Point a, Point b) { return {a.c1 + b.c1, a.c2 + b.c2}; }
inline Point operator-(Point a, Point b) { return {a.c1 - b.c1, a.c2 - b.c2}; }
inline Point operator*(double s, Point a) { return {s * a.c1, s * a.c2}; }
inline bool operator==(Point a, Point b) { return a.c1 == b.c1 && a.c2 == b.c2; }

inline double dot(Vec a, Vec b) { return a.c1 * b.c1 + a.c2 * b.c2; }

// det of the 2x2 matrix with rows a, b
inline double cross(Vec a, Vec b) { return a.c1 * b.c2 - a.c2 * b.c1; }

inline double norm(Vec a) { return std::hypot(a.c1, a.c2); }
inline double dist(Point a, Point b) { return norm(b - a); }
inline double sup_dist(Point a, Point b) {
    return std::max(std::abs(a.c1 - b.c1), std::abs(a.c2 - b.c2));
}

inline bool is_zero(Vec a) { return a.c1 == 0.0 && a.c2 == 0.0; }

inline bool finite(Point a) { return std::isfinite(a.c1) && std::isfinite(a.c2); }

inline Vec unit(Vec a) {
    const double n = norm(a);
    if (n == 0.0) throw std::domain_error("unit: zero vector");
    return {a.c1 / n, a.c2 / n};
}

// canonical order used for deterministic enumeration and tie-breaking
inline bool point_less(Point a, Point b) {
    if (a.c1 != b.c1) return a.c1 < b.c1;
    return a.c2 < b.c2;
}

struct Mat2 {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;
};

inline Vec apply(const Mat2& m, Vec v) {
    return {m.a11 * v.c1 + m.a12 * v.c2, m.a21 * v.c1 + m.a22 * v.c2};
}

inline Mat2 transpose(const Mat2& m) { return {m.a11, m.a21, m.a12, m.a22}; }

struct Rect {
    Point lo;
    Point hi;
};

struct Polyline {
    std::vector<Point> vertices;
};

}  // namespace turnpath
