#pragma once

#include <cstddef>
#include <vector>

#include "turnpath/geometry.hpp"

namespace turnpath {

// absolute tolerance for comparisons at closed angular interval endpoints
inline constexpr double kAngleTol = 1e-9;

// relative tolerance deciding when a point counts as lying on a line
inline constexpr double kSideTol = 1e-12;

// oriented angle, clockwise-positive, normalized to (-pi, pi]
struct OrientedAngle {
    double radians = 0.0;
};

enum class LineSide { StrictRight, StrictLeft, OnLine };

// cumulative turn-angle bounds: mu_lo <= 0 <= mu_hi, sigma = sum of magnitudes
struct AngleBounds {
    double mu_lo = 0.0;
    double mu_hi = 0.0;
    double sigma = 0.0;
};

// unique representative of x mod 2*pi in (-pi, pi]; -pi maps to +pi
OrientedAngle reduce_2pi(double x);

// clockwise-positive angle from u to v; positive iff det[u;v] < 0,
// magnitude arccos of the normalized inner product; zero vector gives 0,
// opposite vectors give +pi
OrientedAngle oriented_angle(Vec u, Vec v);

// add-then-reduce composition
OrientedAngle angle_add(OrientedAngle a, OrientedAngle b);

// turn at `cur` of the path prev -> cur -> next:
// oriented_angle(next - cur, cur - prev)
OrientedAngle turn_angle(Point prev, Point cur, Point next);

// side of the directed line a -> b the point c falls on; |det| below
// tol * max(1, |b-a| * |c-a|) counts as on the line
LineSide side_of_line(Point a, Point b, Point c, double tol = kSideTol);

// intersection of line(a, e) and line(b, d) by Cramer's rule;
// near-parallel lines raise a domain error
Point line_intersection(Point a, Point e, Point b, Point d, double tol = kSideTol);

// membership of d in the closed triangle a, b, c; requires c strictly to the
// right of the directed line a -> b
bool in_triangle(Point a, Point b, Point c, Point d, double tol = kSideTol);

// running extrema and magnitude sum of partial sums alpha_{j+1} + ... + alpha_i
// (1-based i in [1, n], j in [0, i-1]); the empty partial sum 0 participates
AngleBounds cumulative_bounds(const std::vector<double>& alphas, std::size_t i, std::size_t j);

}  // namespace turnpath
