#pragma once

#include <cstddef>
#include <utility>

#include "turnpath/angles.hpp"
#include "turnpath/geometry.hpp"

namespace turnpath {

// reachable set S(A, B, phi): points C (other than A, B) whose chord angle
// oriented_angle(B - C, C - A) lies in (-phi, phi)
struct TurnRegion {
    Point a;
    Point b;
    double phi = 0.0;
};

// C(apex, axis, half_angle): points whose direction from the apex deviates
// from the axis by at most half_angle; the apex itself belongs
struct Cone {
    Point apex;
    Vec axis;
    double half_angle = 0.0;
};

// similarity taking world coordinates to the frame where A = (0,-1), B = (0,1)
struct CanonicalFrame {
    Mat2 rotation;   // orthonormal, det = +1 (columns: chord normal, chord direction)
    Point midpoint;  // (A + B) / 2
    double scale = 1.0;  // |B - A| / 2
};

enum class Closure { open, closed };
enum class Side { right, left };

CanonicalFrame canonical_frame(Point a, Point b);
Point to_canonical(Point a, Point b, Point c);
Point from_canonical(const CanonicalFrame& f, Point cbar);

// chord angle in the canonical frame: sign(c1) * arccos(u) with
// u = (1 - c1^2 - c2^2) / sqrt((1 + c1^2 + c2^2)^2 - 4 c2^2);
// undefined at the endpoints (0, +-1)
OrientedAngle psi(Point c);

// closed-form partials of psi; singular at the endpoints
std::pair<double, double> psi_gradient(Point c);

// membership of C in S (open) or cl S (closed); both modes exclude A and B
bool region_contains(const TurnRegion& r, Point c, Closure closure, double tol = kAngleTol);

// sampled boundary arc through A and B on the requested side of the chord,
// endpoints snapped to A and B exactly; requires phi in (0, pi)
Polyline region_boundary(const TurnRegion& r, Side side, std::size_t samples = 64);

// axis-aligned bounding box of S; requires phi in (0, pi)
Rect region_bounding_box(const TurnRegion& r);

bool cone_contains(const Cone& k, Point c, double tol = kAngleTol);

// max of |dPsi/dc1| + |dPsi/dc2| over the closed right half of the region,
// dropping points within s of either endpoint; sampled on a uniform grid
double lipschitz_estimate(double phi, double s, std::size_t samples_per_axis = 400);

}  // namespace turnpath
