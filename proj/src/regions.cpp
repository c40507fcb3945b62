#include "turnpath/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace turnpath {

namespace {

void require_chord(Point a, Point b) {
    if (!finite(a) || !finite(b)) throw std::domain_error("region: non-finite endpoint");
    if (a == b) throw std::domain_error("region: coincident endpoints");
}

bool near_endpoint(Point c, Point a, Point b) {
    const double tol = kSideTol * std::max(1.0, dist(a, b));
    return dist(c, a) <= tol || dist(c, b) <= tol;
}

// squared product of the distances to the canonical endpoints (0, -1), (0, 1);
// this equals (1 + c1^2 + c2^2)^2 - 4 c2^2 and vanishes exactly there
double endpoint_product_sq(Point c) {
    const double q = 1.0 + c.c1 * c.c1 + c.c2 * c.c2;
    return q * q - 4.0 * c.c2 * c.c2;
}

}  // namespace

CanonicalFrame canonical_frame(Point a, Point b) {
    require_chord(a, b);
    const Vec e = unit(b - a);
    CanonicalFrame f;
    // columns: chord normal (e2, -e1), chord direction (e1, e2)
    f.rotation = {e.c2, e.c1, -e.c1, e.c2};
    f.midpoint = 0.5 * (a + b);
    f.scale = 0.5 * dist(a, b);
    return f;
}

Point to_canonical(Point a, Point b, Point c) {
    const CanonicalFrame f = canonical_frame(a, b);
    return (1.0 / f.scale) * apply(transpose(f.rotation), c - f.midpoint);
}

Point from_canonical(const CanonicalFrame& f, Point cbar) {
    return f.scale * apply(f.rotation, cbar) + f.midpoint;
}

OrientedAngle psi(Point c) {
    if (!finite(c)) throw std::domain_error("psi: non-finite input");
    const double den_sq = endpoint_product_sq(c);
    if (den_sq <= 0.0) throw std::domain_error("psi: undefined at the chord endpoints");
    const double u = (1.0 - c.c1 * c.c1 - c.c2 * c.c2) / std::sqrt(den_sq);
    const double mag = std::acos(std::clamp(u, -1.0, 1.0));
    return {c.c1 >= 0.0 ? mag : -mag};
}

std::pair<double, double> psi_gradient(Point c) {
    if (!finite(c)) throw std::domain_error("psi_gradient: non-finite input");
    const double den = endpoint_product_sq(c);
    if (den <= 0.0) throw std::domain_error("psi_gradient: undefined at the chord endpoints");
    const double d1 = 2.0 * (1.0 + c.c1 * c.c1 - c.c2 * c.c2) / den;
    const double d2 = 4.0 * c.c1 * c.c2 / den;
    return {d1, d2};
}

bool region_contains(const TurnRegion& r, Point c, Closure closure, double tol) {
    require_chord(r.a, r.b);
    if (!finite(c)) throw std::domain_error("region_contains: non-finite point");
    if (r.phi <= 0.0) return false;
    if (near_endpoint(c, r.a, r.b)) return false;

    if (r.phi >= kPi) {
        if (r.phi > kPi || closure == Closure::closed) return true;
        // opening exactly pi: excluded set is the pair of closed outer rays
        if (side_of_line(r.a, r.b, c) != LineSide::OnLine) return true;
        const Vec ab = r.b - r.a;
        const double t = dot(c - r.a, ab) / dot(ab, ab);
        return t > 0.0 && t < 1.0;
    }

    const double m = std::abs(psi(to_canonical(r.a, r.b, c)).radians);
    if (closure == Closure::open) return m < r.phi - tol;
    return m <= r.phi + tol;
}

Polyline region_boundary(const TurnRegion& r, Side side, std::size_t samples) {
    require_chord(r.a, r.b);
    if (!(r.phi > 0.0 && r.phi < kPi)) throw std::domain_error("region_boundary: need phi in (0, pi)");
    if (samples < 2) throw std::invalid_argument("region_boundary: need at least 2 samples");

    const CanonicalFrame f = canonical_frame(r.a, r.b);
    const double radius = 1.0 / std::sin(r.phi);
    const double cx = 1.0 / std::tan(r.phi);  // right arc center at (-cx, 0)

    Polyline out;
    out.vertices.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        if (i == 0) {
            out.vertices.push_back(r.a);
            continue;
        }
        if (i + 1 == samples) {
            out.vertices.push_back(r.b);
            continue;
        }
        const double theta = -r.phi + 2.0 * r.phi * static_cast<double>(i) / static_cast<double>(samples - 1);
        Point cbar{-cx + radius * std::cos(theta), radius * std::sin(theta)};
        if (side == Side::left) cbar.c1 = -cbar.c1;
        out.vertices.push_back(from_canonical(f, cbar));
    }
    return out;
}

Rect region_bounding_box(const TurnRegion& r) {
    require_chord(r.a, r.b);
    if (!(r.phi > 0.0 && r.phi < kPi)) throw std::domain_error("region_bounding_box: need phi in (0, pi)");

    const CanonicalFrame f = canonical_frame(r.a, r.b);
    const double radius_w = f.scale / std::sin(r.phi);
    const double cx = 1.0 / std::tan(r.phi);
    // the canonical-to-world map rotates directions by rho
    const double rho = std::atan2(f.rotation.a21, f.rotation.a11);

    Rect box{{HUGE_VAL, HUGE_VAL}, {-HUGE_VAL, -HUGE_VAL}};
    auto take = [&box](Point p) {
        box.lo.c1 = std::min(box.lo.c1, p.c1);
        box.lo.c2 = std::min(box.lo.c2, p.c2);
        box.hi.c1 = std::max(box.hi.c1, p.c1);
        box.hi.c2 = std::max(box.hi.c2, p.c2);
    };

    for (const double sgn : {1.0, -1.0}) {  // right arc, then its mirror
        const Point center_w = from_canonical(f, {sgn * -cx, 0.0});
        const double theta0 = -r.phi;
        const double theta1 = r.phi;
        auto arc_point = [&](double theta) {
            // mirrored arc runs (cx - R cos theta, R sin theta); fold the sign
            // into the world angle via the frame rotation
            const double world = (sgn > 0.0 ? theta + rho : kPi - theta + rho);
            return center_w + radius_w * Point{std::cos(world), std::sin(world)};
        };
        take(arc_point(theta0));
        take(arc_point(theta1));
        // interior extremes where the world direction crosses an axis
        for (int k = -4; k <= 4; ++k) {
            const double axis_world = 0.5 * kPi * k;
            const double theta = (sgn > 0.0 ? axis_world - rho : kPi + rho - axis_world);
            if (theta > theta0 && theta < theta1) take(arc_point(theta));
        }
    }
    take(r.a);
    take(r.b);
    return box;
}

bool cone_contains(const Cone& k, Point c, double tol) {
    if (is_zero(k.axis)) throw std::domain_error("cone_contains: zero axis");
    if (!finite(c)) throw std::domain_error("cone_contains: non-finite point");
    const double m = std::abs(oriented_angle(c - k.apex, k.axis).radians);
    return m <= k.half_angle + tol;
}

double lipschitz_estimate(double phi, double s, std::size_t samples_per_axis) {
    if (!(phi > 0.0 && phi < kPi)) throw std::domain_error("lipschitz_estimate: need phi in (0, pi)");
    if (s < 0.0) throw std::invalid_argument("lipschitz_estimate: negative truncation");
    if (samples_per_axis < 2) throw std::invalid_argument("lipschitz_estimate: too few samples");

    const double xmax = std::tan(0.5 * phi);
    const double ymax = phi > 0.5 * kPi ? 1.0 / std::sin(phi) : 1.0;
    const Point ep_a{0.0, -1.0};
    const Point ep_b{0.0, 1.0};

    double best = 0.0;
    bool hit = false;
    const auto den = static_cast<double>(samples_per_axis - 1);
    for (std::size_t i = 0; i < samples_per_axis; ++i) {
        const double x = xmax * static_cast<double>(i) / den;
        for (std::size_t j = 0; j < samples_per_axis; ++j) {
            const double y = -ymax + 2.0 * ymax * static_cast<double>(j) / den;
            const Point c{x, y};
            if (dist(c, ep_a) < s || dist(c, ep_b) < s) continue;
            if (endpoint_product_sq(c) <= 0.0) continue;
            if (std::abs(psi(c).radians) > phi + kAngleTol) continue;
            const auto [d1, d2] = psi_gradient(c);
            best = std::max(best, std::abs(d1) + std::abs(d2));
            hit = true;
        }
    }
    if (!hit) throw std::domain_error("lipschitz_estimate: truncation empties the region");
    return best;
}

}  // namespace turnpath
