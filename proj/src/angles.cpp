#include "turnpath/angles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace turnpath {

OrientedAngle reduce_2pi(double x) {
    if (!std::isfinite(x)) throw std::domain_error("reduce_2pi: non-finite input");
    double r = std::remainder(x, kTwoPi);  // lands in [-pi, pi]
    if (r <= -kPi) r += kTwoPi;
    return {r};
}

OrientedAngle oriented_angle(Vec u, Vec v) {
    if (!finite(u) || !finite(v)) throw std::domain_error("oriented_angle: non-finite input");
    if (is_zero(u) || is_zero(v)) return {0.0};
    const double c = cross(u, v);
    const double d = dot(u, v);
    // atan2(|c|, d) evaluates arccos(d / (|u||v|)) without the cancellation
    // loss near 0 and pi
    const double mag = std::atan2(std::abs(c), d);
    if (c < 0.0) return {mag};
    if (c > 0.0) return {-mag};
    return {d < 0.0 ? kPi : 0.0};
}

OrientedAngle angle_add(OrientedAngle a, OrientedAngle b) {
    return reduce_2pi(a.radians + b.radians);
}

OrientedAngle turn_angle(Point prev, Point cur, Point next) {
    const Vec in = cur - prev;
    const Vec out = next - cur;
    if (is_zero(in) || is_zero(out)) throw std::domain_error("turn_angle: coincident consecutive points");
    return oriented_angle(out, in);
}

LineSide side_of_line(Point a, Point b, Point c, double tol) {
    const Vec ab = b - a;
    const Vec ac = c - a;
    if (is_zero(ab)) throw std::domain_error("side_of_line: degenerate line");
    const double det = cross(ab, ac);
    const double scale = std::max(1.0, norm(ab) * norm(ac));
    if (std::abs(det) <= tol * scale) return LineSide::OnLine;
    return det < 0.0 ? LineSide::StrictRight : LineSide::StrictLeft;
}

Point line_intersection(Point a, Point e, Point b, Point d, double tol) {
    const Vec ae = e - a;
    const Vec bd = d - b;
    if (is_zero(ae) || is_zero(bd)) throw std::domain_error("line_intersection: degenerate line");
    const double delta = cross({e.c1 - a.c1, b.c1 - d.c1}, {e.c2 - a.c2, b.c2 - d.c2});
    const double scale = std::max(1.0, norm(ae) * norm(bd));
    if (std::abs(delta) <= tol * scale) throw std::domain_error("line_intersection: parallel lines");
    const double delta1 = cross({b.c1 - a.c1, b.c1 - d.c1}, {b.c2 - a.c2, b.c2 - d.c2});
    return a + (delta1 / delta) * ae;
}

namespace {

double side_det(Point p, Point q, Point x, double tol, double& slack) {
    const double det = cross(q - p, x - p);
    slack = tol * std::max(1.0, norm(q - p) * norm(x - p));
    return det;
}

}  // namespace

bool in_triangle(Point a, Point b, Point c, Point d, double tol) {
    double slack = 0.0;
    const double orient = side_det(a, b, c, tol, slack);
    if (std::abs(orient) <= slack) throw std::domain_error("in_triangle: degenerate triangle");
    if (orient > 0.0) throw std::invalid_argument("in_triangle: apex must lie strictly right of a -> b");
    // closed membership: d non-strictly right of each directed edge
    const double d1 = side_det(a, b, d, tol, slack);
    if (d1 > slack) return false;
    const double d2 = side_det(b, c, d, tol, slack);
    if (d2 > slack) return false;
    const double d3 = side_det(c, a, d, tol, slack);
    return d3 <= slack;
}

AngleBounds cumulative_bounds(const std::vector<double>& alphas, std::size_t i, std::size_t j) {
    const std::size_t n = alphas.size();
    if (i < 1 || i > n || j >= i) throw std::invalid_argument("cumulative_bounds: need 1 <= i <= n, 0 <= j < i");
    AngleBounds out;
    double run = 0.0;
    for (std::size_t k = j + 1; k <= i; ++k) {
        const double a = alphas[k - 1];
        run += a;
        out.mu_hi = std::max(out.mu_hi, run);
        out.mu_lo = std::min(out.mu_lo, run);
        out.sigma += std::abs(a);
    }
    return out;
}

}  // namespace turnpath
