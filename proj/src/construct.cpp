#include "turnpath/construct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "turnpath/regions.hpp"

namespace turnpath {

namespace {

constexpr int kMaxShrinkHalvings = 60;

double coincide_tol(Point a, Point b) { return kSideTol * std::max(1.0, dist(a, b)); }

// world point for local chord coordinates (x along a -> b from `origin`, y to the left)
struct ChordFrame {
    Point origin;
    Vec ex;  // unit chord direction
    Vec ey;  // left normal

    Point at(double x, double y) const { return origin + x * ex + y * ey; }
};

Point reflect_across(Point a, Point b, Point p) {
    const Vec e = unit(b - a);
    const Vec v = p - a;
    return a + 2.0 * dot(v, e) * e - v;
}

std::vector<Point> case_on_chord(Point a, Point b, std::size_t n, double phi, Point b1) {
    const ChordFrame frame{b1, unit(b - a), {-unit(b - a).c2, unit(b - a).c1}};
    const double total = dist(b1, b);

    // n - 2, n - 3 or n - 4 is divisible by 3, so a chord-to-chord block of
    // three half-angle turns plus one closing pattern covers every n >= 2
    const std::size_t r = 2 + (n - 2) % 3;
    const std::size_t blocks = (n - r) / 3;
    const double span = total / static_cast<double>(blocks + 1);

    const double ch = std::cos(0.5 * phi);
    const double sh = std::sin(0.5 * phi);
    const double cf = std::cos(phi);
    const double sf = std::sin(phi);

    std::vector<Point> pts;
    pts.reserve(n);
    double x = 0.0;
    for (std::size_t k = 0; k < blocks; ++k) {
        // (+phi/2, -phi, +phi/2): hop over half the span, glide the rest
        const double leg = span / (4.0 * ch);
        pts.push_back(frame.at(x, 0.0));
        pts.push_back(frame.at(x + leg * ch, leg * sh));
        pts.push_back(frame.at(x + 0.5 * span, 0.0));
        x += span;
    }

    const double rem = total - x;
    if (r == 2) {
        // (+phi/2, -phi), equal legs, lands on b
        const double leg = rem / (2.0 * ch);
        pts.push_back(frame.at(x, 0.0));
        pts.push_back(frame.at(x + leg * ch, leg * sh));
    } else if (r == 3) {
        // (+phi, -phi, -phi): rise, level glide, symmetric descent into b
        const double rise = rem / (4.0 * cf);
        pts.push_back(frame.at(x, 0.0));
        pts.push_back(frame.at(x + rise * cf, rise * sf));
        pts.push_back(frame.at(x + rise * cf + 0.5 * rem, rise * sf));
    } else {
        // (+phi, -phi, -phi, +phi): the bump returns to the chord halfway,
        // then the last leg runs straight into b
        const double rise = rem / (8.0 * cf);
        pts.push_back(frame.at(x, 0.0));
        pts.push_back(frame.at(x + rise * cf, rise * sf));
        pts.push_back(frame.at(x + rise * cf + 0.25 * rem, rise * sf));
        pts.push_back(frame.at(x + 0.5 * rem, 0.0));
    }
    return pts;
}

std::vector<Point> case_off_chord(Point a, Point b, std::size_t n, double phi, Point b1) {
    // b1 strictly right: extend the ray a -> b1 a little beyond b1 to get an
    // apex whose bend splits into n admissible equal turns
    const double s = std::min(dist(b1, b), dist(b1, a));
    double tbar = 0.25 * s / dist(b1, a);
    for (int k = 0; k <= kMaxShrinkHalvings; ++k, tbar *= 0.5) {
        const Point g = b1 + tbar * (b1 - a);
        const double psi_bar = oriented_angle(b - g, g - a).radians;
        if (!(psi_bar > kAngleTol && psi_bar < static_cast<double>(n) * phi - kAngleTol)) continue;
        if (!(dist(g, b1) < 0.5 * s && dist(b, g) > dist(g, b1))) continue;

        const double t1 = 1.0 / (1.0 + tbar);
        std::vector<Point> rest = solve_problem_o({a, b, g, t1, n});
        std::vector<Point> pts;
        pts.reserve(n);
        pts.push_back(b1);
        pts.insert(pts.end(), rest.begin(), rest.end());
        return pts;
    }
    throw std::domain_error("construct_polyline: no feasible apex for the given start");
}

}  // namespace

Mat2 rotation_matrix(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, -s, s, c};
}

std::vector<Point> solve_problem_o(const ProblemOInput& in) {
    if (in.n < 2) throw std::invalid_argument("solve_problem_o: need n >= 2");
    if (!finite(in.a) || !finite(in.b) || !finite(in.g) || !std::isfinite(in.t))
        throw std::domain_error("solve_problem_o: non-finite input");
    const double sep_tol = coincide_tol(in.a, in.b);
    if (dist(in.a, in.b) <= sep_tol || dist(in.a, in.g) <= sep_tol || dist(in.b, in.g) <= sep_tol)
        throw std::domain_error("solve_problem_o: points must be pairwise distinct");
    if (!(in.t > 0.0 && in.t < 1.0)) throw std::invalid_argument("solve_problem_o: need t in (0, 1)");

    const double psi_bend = oriented_angle(in.b - in.g, in.g - in.a).radians;
    if (!(psi_bend > 0.0 && psi_bend < kPi))
        throw std::domain_error("solve_problem_o: bend angle must lie in (0, pi)");

    const Vec u = in.g - in.a;
    const double l_a = norm(u);
    if (!(dist(in.b, in.g) > (1.0 - in.t) * l_a))
        throw std::domain_error("solve_problem_o: apex too close to b");

    const double nn = static_cast<double>(in.n);
    const double alpha = psi_bend / nn;
    const double lambda =
        2.0 * (1.0 - in.t) * std::cos(0.5 * psi_bend) * std::sin(0.5 * alpha) / std::sin(0.5 * (psi_bend - alpha));

    std::vector<Point> out;
    out.reserve(in.n - 1);
    Vec acc{0.0, 0.0};
    const Point base = in.a + in.t * u;
    for (std::size_t k = 2; k <= in.n; ++k) {
        acc = acc + apply(rotation_matrix(static_cast<double>(k - 1) * alpha), u);
        out.push_back(base + lambda * acc);
    }
    return out;
}

Polyline construct_polyline(Point a, Point b, std::size_t n, double phi, Point b1) {
    if (!finite(a) || !finite(b) || !finite(b1)) throw std::domain_error("construct_polyline: non-finite input");
    if (n < 1) throw std::invalid_argument("construct_polyline: need n >= 1");
    if (!(phi > 0.0) || !(static_cast<double>(n) * phi < kPi))
        throw std::invalid_argument("construct_polyline: need 0 < n*phi < pi");
    const double tol = coincide_tol(a, b);
    if (dist(a, b) <= tol) throw std::domain_error("construct_polyline: coincident endpoints");
    if (dist(b1, a) <= tol || dist(b1, b) <= tol)
        throw std::domain_error("construct_polyline: start vertex coincides with an endpoint");

    const double reach = static_cast<double>(n) * phi;
    if (n == 1) {
        if (!region_contains({a, b, phi}, b1, Closure::closed))
            throw std::domain_error("construct_polyline: start vertex outside the reachable set");
        return Polyline{{a, b1, b}};
    }

    const LineSide side = side_of_line(a, b, b1);
    std::vector<Point> interior;
    if (side == LineSide::OnLine) {
        const Vec ab = b - a;
        const double along = dot(b1 - a, ab) / dot(ab, ab);
        if (!(along > 0.0 && along < 1.0))
            throw std::domain_error("construct_polyline: collinear start outside the open chord");
        interior = case_on_chord(a, b, n, phi, b1);
    } else {
        if (!region_contains({a, b, reach}, b1, Closure::open))
            throw std::domain_error("construct_polyline: start vertex outside the reachable set");
        if (side == LineSide::StrictRight) {
            interior = case_off_chord(a, b, n, phi, b1);
        } else {
            interior = case_off_chord(a, b, n, phi, reflect_across(a, b, b1));
            for (Point& p : interior) p = reflect_across(a, b, p);
        }
    }

    Polyline out;
    out.vertices.reserve(n + 2);
    out.vertices.push_back(a);
    out.vertices.insert(out.vertices.end(), interior.begin(), interior.end());
    out.vertices.push_back(b);
    return out;
}

ValidationReport validate_polyline(const Polyline& p, double phi, double tol) {
    ValidationReport rep;
    const std::size_t m = p.vertices.size();
    if (m < 2) throw std::invalid_argument("validate_polyline: need at least two vertices");

    bool edges_ok = true;
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (is_zero(p.vertices[i + 1] - p.vertices[i])) edges_ok = false;

    if (edges_ok) {
        for (std::size_t i = 1; i + 1 < m; ++i) {
            const double t = turn_angle(p.vertices[i - 1], p.vertices[i], p.vertices[i + 1]).radians;
            rep.turn_angles.push_back(t);
            rep.max_abs_turn = std::max(rep.max_abs_turn, std::abs(t));
            if (std::abs(t) <= tol) rep.zero_turn_indices.push_back(i);
        }
    }

    rep.min_pair_separation = HUGE_VAL;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            rep.min_pair_separation = std::min(rep.min_pair_separation, dist(p.vertices[i], p.vertices[j]));

    rep.ok = edges_ok && rep.max_abs_turn <= phi + tol;
    return rep;
}

bool vertex_region_check(const Polyline& p, double phi, double tol) {
    const std::size_t m = p.vertices.size();
    if (m < 3) return true;
    const std::size_t n = m - 2;
    const TurnRegion region{p.vertices.front(), p.vertices.back(), static_cast<double>(n) * phi};
    for (std::size_t i = 1; i + 1 < m; ++i)
        if (!region_contains(region, p.vertices[i], Closure::closed, tol)) return false;
    for (std::size_t i = 1; i + 1 < m; ++i)
        for (std::size_t j = i + 1; j + 1 < m; ++j)
            if (p.vertices[i] == p.vertices[j]) return false;
    return true;
}

}  // namespace turnpath
