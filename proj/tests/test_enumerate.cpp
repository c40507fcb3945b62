#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "turnpath/construct.hpp"
#include "turnpath/enumerate.hpp"
#include "turnpath/regions.hpp"

using namespace turnpath;

namespace {

// exhaustive reference: every n-tuple over the lattice, kept when the full
// polyline passes the defining predicate, emitted in lexicographic order
std::vector<TurnSequence> brute_sequences(Point a, Point b, std::size_t n, double phi, const GridSpec& grid,
                                          const std::function<bool(Point)>& member = {}, bool strict = false) {
    std::vector<Point> pts = grid_points(grid);
    if (member) {
        std::vector<Point> kept;
        for (const Point& p : pts)
            if (member(p)) kept.push_back(p);
        pts = std::move(kept);
    }
    std::vector<TurnSequence> out;
    std::vector<std::size_t> idx(n, 0);
    if (pts.empty()) return out;
    for (;;) {
        TurnSequence seq;
        seq.points.reserve(n);
        for (std::size_t k = 0; k < n; ++k) seq.points.push_back(pts[idx[k]]);
        bool keep = sequence_is_admissible(seq, a, b, phi);
        if (keep && strict) {
            std::vector<Point> v{a};
            v.insert(v.end(), seq.points.begin(), seq.points.end());
            v.push_back(b);
            for (std::size_t i = 1; i + 1 < v.size() && keep; ++i)
                if (std::abs(turn_angle(v[i - 1], v[i], v[i + 1]).radians) <= kAngleTol) keep = false;
        }
        if (keep) out.push_back(std::move(seq));
        std::size_t k = n;
        while (k > 0) {
            if (++idx[k - 1] < pts.size()) break;
            idx[k - 1] = 0;
            --k;
        }
        if (k == 0) return out;
    }
}

void check_same_sequences(const std::vector<TurnSequence>& got, const std::vector<TurnSequence>& want) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        REQUIRE(got[i].points.size() == want[i].points.size());
        for (std::size_t k = 0; k < got[i].points.size(); ++k) {
            CHECK(got[i].points[k] == want[i].points[k]);
        }
    }
}

Vec heading(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct ShrinkInstance {
    TurnSequence w;
    Point a;
    Point b;
    double phi;
    double s;
    double d;
};

// random polyline with turns capped at phi, rescaled so the separation floor
// sits at 0.8 and the diameter bound gives kappa >= 2
ShrinkInstance random_shrink_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> arity(1, 5);
    std::uniform_real_distribution<double> phi_dist(0.2, 0.5 * kPi - 0.05);
    std::uniform_real_distribution<double> mag(0.2, 1.0);
    std::uniform_real_distribution<double> seg(0.5, 2.0);
    std::uniform_real_distribution<double> head(-kPi, kPi);
    std::uniform_int_distribution<int> coin(0, 1);

    for (;;) {
        const std::size_t n = arity(rng);
        const double phi = phi_dist(rng);
        std::vector<Point> v;
        v.push_back({0, 0});
        Vec dir = heading(head(rng));
        v.push_back(v.back() + seg(rng) * dir);
        for (std::size_t i = 0; i < n; ++i) {
            // keep one corner near the cap so the slide has work to do
            const double turn = (i == 0 ? 0.999 : mag(rng)) * phi * (coin(rng) ? 1.0 : -1.0);
            dir = apply(rotation_matrix(turn), dir);
            v.push_back(v.back() + seg(rng) * dir);
        }

        TurnSequence w;
        w.points.assign(v.begin() + 1, v.end() - 1);
        const double raw_sep = separation(w, v.front(), v.back());
        if (raw_sep < 1e-3) continue;  // nearly self-touching, resample

        const double scale = 0.8 / raw_sep;
        for (Point& p : v) p = Point{p.c1 * scale, p.c2 * scale};
        w.points.assign(v.begin() + 1, v.end() - 1);

        double diam = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j) diam = std::max(diam, dist(v[i], v[j]));
        return {w, v.front(), v.back(), phi, 0.8, std::max(diam, 1.6)};
    }
}

}  // namespace

TEST_CASE("grid_points pinned values") {
    const std::vector<Point> nine = grid_points({{0, 0}, {1, 1}, 0.5});
    REQUIRE(nine.size() == 9);
    CHECK(nine[0] == Point{0, 0});
    CHECK(nine[1] == Point{0, 0.5});
    CHECK(nine[2] == Point{0, 1});
    CHECK(nine[3] == Point{0.5, 0});
    CHECK(nine[8] == Point{1, 1});

    const std::vector<Point> four = grid_points({{0, 0}, {1, 1}, 1.0});
    REQUIRE(four.size() == 4);
    CHECK(four[3] == Point{1, 1});

    CHECK_THROWS_AS(grid_points({{0, 0}, {1, 1}, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(grid_points({{0, 0}, {1, 1}, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(grid_points({{1, 0}, {0, 1}, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(grid_points({{0, 0}, {1, HUGE_VAL}, 0.1}), std::domain_error);
}

TEST_CASE("grid_points ordering and lattice anchoring") {
    const GridSpec g{{-1.3, 0.7}, {2.3, 3.1}, 0.6};
    const std::vector<Point> pts = grid_points(g);
    REQUIRE(!pts.empty());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        CHECK(point_less(pts[i - 1], pts[i]));
    }
    for (const Point& p : pts) {
        const double j1 = (p.c1 - g.q.c1) / g.tau;
        const double j2 = (p.c2 - g.q.c2) / g.tau;
        CHECK(std::abs(j1 - std::round(j1)) <= 1e-9);
        CHECK(std::abs(j2 - std::round(j2)) <= 1e-9);
    }
}

TEST_CASE("halving tau keeps every coarse lattice point bit for bit") {
    const GridSpec coarse{{-1.3, 0.7}, {2.3, 3.1}, 0.6};
    GridSpec fine = coarse;
    fine.tau = 0.5 * coarse.tau;
    const std::vector<Point> cp = grid_points(coarse);
    const std::vector<Point> fp = grid_points(fine);
    for (const Point& c : cp) {
        bool found = false;
        for (const Point& f : fp) {
            if (f == c) {
                found = true;
                break;
            }
        }
        CHECK(found);
    }
    CHECK(fp.size() > cp.size());
}

TEST_CASE("sequence_is_admissible pinned behaviors") {
    const Point a{0, -1};
    const Point b{0, 1};
    // straight through the middle: zero turns are allowed by the plain predicate
    CHECK(sequence_is_admissible({{{0, 0}}}, a, b, 0.3));
    // gentle corner within the cap
    CHECK(sequence_is_admissible({{{0.1, 0}}}, a, b, 0.5));
    // same corner with a tighter cap fails
    CHECK_FALSE(sequence_is_admissible({{{0.1, 0}}}, a, b, 0.05));
    // coincident consecutive vertices fail outright
    CHECK_FALSE(sequence_is_admissible({{{0, 0}, {0, 0}}}, a, b, 1.0));
    CHECK_FALSE(sequence_is_admissible({{a}}, a, b, 1.0));
    // a reversal is a turn of pi
    CHECK_FALSE(sequence_is_admissible({{{0, 0}, {0, -0.5}}}, a, b, 1.5));
}

TEST_CASE("admissible_next_region factors the step predicate") {
    const Point a{0, -1};
    const Point b{0, 1};
    const double phi = 0.5;

    CHECK_THROWS_AS(admissible_next_region(0, a, b, 3, phi, {}, {0.2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(admissible_next_region(3, a, b, 3, phi, {}, {0.2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(admissible_next_region(1, a, b, 1, phi, {}, {0.2, 0}), std::invalid_argument);

    // middle level: open reachable set toward b plus the forward cone
    const Point b1{0.3, -0.2};
    const auto mid = admissible_next_region(1, a, b, 3, phi, {}, b1);
    std::mt19937_64 rng(20240830);
    std::uniform_real_distribution<double> xs(-1.5, 1.5);
    for (int k = 0; k < 4000; ++k) {
        const Point c{xs(rng), xs(rng)};
        const bool direct = region_contains({b1, b, 2.0 * phi}, c, Closure::open) &&
                            cone_contains({b1, b1 - a, phi}, c);
        CHECK(mid(c) == direct);
    }

    // last level: closed reachable set, anchored on the stored predecessor
    const Point b2{0.35, 0.3};
    const auto last = admissible_next_region(2, a, b, 3, phi, b1, b2);
    for (int k = 0; k < 4000; ++k) {
        const Point c{xs(rng), xs(rng)};
        const bool direct = region_contains({b2, b, phi}, c, Closure::closed) &&
                            cone_contains({b2, b2 - b1, phi}, c) &&
                            dist(c, a) > kSideTol * std::max(1.0, dist(a, b));
        CHECK(last(c) == direct);
    }

    // the closed last level never readmits the start point itself
    const Point apex{0.4, -0.5};
    const Point anchor = apex + (apex - a);
    const auto wide = admissible_next_region(1, a, b, 2, 2.6, anchor, apex);
    CHECK_FALSE(wide(a));
    CHECK(wide({0.05, -0.97}));
}

TEST_CASE("enumerate_sequences matches the exhaustive reference") {
    // chord endpoints sit exactly on the lattice in the first two instances
    {
        const Point a{0, -1}, b{0, 1};
        const GridSpec g{{-1, -1}, {1, 1}, 0.25};
        check_same_sequences(enumerate_sequences(a, b, 1, 1.2, g).sequences, brute_sequences(a, b, 1, 1.2, g));
    }
    {
        const Point a{0, -1}, b{0, 1};
        const GridSpec g{{-1, -1}, {1, 1}, 0.5};
        check_same_sequences(enumerate_sequences(a, b, 2, 0.7, g).sequences, brute_sequences(a, b, 2, 0.7, g));
    }
    {
        const Point a{-1.2, 0.3}, b{1.1, 0.7};
        const GridSpec g{{-1, -0.8}, {1.4, 1.6}, 0.3};
        check_same_sequences(enumerate_sequences(a, b, 2, 0.5, g).sequences, brute_sequences(a, b, 2, 0.5, g));
    }
    {
        const Point a{0, -1}, b{0, 1};
        const GridSpec g{{-0.9, -0.9}, {0.9, 0.9}, 0.3};
        check_same_sequences(enumerate_sequences(a, b, 3, 0.4, g).sequences, brute_sequences(a, b, 3, 0.4, g));
    }

    std::mt19937_64 rng(20240831);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    std::uniform_real_distribution<double> tau(0.28, 0.45);
    std::uniform_real_distribution<double> phi_dist(0.3, 0.8);
    int tested = 0;
    while (tested < 6) {
        const Point a{coord(rng), coord(rng)};
        const Point b{coord(rng), coord(rng)};
        if (dist(a, b) < 1.0) continue;
        const Point mid = 0.5 * (a + b);
        const GridSpec g{mid + Point{-1.4, -1.4}, mid + Point{1.4, 1.4}, tau(rng)};
        const double phi = phi_dist(rng);
        check_same_sequences(enumerate_sequences(a, b, 2, phi, g).sequences, brute_sequences(a, b, 2, phi, g));
        ++tested;
    }
}

TEST_CASE("enumerate_sequences argument guards") {
    const GridSpec g{{-1, -1}, {1, 1}, 0.5};
    CHECK_THROWS_AS(enumerate_sequences({0, -1}, {0, -1}, 1, 0.5, g), std::domain_error);
    CHECK_THROWS_AS(enumerate_sequences({0, -1}, {0, 1}, 0, 0.5, g), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sequences({0, -1}, {0, 1}, 7, 0.5, g), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sequences({0, -1}, {0, 1}, 1, 0.0, g), std::invalid_argument);
}

TEST_CASE("enumerate_sequences is identical for any worker count") {
    const Point a{0, -1}, b{0, 1};
    const GridSpec g{{-0.9, -0.9}, {0.9, 0.9}, 0.3};
    const auto base = enumerate_sequences(a, b, 3, 0.4, g, 1);
    const auto two = enumerate_sequences(a, b, 3, 0.4, g, 2);
    const auto four = enumerate_sequences(a, b, 3, 0.4, g, 4);
    check_same_sequences(two.sequences, base.sequences);
    check_same_sequences(four.sequences, base.sequences);
    CHECK(base.n == 3);
    CHECK(base.a == a);
    CHECK(base.grid.tau == g.tau);
}

TEST_CASE("membership hook restricts the lattice") {
    const Point a{0, -1}, b{0, 1};
    const GridSpec g{{-1, -1}, {1, 1}, 0.25};
    const auto disk = [](Point p) { return dist(p, {0.1, 0.0}) <= 0.9; };
    const auto got = enumerate_sequences(a, b, 2, 0.7, g, 1, disk);
    check_same_sequences(got.sequences, brute_sequences(a, b, 2, 0.7, g, disk));
    for (const TurnSequence& seq : got.sequences)
        for (const Point& p : seq.points) CHECK(disk(p));
}

TEST_CASE("strict turn filtering drops flat corners") {
    const Point a{0, -1}, b{0, 1};
    const GridSpec g{{-1, -1}, {1, 1}, 0.5};
    const auto strict = enumerate_sequences(a, b, 2, 0.7, g, 1, {}, true);
    const auto plain = enumerate_sequences(a, b, 2, 0.7, g, 1, {}, false);
    check_same_sequences(strict.sequences, brute_sequences(a, b, 2, 0.7, g, {}, true));
    CHECK(strict.sequences.size() < plain.sequences.size());
    for (const TurnSequence& seq : strict.sequences) {
        std::vector<Point> v{a};
        v.insert(v.end(), seq.points.begin(), seq.points.end());
        v.push_back(b);
        for (std::size_t i = 1; i + 1 < v.size(); ++i)
            CHECK(std::abs(turn_angle(v[i - 1], v[i], v[i + 1]).radians) > kAngleTol);
    }
}

TEST_CASE("separation pinned values") {
    const Point a{0, -1}, b{0, 1};
    CHECK(separation({{{1, 0}}}, a, b) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(separation({}, a, b) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(separation({{{0, 0}, {0, 0}}}, a, b) == 0.0);
}

TEST_CASE("shrink_constants pinned values") {
    const ShrinkParams p = shrink_constants(1.0, 1.0, kPi / 4, 1);
    CHECK(p.kappa == 1.0);
    CHECK(p.theta == 6.0);
    CHECK(p.omega == doctest::Approx(std::sin(kPi / 4) / 16.64).epsilon(1e-12));

    // once the diameter ratio dominates, theta follows kappa / 0.17
    const ShrinkParams q = shrink_constants(0.5, 2.0, 0.3, 1);
    CHECK(q.kappa == 4.0);
    CHECK(q.theta == doctest::Approx(4.0 / 0.17).epsilon(1e-12));

    CHECK_THROWS_AS(shrink_constants(0.0, 1.0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(shrink_constants(1.0, 0.5, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(shrink_constants(1.0, 1.0, 1.6, 1), std::invalid_argument);
    CHECK_THROWS_AS(shrink_constants(1.0, 1.0, 0.5, 0), std::invalid_argument);
}

TEST_CASE("shrink_map argument guards") {
    const ShrinkInstance inst{{{{0.0, 0.8}}}, {-0.8, 0}, {0.8, 0}, 0.5, 0.8, 1.6};
    const ShrinkParams p = shrink_constants(inst.s, inst.d, inst.phi, 1);
    CHECK_THROWS_AS(shrink_map(inst.w, inst.a, inst.b, 0.0, p, inst.phi), std::invalid_argument);
    CHECK_THROWS_AS(shrink_map(inst.w, inst.a, inst.b, inst.s / p.theta * 1.01, p, inst.phi),
                    std::invalid_argument);
    CHECK_THROWS_AS(shrink_map(inst.w, inst.a, inst.b, 0.01, p, 1.6), std::invalid_argument);
    CHECK_THROWS_AS(shrink_map({}, inst.a, inst.b, 0.01, p, inst.phi), std::invalid_argument);
    const TurnSequence dup{{{0.0, 0.8}, {0.0, 0.8}}};
    CHECK_THROWS_AS(shrink_map(dup, inst.a, inst.b, 0.01, p, inst.phi), std::domain_error);
}

TEST_CASE("shrink_map trades a little separation for a strict turn margin") {
    std::mt19937_64 rng(20240832);
    for (int k = 0; k < 100; ++k) {
        const ShrinkInstance inst = random_shrink_instance(rng);
        const std::size_t n = inst.w.points.size();
        const ShrinkParams p = shrink_constants(inst.s, inst.d, inst.phi, n);
        for (const double frac : {1.0, 0.5, 0.25}) {
            const double t = frac * inst.s / p.theta;
            const TurnSequence out = shrink_map(inst.w, inst.a, inst.b, t, p, inst.phi);
            REQUIRE(out.points.size() == n);

            // no vertex moves farther than half the shrink budget
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(dist(out.points[i], inst.w.points[i]) <= t * p.kappa / 2.0 + 1e-12);
            }

            // separation floor drops by at most kappa * t
            CHECK(separation(out, inst.a, inst.b) >= inst.s - t * p.kappa - 1e-9);

            // every turn now clears the cap by the advertised margin
            std::vector<Point> v{inst.a};
            v.insert(v.end(), out.points.begin(), out.points.end());
            v.push_back(inst.b);
            for (std::size_t i = 1; i + 1 < v.size(); ++i) {
                const double turn = turn_angle(v[i - 1], v[i], v[i + 1]).radians;
                CHECK(std::abs(turn) <= inst.phi - p.omega * t + 1e-9);
            }
        }
    }
}
