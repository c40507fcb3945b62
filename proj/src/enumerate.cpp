#include "turnpath/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "turnpath/regions.hpp"

namespace turnpath {

namespace {

void require_grid(const GridSpec& g) {
    if (!finite(g.q) || !finite(g.p) || !std::isfinite(g.tau)) throw std::domain_error("grid: non-finite spec");
    if (!(g.q.c1 < g.p.c1 && g.q.c2 < g.p.c2)) throw std::invalid_argument("grid: need q < p componentwise");
    if (!(g.tau > 0.0)) throw std::invalid_argument("grid: need tau > 0");
    if (g.tau > std::min(g.p.c1 - g.q.c1, g.p.c2 - g.q.c2))
        throw std::invalid_argument("grid: tau exceeds the box");
}

// inclusive reachable-set test used only for pruning: any tuple admissible at
// tolerance tol survives (membership of the tail start follows from the
// turn bounds with slack growing by one tol per remaining vertex); points at
// the chord endpoints are deferred to the final exact filter
bool prune_pass(Point a, Point b, Point c, double bound, double slack) {
    const double guard = kSideTol * std::max(1.0, dist(a, b));
    // a tuple can walk through the chord endpoints; once the pruning chord
    // degenerates there is nothing to measure against, so keep the candidate
    if (dist(a, b) <= guard) return true;
    if (dist(c, a) <= guard || dist(c, b) <= guard) return true;
    if (bound >= kPi) return true;
    return std::abs(psi(to_canonical(a, b, c)).radians) <= bound + slack;
}

struct Walker {
    Point a, b;
    std::size_t n;
    double phi;
    double tol;
    bool strict;
    const std::vector<Point>* pts;

    bool final_ok(const TurnSequence& seq) const {
        if (!sequence_is_admissible(seq, a, b, phi, tol)) return false;
        if (!strict) return true;
        std::vector<Point> v;
        v.reserve(n + 2);
        v.push_back(a);
        v.insert(v.end(), seq.points.begin(), seq.points.end());
        v.push_back(b);
        for (std::size_t i = 1; i + 1 < v.size(); ++i)
            if (std::abs(turn_angle(v[i - 1], v[i], v[i + 1]).radians) <= tol) return false;
        return true;
    }

    void extend(std::vector<Point>& tuple, Point prev2, Point prev1, std::vector<TurnSequence>& out) const {
        const std::size_t level = tuple.size() + 1;  // index of the vertex being placed
        const double bound = static_cast<double>(n - level + 1) * phi;
        const double slack = static_cast<double>(n - level + 2) * tol;
        for (const Point& c : *pts) {
            if (c == prev1) continue;
            if (std::abs(turn_angle(prev2, prev1, c).radians) > phi + 2.0 * tol) continue;
            if (!prune_pass(prev1, b, c, bound, slack)) continue;
            tuple.push_back(c);
            if (level == n) {
                TurnSequence seq{tuple};
                if (final_ok(seq)) out.push_back(std::move(seq));
            } else {
                extend(tuple, prev1, c, out);
            }
            tuple.pop_back();
        }
    }

    std::vector<TurnSequence> from_first(Point b1) const {
        std::vector<TurnSequence> out;
        std::vector<Point> tuple{b1};
        if (n == 1) {
            TurnSequence seq{tuple};
            if (final_ok(seq)) out.push_back(std::move(seq));
        } else if (!(b1 == a)) {  // a leading vertex on top of a has no first edge
            extend(tuple, a, b1, out);
        }
        return out;
    }
};

}  // namespace

std::vector<Point> grid_points(const GridSpec& g) {
    require_grid(g);
    const double eps = g.tau * 1e-9;
    std::vector<Point> out;
    for (std::size_t j1 = 0;; ++j1) {
        const double x = g.q.c1 + static_cast<double>(j1) * g.tau;
        if (x > g.p.c1 + eps) break;
        for (std::size_t j2 = 0;; ++j2) {
            const double y = g.q.c2 + static_cast<double>(j2) * g.tau;
            if (y > g.p.c2 + eps) break;
            out.push_back({x, y});
        }
    }
    return out;
}

bool sequence_is_admissible(const TurnSequence& seq, Point a, Point b, double phi, double tol) {
    std::vector<Point> v;
    v.reserve(seq.points.size() + 2);
    v.push_back(a);
    v.insert(v.end(), seq.points.begin(), seq.points.end());
    v.push_back(b);
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (is_zero(v[i + 1] - v[i])) return false;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (std::abs(turn_angle(v[i - 1], v[i], v[i + 1]).radians) > phi + tol) return false;
    return true;
}

std::function<bool(Point)> admissible_next_region(std::size_t i, Point a, Point b, std::size_t n, double phi,
                                                  std::optional<Point> prev2, Point prev1, double tol) {
    if (i < 1 || i >= n) throw std::invalid_argument("admissible_next_region: need 1 <= i <= n - 1");
    const Point anchor = prev2.value_or(a);
    const bool last = (i == n - 1);
    const double bound = static_cast<double>(n - i) * phi;
    return [=](Point c) {
        const TurnRegion region{prev1, b, bound};
        if (!region_contains(region, c, last ? Closure::closed : Closure::open, tol)) return false;
        if (last && (dist(c, a) <= kSideTol * std::max(1.0, dist(a, b)))) return false;
        return cone_contains({prev1, prev1 - anchor, phi}, c, tol);
    };
}

DiscreteSequenceSet enumerate_sequences(Point a, Point b, std::size_t n, double phi, const GridSpec& grid,
                                        unsigned workers, const std::function<bool(Point)>& member,
                                        bool strict_turns, double tol) {
    if (!finite(a) || !finite(b) || a == b) throw std::domain_error("enumerate_sequences: bad endpoints");
    if (n < 1) throw std::invalid_argument("enumerate_sequences: need n >= 1");
    if (!(phi > 0.0 && static_cast<double>(n) * phi < kPi))
        throw std::invalid_argument("enumerate_sequences: need 0 < n*phi < pi");
    if (workers < 1) workers = 1;

    std::vector<Point> pts = grid_points(grid);
    if (member) {
        std::vector<Point> kept;
        kept.reserve(pts.size());
        for (const Point& p : pts)
            if (member(p)) kept.push_back(p);
        pts = std::move(kept);
    }

    const double first_bound = static_cast<double>(n) * phi;
    const double first_slack = static_cast<double>(n + 1) * tol;
    std::vector<Point> first;
    first.reserve(pts.size());
    for (const Point& c : pts)
        if (prune_pass(a, b, c, first_bound, first_slack)) first.push_back(c);

    const Walker walker{a, b, n, phi, tol, strict_turns, &pts};
    std::vector<std::vector<TurnSequence>> slots(first.size());

    if (workers == 1 || first.size() <= 1) {
        for (std::size_t i = 0; i < first.size(); ++i) slots[i] = walker.from_first(first[i]);
    } else {
        std::atomic<std::size_t> cursor{0};
        auto run = [&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= first.size()) return;
                slots[i] = walker.from_first(first[i]);
            }
        };
        std::vector<std::thread> pool;
        const unsigned count = std::min<unsigned>(workers, static_cast<unsigned>(first.size()));
        pool.reserve(count);
        for (unsigned w = 0; w < count; ++w) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }

    DiscreteSequenceSet out;
    out.a = a;
    out.b = b;
    out.n = n;
    out.phi = phi;
    out.grid = grid;
    std::size_t total = 0;
    for (const auto& s : slots) total += s.size();
    out.sequences.reserve(total);
    for (auto& s : slots)
        for (auto& seq : s) out.sequences.push_back(std::move(seq));
    return out;
}

double separation(const TurnSequence& seq, Point a, Point b) {
    std::vector<Point> v;
    v.reserve(seq.points.size() + 2);
    v.push_back(a);
    v.insert(v.end(), seq.points.begin(), seq.points.end());
    v.push_back(b);
    double best = HUGE_VAL;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) best = std::min(best, dist(v[i], v[j]));
    return best;
}

ShrinkParams shrink_constants(double s, double d, double phi, std::size_t n) {
    if (!(s > 0.0) || !(d >= s)) throw std::invalid_argument("shrink_constants: need 0 < s <= d");
    if (!(phi > 0.0 && phi < 0.5 * kPi)) throw std::invalid_argument("shrink_constants: need phi in (0, pi/2)");
    if (n < 1) throw std::invalid_argument("shrink_constants: need n >= 1");
    ShrinkParams p;
    p.s = s;
    p.d = d;
    p.kappa = d / s;
    const double nk = static_cast<double>(n) + p.kappa;
    p.omega = std::sin(phi) / std::max(2.02 * nk * nk, 8.32 * p.kappa * (p.kappa + 1.0));
    p.theta = std::max({5.0, 3.0 * nk, p.kappa / 0.17});
    return p;
}

TurnSequence shrink_map(const TurnSequence& w, Point a, Point b, double t, const ShrinkParams& params, double phi) {
    const std::size_t n = w.points.size();
    if (n < 1) throw std::invalid_argument("shrink_map: empty sequence");
    if (!(phi > 0.0 && phi < 0.5 * kPi)) throw std::invalid_argument("shrink_map: need phi in (0, pi/2)");
    if (!(t > 0.0 && t <= params.s / params.theta))
        throw std::invalid_argument("shrink_map: need t in (0, s/theta]");

    std::vector<Point> v;
    v.reserve(n + 2);
    v.push_back(a);
    v.insert(v.end(), w.points.begin(), w.points.end());
    v.push_back(b);

    std::vector<double> k(n + 2, 0.0);
    for (std::size_t i = 1; i <= n + 1; ++i) {
        const double len = dist(v[i], v[i - 1]);
        if (len == 0.0) throw std::domain_error("shrink_map: coincident consecutive vertices");
        k[i] = len / params.s;
    }

    std::vector<double> alpha(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) alpha[i] = turn_angle(v[i - 1], v[i], v[i + 1]).radians;

    const double target = phi - params.omega * t;

    // the slide rate restarts at 1 at the head of every run of vertices that
    // still exceed the target; vertices that a neighbour's slide would push
    // past the target are folded into the runs until the result settles
    std::vector<bool> moved(n + 1, false);
    for (std::size_t i = 1; i <= n; ++i) moved[i] = std::abs(alpha[i]) > target;

    std::vector<Point> shifted;
    for (std::size_t round = 0; round <= n + 1; ++round) {
        shifted = v;
        bool in_run = false;
        double prev_rate = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            if (!moved[i]) {
                in_run = false;
                continue;
            }
            const double rate = in_run ? k[i] * prev_rate / (prev_rate + k[i - 1]) : 1.0;
            shifted[i] = v[i] + (t * rate) * unit(v[i + 1] - v[i]);
            prev_rate = rate;
            in_run = true;
        }

        bool grew = false;
        for (std::size_t i = 1; i <= n; ++i) {
            const double turn = turn_angle(shifted[i - 1], shifted[i], shifted[i + 1]).radians;
            if (std::abs(turn) > target && !moved[i]) {
                moved[i] = true;
                grew = true;
            }
        }
        if (!grew) break;
    }

    TurnSequence out;
    out.points.assign(shifted.begin() + 1, shifted.end() - 1);
    return out;
}

}  // namespace turnpath
