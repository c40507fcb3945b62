#include "turnpath/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "turnpath/regions.hpp"

namespace turnpath {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_cost(const CostModel& cost) {
    if (!(cost.length_weight >= 0.0) || !std::isfinite(cost.length_weight))
        throw std::invalid_argument("cost: length_weight must be finite and nonnegative");
    if (!(cost.turn_weight >= 0.0) || !std::isfinite(cost.turn_weight))
        throw std::invalid_argument("cost: turn_weight must be finite and nonnegative");
}

// level-indexed DP over (prev2, prev1) lattice states; ctg(level, p2, p1) is
// the cost of the turn at vertex `level` (= p1, reached from p2) plus
// everything downstream of it, including the closing edge into b
struct DpSolver {
    Point a, b;
    std::size_t n;
    double phi;
    double tol;
    bool strict;
    const CostModel* cost;
    const std::vector<Point>* pts;
    std::uint64_t examined = 0;
    std::vector<std::unordered_map<std::uint64_t, double>> memo;

    DpSolver(Point a_, Point b_, std::size_t n_, double phi_, double tol_, bool strict_, const CostModel& c,
             const std::vector<Point>& p)
        : a(a_), b(b_), n(n_), phi(phi_), tol(tol_), strict(strict_), cost(&c), pts(&p) {
        memo.resize(n + 1);
    }

    // cost of the turn at cur, or infinity when the transition is inadmissible
    double turn_piece(Point prev, Point cur, Point next) {
        ++examined;
        if (next == cur || cur == prev) return HUGE_VAL;
        const double m = std::abs(turn_angle(prev, cur, next).radians);
        if (m > phi + tol) return HUGE_VAL;
        if (strict && m <= tol) return HUGE_VAL;
        return cost->turn_cost_value(m);
    }

    double ctg(std::size_t level, std::size_t p2i, std::size_t p1i) {
        const std::uint64_t key =
            static_cast<std::uint64_t>(p2i) * pts->size() + static_cast<std::uint64_t>(p1i);
        auto& table = memo[level];
        if (const auto it = table.find(key); it != table.end()) return it->second;

        const Point p2 = (*pts)[p2i];
        const Point p1 = (*pts)[p1i];
        double best = HUGE_VAL;
        if (level == n) {
            const double t = turn_piece(p2, p1, b);
            if (t != HUGE_VAL) best = t + cost->length_weight * dist(b, p1);
        } else {
            for (std::size_t c = 0; c < pts->size(); ++c) {
                const double t = turn_piece(p2, p1, (*pts)[c]);
                if (t == HUGE_VAL) continue;
                const double down = ctg(level + 1, p1i, c);
                if (down == HUGE_VAL) continue;
                best = std::min(best, t + cost->length_weight * dist((*pts)[c], p1) +
                                          cost->surcharge_value((*pts)[c]) + down);
            }
        }
        table.emplace(key, best);
        return best;
    }
};

}  // namespace

double objective(const CostModel& cost, Point a, Point b, const TurnSequence& seq) {
    std::vector<Point> v;
    v.reserve(seq.points.size() + 2);
    v.push_back(a);
    v.insert(v.end(), seq.points.begin(), seq.points.end());
    v.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (is_zero(v[i + 1] - v[i])) throw std::domain_error("objective: degenerate edge");
        total += cost.length_weight * dist(v[i], v[i + 1]);
    }
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        total += cost.turn_cost_value(std::abs(turn_angle(v[i - 1], v[i], v[i + 1]).radians));
        total += cost.surcharge_value(v[i]);
    }
    return total;
}

Solution solve_discrete(Point a, Point b, std::size_t n, double phi, const GridSpec& grid, const CostModel& cost,
                        bool strict_turns, double tol) {
    const auto start = Clock::now();
    require_cost(cost);
    Solution sol;
    sol.tau = grid.tau;

    if (!cost.separable) {
        const DiscreteSequenceSet set = enumerate_sequences(a, b, n, phi, grid, 1, {}, strict_turns, tol);
        sol.candidates_examined = set.sequences.size();
        // the set arrives in lexicographic order, so the first strict minimum
        // is already the canonical tie-break winner
        for (const TurnSequence& seq : set.sequences) {
            const double val = objective(cost, a, b, seq);
            if (!sol.found || val < sol.objective) {
                sol.sequence = seq;
                sol.objective = val;
                sol.found = true;
            }
        }
        sol.wall_seconds = seconds_since(start);
        return sol;
    }

    if (!finite(a) || !finite(b) || a == b) throw std::domain_error("solve_discrete: bad endpoints");
    if (n < 1) throw std::invalid_argument("solve_discrete: need n >= 1");
    if (!(phi > 0.0 && static_cast<double>(n) * phi < kPi))
        throw std::invalid_argument("solve_discrete: need 0 < n*phi < pi");

    const std::vector<Point> pts = grid_points(grid);
    DpSolver dp(a, b, n, phi, tol, strict_turns, cost, pts);

    auto head_cost = [&](Point b1) {
        return cost.length_weight * dist(b1, a) + cost.surcharge_value(b1);
    };

    double best = HUGE_VAL;
    std::size_t best_first = pts.size();
    for (std::size_t c1 = 0; c1 < pts.size(); ++c1) {
        const Point b1 = pts[c1];
        if (b1 == a) continue;
        double val;
        if (n == 1) {
            const double t = dp.turn_piece(a, b1, b);
            val = (t == HUGE_VAL) ? HUGE_VAL : head_cost(b1) + t + cost.length_weight * dist(b, b1);
        } else {
            double inner = HUGE_VAL;
            for (std::size_t c2 = 0; c2 < pts.size(); ++c2) {
                const double t = dp.turn_piece(a, b1, pts[c2]);
                if (t == HUGE_VAL) continue;
                const double down = dp.ctg(2, c1, c2);
                if (down == HUGE_VAL) continue;
                inner = std::min(inner, t + cost.length_weight * dist(pts[c2], b1) +
                                            cost.surcharge_value(pts[c2]) + down);
            }
            val = (inner == HUGE_VAL) ? HUGE_VAL : head_cost(b1) + inner;
        }
        if (val < best) {
            best = val;
            best_first = c1;
        }
    }

    sol.candidates_examined = dp.examined;
    if (best == HUGE_VAL) {
        sol.wall_seconds = seconds_since(start);
        return sol;
    }

    // forward reconstruction; every candidate total below reproduces the exact
    // arithmetic of the scan above, so comparing against the memoized minima
    // needs no tolerance, and taking the first strict minimum in lattice order
    // yields the lexicographically smallest optimal sequence
    std::vector<std::size_t> chain{best_first};
    std::size_t p2i = best_first, p1i = best_first;
    for (std::size_t level = 2; level <= n; ++level) {
        const Point prev2 = (level == 2) ? a : pts[p2i];
        double best_tot = HUGE_VAL;
        std::size_t best_c = pts.size();
        for (std::size_t c = 0; c < pts.size(); ++c) {
            const double t = dp.turn_piece(prev2, pts[p1i], pts[c]);
            if (t == HUGE_VAL) continue;
            const double down = dp.ctg(level, p1i, c);
            if (down == HUGE_VAL) continue;
            const double tot =
                t + cost.length_weight * dist(pts[c], pts[p1i]) + cost.surcharge_value(pts[c]) + down;
            if (tot < best_tot) {
                best_tot = tot;
                best_c = c;
            }
        }
        if (best_c == pts.size()) throw std::logic_error("solve_discrete: reconstruction lost the optimum");
        chain.push_back(best_c);
        p2i = p1i;
        p1i = best_c;
    }

    sol.sequence.points.reserve(chain.size());
    for (const std::size_t idx : chain) sol.sequence.points.push_back(pts[idx]);
    sol.objective = objective(cost, a, b, sol.sequence);
    sol.found = true;
    sol.candidates_examined = dp.examined;
    sol.wall_seconds = seconds_since(start);
    return sol;
}

double sequence_distance(const TurnSequence& x, const TurnSequence& y) {
    if (x.points.size() != y.points.size())
        throw std::invalid_argument("sequence_distance: length mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < x.points.size(); ++i)
        best = std::max(best, sup_dist(x.points[i], y.points[i]));
    return best;
}

double point_to_set_distance(const TurnSequence& seq, const DiscreteSequenceSet& set) {
    if (set.sequences.empty()) throw std::invalid_argument("point_to_set_distance: empty set");
    double best = HUGE_VAL;
    for (const TurnSequence& cand : set.sequences) best = std::min(best, sequence_distance(seq, cand));
    return best;
}

double directed_deviation(const DiscreteSequenceSet& x, const DiscreteSequenceSet& y) {
    if (y.sequences.empty()) throw std::invalid_argument("directed_deviation: empty target set");
    double worst = 0.0;
    for (const TurnSequence& seq : x.sequences) worst = std::max(worst, point_to_set_distance(seq, y));
    return worst;
}

double hausdorff(const DiscreteSequenceSet& x, const DiscreteSequenceSet& y) {
    if (x.sequences.empty() || y.sequences.empty()) throw std::invalid_argument("hausdorff: empty set");
    return std::max(directed_deviation(x, y), directed_deviation(y, x));
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// open-addressed index of sequences by the lattice cell of their coordinate
// vector; buckets chain the members of one exact cell, so lookups stay exact
// across hash collisions
struct CellIndex {
    std::size_t dims = 0;
    double cell = 1.0;
    std::size_t mask = 0;
    std::vector<std::int64_t> slot_hash;
    std::vector<std::int32_t> slot_head;
    std::vector<std::int32_t> chain_next;
    std::vector<long long> cells;  // member-major, dims entries each
    const std::vector<TurnSequence>* members = nullptr;

    void cells_of(const TurnSequence& s, long long* out) const {
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            out[2 * i] = static_cast<long long>(std::floor(s.points[i].c1 / cell));
            out[2 * i + 1] = static_cast<long long>(std::floor(s.points[i].c2 / cell));
        }
    }

    std::uint64_t hash_cells(const long long* c) const {
        std::uint64_t h = 0x243f6a8885a308d3ull;
        for (std::size_t i = 0; i < dims; ++i) h = mix64(h ^ static_cast<std::uint64_t>(c[i]));
        return h;
    }

    void build(const std::vector<TurnSequence>& ys, double cell_size) {
        members = &ys;
        cell = cell_size;
        dims = ys.front().points.size() * 2;
        std::size_t table = 16;
        while (table < 2 * ys.size()) table <<= 1;
        mask = table - 1;
        slot_hash.assign(table, 0);
        slot_head.assign(table, -1);
        chain_next.assign(ys.size(), -1);
        cells.resize(ys.size() * dims);
        for (std::size_t i = 0; i < ys.size(); ++i) {
            long long* mc = cells.data() + i * dims;
            cells_of(ys[i], mc);
            const std::uint64_t h = hash_cells(mc);
            std::size_t slot = h & mask;
            while (slot_head[slot] != -1 && static_cast<std::uint64_t>(slot_hash[slot]) != h)
                slot = (slot + 1) & mask;
            if (slot_head[slot] == -1) slot_hash[slot] = static_cast<std::int64_t>(h);
            chain_next[i] = slot_head[slot];
            slot_head[slot] = static_cast<std::int32_t>(i);
        }
    }

    void scan_cell(const TurnSequence& x, const long long* probe, double& best) const {
        const std::uint64_t h = hash_cells(probe);
        std::size_t slot = h & mask;
        while (slot_head[slot] != -1 && static_cast<std::uint64_t>(slot_hash[slot]) != h)
            slot = (slot + 1) & mask;
        for (std::int32_t i = slot_head[slot]; i != -1; i = chain_next[i]) {
            const long long* mc = cells.data() + static_cast<std::size_t>(i) * dims;
            bool same = true;
            for (std::size_t d = 0; d < dims && same; ++d) same = (mc[d] == probe[d]);
            if (same)
                best = std::min(best, sequence_distance(x, (*members)[static_cast<std::size_t>(i)]));
        }
    }

    double nearest(const TurnSequence& x) const {
        std::vector<long long> base(dims), off(dims), probe(dims);
        cells_of(x, base.data());
        double best = HUGE_VAL;
        for (long long r = 0; r <= 8; ++r) {
            // visit the Chebyshev shell at radius r around the home cell; any
            // member beyond it differs by at least r + 1 cells in some
            // coordinate and hence by more than r * cell in value, which makes
            // the stop test after the shell exact
            std::fill(off.begin(), off.end(), -r);
            for (;;) {
                long long cheb = 0;
                for (std::size_t d = 0; d < dims; ++d) cheb = std::max(cheb, std::llabs(off[d]));
                if (cheb == r) {
                    for (std::size_t d = 0; d < dims; ++d) probe[d] = base[d] + off[d];
                    scan_cell(x, probe.data(), best);
                }
                std::size_t d = 0;
                while (d < dims && ++off[d] > r) off[d++] = -r;
                if (d == dims) break;
            }
            if (best <= cell * static_cast<double>(r)) return best;
        }
        for (const TurnSequence& y : *members) best = std::min(best, sequence_distance(x, y));
        return best;
    }
};

double directed_fast(const std::vector<TurnSequence>& xs, const std::vector<TurnSequence>& ys, double cell) {
    if (xs.empty()) return 0.0;
    if (ys.size() <= 64) {
        double worst = 0.0;
        for (const TurnSequence& x : xs) {
            double best = HUGE_VAL;
            for (const TurnSequence& y : ys) best = std::min(best, sequence_distance(x, y));
            worst = std::max(worst, best);
        }
        return worst;
    }
    CellIndex index;
    index.build(ys, cell);
    double worst = 0.0;
    for (const TurnSequence& x : xs) worst = std::max(worst, index.nearest(x));
    return worst;
}

}  // namespace

ConvergenceReport convergence_study(Point a, Point b, std::size_t n, double phi, const CostModel& cost,
                                    const std::vector<double>& taus, unsigned workers) {
    require_cost(cost);
    if (taus.empty()) throw std::invalid_argument("convergence_study: no step sizes");
    for (const double tau : taus)
        if (!(tau > 0.0) || !std::isfinite(tau))
            throw std::invalid_argument("convergence_study: steps must be positive");
    for (std::size_t i = 0; i + 1 < taus.size(); ++i) {
        if (std::abs(taus[i + 1] - 0.5 * taus[i]) > 1e-12 * taus[i])
            throw std::invalid_argument("convergence_study: each step must halve the previous one");
    }

    // one box for every level, so the lattices are nested and the feasible
    // sets only grow as tau shrinks; the closed reachable set already bounds
    // every admissible vertex, so the box needs no margin
    const Rect box = region_bounding_box({a, b, static_cast<double>(n) * phi});
    const GridSpec base{box.lo, box.hi, 0.0};

    std::vector<DiscreteSequenceSet> sets;
    sets.reserve(taus.size());
    ConvergenceReport report;
    const double narrow = std::min(box.hi.c1 - box.lo.c1, box.hi.c2 - box.lo.c2);
    for (const double tau : taus) {
        GridSpec g = base;
        g.tau = tau;
        if (tau > narrow) {
            // a step wider than the box holds not a single lattice point; that
            // level is empty rather than a caller error, so flag it and sweep on
            DiscreteSequenceSet none;
            none.a = a;
            none.b = b;
            none.n = n;
            none.phi = phi;
            none.grid = g;
            sets.push_back(std::move(none));
        } else {
            sets.push_back(enumerate_sequences(a, b, n, phi, g, workers));
        }
        ConvergenceRow row;
        row.tau = tau;
        row.set_size = sets.back().sequences.size();
        row.ok = !sets.back().sequences.empty();
        row.min_objective = HUGE_VAL;
        for (const TurnSequence& seq : sets.back().sequences)
            row.min_objective = std::min(row.min_objective, objective(cost, a, b, seq));
        report.rows.push_back(row);
    }

    const auto& ref = sets.back().sequences;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        auto& row = report.rows[k];
        if (!row.ok || ref.empty()) {
            row.hausdorff_to_reference = HUGE_VAL;
            continue;
        }
        if (k + 1 == sets.size()) {
            row.hausdorff_to_reference = 0.0;
            continue;
        }
        const double cell = 2.0 * std::max(taus[k], taus.back());
        row.hausdorff_to_reference = std::max(directed_fast(sets[k].sequences, ref, cell),
                                              directed_fast(ref, sets[k].sequences, cell));
    }
    return report;
}

}  // namespace turnpath
