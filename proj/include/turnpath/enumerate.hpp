#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "turnpath/angles.hpp"
#include "turnpath/geometry.hpp"

namespace turnpath {

// axis-aligned lattice anchored at q: points q + (j1 tau, j2 tau) inside [q, p]
struct GridSpec {
    Point q;
    Point p;
    double tau = 0.0;
};

// candidate tuple of interior vertices B^(1..n)
struct TurnSequence {
    std::vector<Point> points;
};

struct DiscreteSequenceSet {
    std::vector<TurnSequence> sequences;
    Point a;
    Point b;
    std::size_t n = 0;
    double phi = 0.0;
    GridSpec grid;
};

struct ShrinkParams {
    double s = 0.0;      // separation floor
    double d = 0.0;      // diameter bound
    double kappa = 0.0;  // d / s
    double omega = 0.0;  // turn-margin rate
    double theta = 0.0;  // admissible t range is (0, s / theta]
};

// lattice points in row-major (c1, c2) order
std::vector<Point> grid_points(const GridSpec& g);

// the defining predicate: the polyline a, seq, b has pairwise-distinct
// consecutive vertices and every turn magnitude at most phi + tol
bool sequence_is_admissible(const TurnSequence& seq, Point a, Point b, double phi, double tol = kAngleTol);

// factor of the product decomposition for the vertex following prev1 at level
// i (prev1 = B^(i), prev2 = B^(i-1), absent means prev2 = a); levels below
// n - 1 use the open reachable set, the last level the closed one minus the
// endpoints; levels past the first intersect with the turn cone at prev1
std::function<bool(Point)> admissible_next_region(std::size_t i, Point a, Point b, std::size_t n, double phi,
                                                  std::optional<Point> prev2, Point prev1, double tol = kAngleTol);

// all admissible tuples over the lattice, in lexicographic (c1, c2) tuple
// order; the optional membership hook restricts lattice points to a custom
// convex domain; output is identical for any worker count
DiscreteSequenceSet enumerate_sequences(Point a, Point b, std::size_t n, double phi, const GridSpec& grid,
                                        unsigned workers = 1, const std::function<bool(Point)>& member = {},
                                        bool strict_turns = false, double tol = kAngleTol);

// min pairwise distance over a, the sequence points, and b
double separation(const TurnSequence& seq, Point a, Point b);

ShrinkParams shrink_constants(double s, double d, double phi, std::size_t n);

// slides interior vertices toward their successors so every turn magnitude
// drops to at most phi - omega * t while separation stays above s - t * kappa
// and no vertex moves farther than t * kappa / 2; t must lie in (0, s / theta]
TurnSequence shrink_map(const TurnSequence& w, Point a, Point b, double t, const ShrinkParams& params, double phi);

}  // namespace turnpath
