#pragma once

#include <cstddef>
#include <vector>

#include "turnpath/angles.hpp"
#include "turnpath/geometry.hpp"

namespace turnpath {

// equal-turn subdivision instance: replace the bend A -> G -> B at C = A + t(G - A)
// by n equally turning segments that rejoin [B, G]
struct ProblemOInput {
    Point a;
    Point b;
    Point g;
    double t = 0.0;
    std::size_t n = 0;
};

struct ValidationReport {
    std::vector<double> turn_angles;
    double max_abs_turn = 0.0;
    double min_pair_separation = 0.0;
    std::vector<std::size_t> zero_turn_indices;  // 1-based interior vertex indices
    bool ok = false;
};

// counterclockwise rotation by theta
Mat2 rotation_matrix(double theta);

// interior vertices B^(2..n) of the equal-turn replacement path; B^(1) = A + t(G - A)
// is implied. All turns equal psi/n where psi is the bend angle at G.
std::vector<Point> solve_problem_o(const ProblemOInput& in);

// a polyline A -> B^(1..n) -> B through the prescribed first interior vertex b1
// with every turn magnitude at most phi; requires n >= 1, n * phi < pi, and b1
// feasible (inside S(A, B, n phi), or on the open chord, or for n = 1 inside
// cl S(A, B, phi) minus the endpoints)
Polyline construct_polyline(Point a, Point b, std::size_t n, double phi, Point b1);

// turn-by-turn audit of a polyline against the bound phi
ValidationReport validate_polyline(const Polyline& p, double phi, double tol = kAngleTol);

// every interior vertex must lie in cl S(A, B, n phi) minus the endpoints
bool vertex_region_check(const Polyline& p, double phi, double tol = kAngleTol);

}  // namespace turnpath
