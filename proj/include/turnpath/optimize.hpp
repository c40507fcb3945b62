#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "turnpath/enumerate.hpp"
#include "turnpath/geometry.hpp"

namespace turnpath {

// additive path cost: length_weight * total length, plus a per-vertex cost of
// the turn magnitude (turn_weight * |angle| unless turn_cost overrides), plus
// an optional surcharge at each interior vertex
struct CostModel {
    double length_weight = 1.0;
    double turn_weight = 0.0;
    std::function<double(double)> turn_cost;
    std::function<double(Point)> surcharge;
    bool separable = true;  // opt-out forces the exhaustive solver path

    double turn_cost_value(double magnitude) const {
        return turn_cost ? turn_cost(magnitude) : turn_weight * magnitude;
    }
    double surcharge_value(Point p) const { return surcharge ? surcharge(p) : 0.0; }
};

struct Solution {
    TurnSequence sequence;
    double objective = 0.0;
    double tau = 0.0;
    std::uint64_t candidates_examined = 0;
    double wall_seconds = 0.0;
    bool found = false;
};

struct ConvergenceRow {
    double tau = 0.0;
    std::size_t set_size = 0;
    double min_objective = 0.0;
    double hausdorff_to_reference = 0.0;
    bool ok = false;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
};

double objective(const CostModel& cost, Point a, Point b, const TurnSequence& seq);

// minimum-cost admissible tuple over the lattice; ties resolve to the
// lexicographically smallest sequence under (c1, c2) point order
Solution solve_discrete(Point a, Point b, std::size_t n, double phi, const GridSpec& grid, const CostModel& cost,
                        bool strict_turns = false, double tol = kAngleTol);

// sup metric over tuples: max over vertices of the max coordinate difference
double sequence_distance(const TurnSequence& x, const TurnSequence& y);

double point_to_set_distance(const TurnSequence& seq, const DiscreteSequenceSet& set);

// directed half of the set distance: sup over x of the distance to y
double directed_deviation(const DiscreteSequenceSet& x, const DiscreteSequenceSet& y);

double hausdorff(const DiscreteSequenceSet& x, const DiscreteSequenceSet& y);

// enumerate over a fixed box at each step size, tracking the best objective
// and the set distance to the finest level
ConvergenceReport convergence_study(Point a, Point b, std::size_t n, double phi, const CostModel& cost,
                                    const std::vector<double>& taus, unsigned workers = 1);

}  // namespace turnpath
