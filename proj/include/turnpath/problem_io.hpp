#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "turnpath/construct.hpp"
#include "turnpath/enumerate.hpp"
#include "turnpath/geometry.hpp"
#include "turnpath/optimize.hpp"
#include "turnpath/regions.hpp"

namespace turnpath {

// filesystem-level failure (unreadable input, unwritable output); callers map
// this to a different exit code than validation errors
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CostSpec {
    double length_weight = 1.0;
    double turn_weight = 0.0;
};

// problem description as read from the input JSON; grid bounds may be absent,
// in which case problem_grid derives them from the reachable set
struct ProblemFile {
    Point a;
    Point b;
    std::size_t n = 1;
    double phi = 0.0;
    std::optional<GridSpec> grid;
    CostSpec cost;
    double tolerance = 1e-9;
    bool strict_turns = false;
    long long seed = 0;
    double resource_cap = 5e7;  // estimated tuple bound before enumerate refuses
};

// parses and validates the problem JSON; angles arrive in radians unless
// degrees is set; rejects n * phi >= pi
ProblemFile load_problem(const std::string& path, bool degrees);

// grid with bounds filled in when only tau was given (bounding box of the
// closed reachable set, one tau of margin, anchored at q); appends a warning
// when explicit bounds do not contain the reachable set
GridSpec problem_grid(const ProblemFile& pf, std::vector<std::string>& warnings);

CostModel to_cost_model(const CostSpec& c);

nlohmann::ordered_json point_json(Point p);
nlohmann::ordered_json polyline_json(const Polyline& p);
nlohmann::ordered_json report_json(const ValidationReport& r);
nlohmann::ordered_json region_json(const TurnRegion& r, std::size_t samples = 64);
nlohmann::ordered_json set_json(const DiscreteSequenceSet& s);
nlohmann::ordered_json solution_json(const Solution& s);

// one sequence per row, coordinates flattened, '.' decimal, ',' separator, LF
std::string set_csv(const DiscreteSequenceSet& s);

// header tau,set_size,min_objective,hausdorff_to_reference
std::string convergence_csv(const ConvergenceReport& r);

// region boundary plus chord and endpoint markers; optional polyline overlay;
// world y points up, so the drawing flips the y axis (noted in the header)
std::string region_svg(const TurnRegion& r, const Polyline* overlay = nullptr);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace turnpath
