#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "turnpath/construct.hpp"
#include "turnpath/enumerate.hpp"
#include "turnpath/optimize.hpp"
#include "turnpath/problem_io.hpp"
#include "turnpath/regions.hpp"

namespace {

struct Options {
    std::string command;
    std::string input;
    std::string out;
    std::string format;
    std::string b1_text;
    double tau0 = 0.0;
    unsigned levels = 0;
    long long seed = 0;
    bool seed_given = false;
    bool degrees = false;
    unsigned workers = 1;
};

turnpath::Point parse_b1(const std::string& text) {
    double x = 0.0, y = 0.0;
    char trailing = 0;
    if (std::sscanf(text.c_str(), " %lf , %lf %c", &x, &y, &trailing) != 2)
        throw std::invalid_argument("--b1 must be two comma-separated numbers, e.g. 0.25,-0.5");
    const turnpath::Point p{x, y};
    if (!turnpath::finite(p)) throw std::invalid_argument("--b1 must be finite");
    return p;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed,
                    const char* command) {
    for (const char* ok : allowed)
        if (format == ok) return;
    std::string msg = std::string(command) + " supports --format";
    for (const char* ok : allowed) msg += std::string(" ") + ok;
    throw std::invalid_argument(msg);
}

// console echo of what ran and what it wrote; timing stays out of the files so
// reruns stay byte-identical
void emit_result(const Options& opt, const std::vector<std::string>& outputs,
                 const std::vector<std::string>& warnings, double seconds) {
    nlohmann::ordered_json j{{"command", opt.command},
                             {"outputs", outputs},
                             {"warnings", warnings},
                             {"seconds", seconds}};
    std::cout << j.dump() << "\n";
}

int run(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    turnpath::ProblemFile pf = turnpath::load_problem(opt.input, opt.degrees);
    if (opt.seed_given) pf.seed = opt.seed;
    std::vector<std::string> outputs;
    std::vector<std::string> warnings;
    const turnpath::TurnRegion region{pf.a, pf.b, static_cast<double>(pf.n) * pf.phi};

    if (opt.command == "region") {
        const std::string format = opt.format.empty() ? "svg" : opt.format;
        require_format(format, {"svg", "json"}, "region");
        if (format == "svg")
            turnpath::write_text_file(opt.out, turnpath::region_svg(region));
        else
            turnpath::write_text_file(opt.out, turnpath::region_json(region).dump(2) + "\n");
        outputs.push_back(opt.out);
        emit_result(opt, outputs, warnings, elapsed());
        return 0;
    }

    if (opt.command == "construct") {
        const std::string format = opt.format.empty() ? "json" : opt.format;
        require_format(format, {"json", "svg"}, "construct");
        if (opt.b1_text.empty()) throw std::invalid_argument("construct needs --b1 X,Y");
        const turnpath::Point b1 = parse_b1(opt.b1_text);
        const turnpath::Polyline path = turnpath::construct_polyline(pf.a, pf.b, pf.n, pf.phi, b1);
        const turnpath::ValidationReport report = turnpath::validate_polyline(path, pf.phi, pf.tolerance);
        nlohmann::ordered_json j{{"polyline", turnpath::polyline_json(path)},
                                 {"report", turnpath::report_json(report)}};
        if (format == "svg") {
            turnpath::write_text_file(opt.out, turnpath::region_svg(region, &path));
            outputs.push_back(opt.out);
            turnpath::write_text_file(opt.out + ".json", j.dump(2) + "\n");
            outputs.push_back(opt.out + ".json");
        } else {
            turnpath::write_text_file(opt.out, j.dump(2) + "\n");
            outputs.push_back(opt.out);
        }
        emit_result(opt, outputs, warnings, elapsed());
        return 0;
    }

    if (opt.command == "enumerate") {
        const std::string format = opt.format.empty() ? "json" : opt.format;
        require_format(format, {"json", "csv"}, "enumerate");
        const turnpath::GridSpec grid = turnpath::problem_grid(pf, warnings);

        // crude upper estimate of the output size: first-level candidates times
        // a per-level branching guess (reachable-set points thinned by the turn
        // cone); refuses before allocating anything big
        const std::vector<turnpath::Point> pts = turnpath::grid_points(grid);
        double first = 0.0;
        for (const turnpath::Point& p : pts)
            if (turnpath::region_contains(region, p, turnpath::Closure::closed, pf.tolerance)) first += 1.0;
        const double branch = std::max(1.0, first * pf.phi / turnpath::kPi);
        double estimate = first;
        for (std::size_t level = 2; level <= pf.n; ++level) estimate *= branch;
        if (estimate > pf.resource_cap) {
            std::cerr << "estimated " << estimate << " candidate tuples exceeds the resource cap "
                      << pf.resource_cap << "; try a coarser grid (tau >= " << 2.0 * grid.tau
                      << ") or raise resource_cap\n";
            return 3;
        }

        const turnpath::DiscreteSequenceSet set = turnpath::enumerate_sequences(
            pf.a, pf.b, pf.n, pf.phi, grid, opt.workers, {}, pf.strict_turns, pf.tolerance);
        if (format == "json")
            turnpath::write_text_file(opt.out, turnpath::set_json(set).dump(2) + "\n");
        else
            turnpath::write_text_file(opt.out, turnpath::set_csv(set));
        outputs.push_back(opt.out);
        emit_result(opt, outputs, warnings, elapsed());
        return 0;
    }

    if (opt.command == "solve") {
        const std::string format = opt.format.empty() ? "json" : opt.format;
        require_format(format, {"json", "svg"}, "solve");
        const turnpath::GridSpec grid = turnpath::problem_grid(pf, warnings);
        const turnpath::Solution sol =
            turnpath::solve_discrete(pf.a, pf.b, pf.n, pf.phi, grid, turnpath::to_cost_model(pf.cost),
                                     pf.strict_turns, pf.tolerance);
        const std::string json_path = (format == "svg") ? opt.out + ".json" : opt.out;
        turnpath::write_text_file(json_path, turnpath::solution_json(sol).dump(2) + "\n");
        if (format == "svg" && sol.found) {
            turnpath::Polyline path;
            path.vertices.push_back(pf.a);
            path.vertices.insert(path.vertices.end(), sol.sequence.points.begin(), sol.sequence.points.end());
            path.vertices.push_back(pf.b);
            turnpath::write_text_file(opt.out, turnpath::region_svg(region, &path));
            outputs.push_back(opt.out);
        }
        outputs.push_back(json_path);
        emit_result(opt, outputs, warnings, elapsed());
        return sol.found ? 0 : 4;
    }

    // converge
    if (!(opt.tau0 > 0.0)) throw std::invalid_argument("converge needs --tau0 > 0");
    if (opt.levels < 2) throw std::invalid_argument("converge needs --levels >= 2");
    std::vector<double> taus;
    taus.reserve(opt.levels);
    double tau = opt.tau0;
    for (unsigned k = 0; k < opt.levels; ++k, tau *= 0.5) taus.push_back(tau);
    const turnpath::ConvergenceReport report = turnpath::convergence_study(
        pf.a, pf.b, pf.n, pf.phi, turnpath::to_cost_model(pf.cost), taus, opt.workers);
    turnpath::write_text_file(opt.out, turnpath::convergence_csv(report));
    outputs.push_back(opt.out);
    bool any_ok = false;
    for (const auto& row : report.rows) any_ok = any_ok || row.ok;
    for (const auto& row : report.rows)
        if (!row.ok) warnings.push_back("level tau=" + std::to_string(row.tau) + " produced no sequences");
    emit_result(opt, outputs, warnings, elapsed());
    return any_ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"planar path planning with bounded turning"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {"region", "construct", "enumerate", "solve", "converge"};
    const std::vector<std::string> blurbs = {
        "export the reachable set boundary",
        "build a witness polyline through --b1",
        "list every admissible sequence on the grid",
        "minimize the cost over the grid",
        "run the nested grid refinement sweep",
    };
    for (std::size_t i = 0; i < names.size(); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--input", opt.input, "problem JSON file")->required();
        sub->add_option("--out", opt.out, "output path")->required();
        sub->add_option("--format", opt.format, "svg, json, or csv (command-dependent)");
        sub->add_option("--seed", opt.seed, "override the problem seed");
        sub->add_flag("--degrees", opt.degrees, "interpret phi in degrees");
        sub->add_option("--workers", opt.workers, "parallel workers for enumeration")
            ->check(CLI::Range(1u, 64u));
        if (names[i] == "construct") sub->add_option("--b1", opt.b1_text, "first interior vertex X,Y");
        if (names[i] == "converge") {
            sub->add_option("--tau0", opt.tau0, "coarsest grid step");
            sub->add_option("--levels", opt.levels, "number of halvings to sweep");
        }
        sub->callback([&opt, name = names[i]] { opt.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    for (const CLI::App* sub : app.get_subcommands())
        if (sub->count("--seed") > 0) opt.seed_given = true;

    try {
        return run(opt);
    } catch (const turnpath::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
