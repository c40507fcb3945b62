#include "turnpath/problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace turnpath {

namespace {

using nlohmann::ordered_json;

std::string num(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string csv_num(double v) { return num(v, "%.12g"); }
std::string svg_num(double v) { return num(v, "%.6f"); }

Point parse_point(const ordered_json& j, const char* name) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument(std::string(name) + " must be a [x, y] number pair");
    const Point p{j[0].get<double>(), j[1].get<double>()};
    if (!finite(p)) throw std::invalid_argument(std::string(name) + " must be finite");
    return p;
}

double parse_number(const ordered_json& j, const char* name) {
    if (!j.is_number()) throw std::invalid_argument(std::string(name) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
    return v;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failure on " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw io_error("write failure on " + path);
}

ProblemFile load_problem(const std::string& path, bool degrees) {
    const std::string text = read_text_file(path);
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("problem file must be a JSON object");
    if (!j.contains("A") || !j.contains("B") || !j.contains("n") || !j.contains("phi"))
        throw std::invalid_argument("problem file needs A, B, n, phi");

    ProblemFile pf;
    pf.a = parse_point(j["A"], "A");
    pf.b = parse_point(j["B"], "B");
    if (pf.a == pf.b) throw std::invalid_argument("A and B must be distinct");

    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        throw std::invalid_argument("n must be an integer >= 1");
    pf.n = static_cast<std::size_t>(j["n"].get<long long>());

    pf.phi = parse_number(j["phi"], "phi");
    if (degrees) pf.phi *= kPi / 180.0;
    if (!(pf.phi > 0.0)) throw std::invalid_argument("phi must be positive");
    if (!(static_cast<double>(pf.n) * pf.phi < kPi))
        throw std::invalid_argument("n * phi must be below pi; this build covers only that regime");

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_object() || !g.contains("tau"))
            throw std::invalid_argument("grid must be an object with at least tau");
        GridSpec spec;
        spec.tau = parse_number(g["tau"], "grid.tau");
        if (!(spec.tau > 0.0)) throw std::invalid_argument("grid.tau must be positive");
        if (g.contains("q") != g.contains("p"))
            throw std::invalid_argument("grid bounds need both q and p");
        if (g.contains("q")) {
            spec.q = parse_point(g["q"], "grid.q");
            spec.p = parse_point(g["p"], "grid.p");
            if (!(spec.q.c1 < spec.p.c1 && spec.q.c2 < spec.p.c2))
                throw std::invalid_argument("grid needs q < p componentwise");
        } else {
            spec.q = spec.p = Point{0.0, 0.0};  // filled in by problem_grid
        }
        pf.grid = spec;
    }

    if (j.contains("cost")) {
        const auto& c = j["cost"];
        if (!c.is_object()) throw std::invalid_argument("cost must be an object");
        if (c.contains("length_weight")) pf.cost.length_weight = parse_number(c["length_weight"], "cost.length_weight");
        if (c.contains("turn_weight")) pf.cost.turn_weight = parse_number(c["turn_weight"], "cost.turn_weight");
        if (!(pf.cost.length_weight >= 0.0) || !(pf.cost.turn_weight >= 0.0))
            throw std::invalid_argument("cost weights must be nonnegative");
    }

    if (j.contains("tolerance")) {
        pf.tolerance = parse_number(j["tolerance"], "tolerance");
        if (!(pf.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    }
    if (j.contains("strict_turns")) {
        if (!j["strict_turns"].is_boolean()) throw std::invalid_argument("strict_turns must be a boolean");
        pf.strict_turns = j["strict_turns"].get<bool>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) throw std::invalid_argument("seed must be an integer");
        pf.seed = j["seed"].get<long long>();
    }
    if (j.contains("resource_cap")) {
        pf.resource_cap = parse_number(j["resource_cap"], "resource_cap");
        if (!(pf.resource_cap > 0.0)) throw std::invalid_argument("resource_cap must be positive");
    }
    return pf;
}

GridSpec problem_grid(const ProblemFile& pf, std::vector<std::string>& warnings) {
    if (!pf.grid) throw std::invalid_argument("this command needs a grid (give at least grid.tau)");
    GridSpec g = *pf.grid;
    const Rect box = region_bounding_box({pf.a, pf.b, static_cast<double>(pf.n) * pf.phi});
    if (g.q == g.p) {
        g.q = {box.lo.c1 - g.tau, box.lo.c2 - g.tau};
        g.p = {box.hi.c1 + g.tau, box.hi.c2 + g.tau};
        return g;
    }
    const double slack = 1e-9 * std::max(1.0, dist(pf.a, pf.b));
    if (box.lo.c1 < g.q.c1 - slack || box.lo.c2 < g.q.c2 - slack || box.hi.c1 > g.p.c1 + slack ||
        box.hi.c2 > g.p.c2 + slack) {
        warnings.push_back(
            "grid does not contain the whole reachable set; sequences are restricted to the given box");
    }
    return g;
}

CostModel to_cost_model(const CostSpec& c) {
    CostModel m;
    m.length_weight = c.length_weight;
    m.turn_weight = c.turn_weight;
    return m;
}

nlohmann::ordered_json point_json(Point p) { return ordered_json::array({p.c1, p.c2}); }

nlohmann::ordered_json polyline_json(const Polyline& p) {
    ordered_json verts = ordered_json::array();
    for (const Point& v : p.vertices) verts.push_back(point_json(v));
    return ordered_json{{"vertices", std::move(verts)}};
}

nlohmann::ordered_json report_json(const ValidationReport& r) {
    return ordered_json{{"turn_angles", r.turn_angles},
                        {"max_abs_turn", r.max_abs_turn},
                        {"min_pair_separation", r.min_pair_separation},
                        {"zero_turn_indices", r.zero_turn_indices},
                        {"ok", r.ok}};
}

nlohmann::ordered_json region_json(const TurnRegion& r, std::size_t samples) {
    ordered_json right = ordered_json::array();
    for (const Point& v : region_boundary(r, Side::right, samples).vertices) right.push_back(point_json(v));
    ordered_json left = ordered_json::array();
    for (const Point& v : region_boundary(r, Side::left, samples).vertices) left.push_back(point_json(v));
    return ordered_json{{"a", point_json(r.a)},
                        {"b", point_json(r.b)},
                        {"phi", r.phi},
                        {"right_boundary", std::move(right)},
                        {"left_boundary", std::move(left)}};
}

nlohmann::ordered_json set_json(const DiscreteSequenceSet& s) {
    ordered_json grid{{"q", point_json(s.grid.q)}, {"p", point_json(s.grid.p)}, {"tau", s.grid.tau}};
    ordered_json sequences = ordered_json::array();
    for (const TurnSequence& seq : s.sequences) {
        ordered_json row = ordered_json::array();
        for (const Point& v : seq.points) row.push_back(point_json(v));
        sequences.push_back(std::move(row));
    }
    return ordered_json{{"a", point_json(s.a)},       {"b", point_json(s.b)},
                        {"n", s.n},                   {"phi", s.phi},
                        {"grid", std::move(grid)},    {"count", s.sequences.size()},
                        {"sequences", std::move(sequences)}};
}

nlohmann::ordered_json solution_json(const Solution& s) {
    ordered_json seq = ordered_json::array();
    for (const Point& v : s.sequence.points) seq.push_back(point_json(v));
    ordered_json j{{"found", s.found},
                   {"tau", s.tau},
                   {"candidates_examined", s.candidates_examined},
                   {"sequence", std::move(seq)}};
    if (s.found)
        j["objective"] = s.objective;
    else
        j["objective"] = nullptr;
    return j;
}

std::string set_csv(const DiscreteSequenceSet& s) {
    std::string out;
    for (std::size_t i = 1; i <= s.n; ++i) {
        if (i > 1) out += ',';
        out += "b" + std::to_string(i) + "_c1,b" + std::to_string(i) + "_c2";
    }
    out += '\n';
    for (const TurnSequence& seq : s.sequences) {
        for (std::size_t i = 0; i < seq.points.size(); ++i) {
            if (i > 0) out += ',';
            out += csv_num(seq.points[i].c1);
            out += ',';
            out += csv_num(seq.points[i].c2);
        }
        out += '\n';
    }
    return out;
}

std::string convergence_csv(const ConvergenceReport& r) {
    std::string out = "tau,set_size,min_objective,hausdorff_to_reference\n";
    for (const ConvergenceRow& row : r.rows) {
        out += csv_num(row.tau);
        out += ',';
        out += std::to_string(row.set_size);
        out += ',';
        out += csv_num(row.min_objective);
        out += ',';
        out += csv_num(row.hausdorff_to_reference);
        out += '\n';
    }
    return out;
}

namespace {

void grow(Rect& box, Point p) {
    box.lo.c1 = std::min(box.lo.c1, p.c1);
    box.lo.c2 = std::min(box.lo.c2, p.c2);
    box.hi.c1 = std::max(box.hi.c1, p.c1);
    box.hi.c2 = std::max(box.hi.c2, p.c2);
}

// world (x, y) draws at (x, -y) so that positive y is up on screen
std::string svg_path(const Polyline& arc) {
    std::string d;
    for (std::size_t i = 0; i < arc.vertices.size(); ++i) {
        d += (i == 0) ? "M " : " L ";
        d += svg_num(arc.vertices[i].c1) + " " + svg_num(-arc.vertices[i].c2);
    }
    return d;
}

}  // namespace

std::string region_svg(const TurnRegion& r, const Polyline* overlay) {
    const Polyline right = region_boundary(r, Side::right, 96);
    const Polyline left = region_boundary(r, Side::left, 96);

    Rect box = region_bounding_box(r);
    grow(box, r.a);
    grow(box, r.b);
    if (overlay)
        for (const Point& v : overlay->vertices) grow(box, v);
    const double span = std::max(box.hi.c1 - box.lo.c1, box.hi.c2 - box.lo.c2);
    const double margin = 0.08 * span;
    const double x0 = box.lo.c1 - margin, x1 = box.hi.c1 + margin;
    const double y0 = box.lo.c2 - margin, y1 = box.hi.c2 + margin;
    const double sw = 0.004 * span;
    const double marker = 0.015 * span;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + svg_num(x0) + " " +
           svg_num(-y1) + " " + svg_num(x1 - x0) + " " + svg_num(y1 - y0) + "\">\n";
    svg += "<!-- world y axis points up: a world point (x, y) is drawn at (x, -y) -->\n";
    svg += "<path d=\"" + svg_path(right) + "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"" +
           svg_num(sw) + "\"/>\n";
    svg += "<path d=\"" + svg_path(left) + "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"" +
           svg_num(sw) + "\"/>\n";
    svg += "<line x1=\"" + svg_num(r.a.c1) + "\" y1=\"" + svg_num(-r.a.c2) + "\" x2=\"" + svg_num(r.b.c1) +
           "\" y2=\"" + svg_num(-r.b.c2) + "\" stroke=\"#999999\" stroke-width=\"" + svg_num(0.5 * sw) +
           "\" stroke-dasharray=\"" + svg_num(3.0 * sw) + "\"/>\n";
    if (overlay) {
        std::string pts;
        for (std::size_t i = 0; i < overlay->vertices.size(); ++i) {
            if (i > 0) pts += ' ';
            pts += svg_num(overlay->vertices[i].c1) + "," + svg_num(-overlay->vertices[i].c2);
        }
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"" +
               svg_num(1.5 * sw) + "\"/>\n";
    }
    svg += "<circle cx=\"" + svg_num(r.a.c1) + "\" cy=\"" + svg_num(-r.a.c2) + "\" r=\"" + svg_num(marker) +
           "\" fill=\"#d62728\"/>\n";
    svg += "<circle cx=\"" + svg_num(r.b.c1) + "\" cy=\"" + svg_num(-r.b.c2) + "\" r=\"" + svg_num(marker) +
           "\" fill=\"#d62728\"/>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace turnpath
