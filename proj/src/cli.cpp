#include "raypareto/cli.hpp"

#include "raypareto/anchors.hpp"
#include "raypareto/frontier.hpp"
#include "raypareto/mapping.hpp"
#include "raypareto/problem.hpp"
#include "raypareto/simplex.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace raypareto::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string input;
    std::size_t angles = 150;
    double phi_lo = 0.01;
    double phi_hi = 1.5607;
    double t_max = 10.0;
    double step = 0.01;
    double tol_root = 1e-9;
    double tol_feas = 1e-9;
    std::string method = "auto";
    std::string shift = "on";
    std::size_t samples = 100000;
    std::uint64_t seed = 42;
    std::string format;
    std::string out;
    std::size_t lines = 200;
    std::size_t grid = 400;
    std::size_t tau_samples = 40;
    bool serial = false;
};

class SolveFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ScanConfig scan_config(const Options& o) {
    ScanConfig c{o.t_max, o.step, o.tol_root, o.tol_feas};
    c.validate();
    return c;
}

AnchorGrid anchor_grid(const Options& o) { return AnchorGrid{0.0, o.t_max, o.grid}; }

ConditionBConfig condition_b_config(const Options& o) {
    ConditionBConfig c;
    c.lines = o.lines;
    c.samples = o.samples;
    c.seed = o.seed;
    return c;
}

Execution execution(const Options& o) { return o.serial ? Execution::serial : Execution::parallel; }

std::string format_or(const Options& o, const char* fallback) {
    std::string f = o.format.empty() ? fallback : o.format;
    if (f != "csv" && f != "json") throw std::invalid_argument("--format must be csv or json");
    return f;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + o.out + "'");
    file << text;
}

json point_json(const Point2& p) { return json::array({p[0], p[1]}); }

json anchor_json(const AnchorSolution& a) {
    return json{{"index", a.index + 1},
                {"value", a.value},
                {"witness", point_json(a.witness)},
                {"window_limited", a.window_limited}};
}

json anchors_json(const Anchors& a) {
    return json{{"y1_min", anchor_json(a.y1_min)},
                {"y2_min", anchor_json(a.y2_min)},
                {"ideal", point_json(a.ideal().coordinates)}};
}

json condition_b_json(const ConditionBReport& r) {
    json vce = json::array();
    for (const auto& c : r.vertical_counterexamples) vce.push_back(point_json(c));
    json hce = json::array();
    for (const auto& c : r.horizontal_counterexamples) hce.push_back(point_json(c));
    return json{{"ideal", point_json(r.ideal)},
                {"ideal_H", r.ideal_H},
                {"ideal_infeasible", r.ideal_infeasible},
                {"ideal_in_K0", r.ideal_in_K0},
                {"k0_samples", r.k0_samples},
                {"k0_violations", r.k0_violations},
                {"vertical", {{"sampled", r.vertical_sampled},
                              {"missed", r.vertical_missed},
                              {"respecting", r.vertical_respecting},
                              {"evidence", r.vertical_evidence()},
                              {"counterexamples", vce}}},
                {"horizontal", {{"sampled", r.horizontal_sampled},
                                {"missed", r.horizontal_missed},
                                {"respecting", r.horizontal_respecting},
                                {"evidence", r.horizontal_evidence()},
                                {"counterexamples", hce}}},
                {"verdict", to_string(r.verdict)}};
}

std::string kv_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::string s = "key,value\n";
    for (const auto& [k, v] : rows) s += k + "," + v + "\n";
    return s;
}

Problem load(const Options& o) { return load_problem_file(o.input); }

int cmd_anchors(const Options& o, std::ostream& out) {
    const Problem p = load(o);
    const Anchors a = solve_anchors(p, scan_config(o), anchor_grid(o), execution(o));
    if (format_or(o, "json") == "json") {
        emit(o, out, anchors_json(a).dump(2) + "\n");
        return kExitOk;
    }
    std::string s = "index,value,w1,w2\n";
    for (const AnchorSolution* sol : {&a.y1_min, &a.y2_min}) {
        s += std::to_string(sol->index + 1) + "," + format_number(sol->value) + "," + format_number(sol->witness[0]) +
             "," + format_number(sol->witness[1]) + "\n";
    }
    const auto ideal = a.ideal().coordinates;
    s += "ideal,," + format_number(ideal[0]) + "," + format_number(ideal[1]) + "\n";
    emit(o, out, s);
    return kExitOk;
}

int cmd_check_b(const Options& o, std::ostream& out) {
    const Problem p = load(o);
    const ScanConfig cfg = scan_config(o);
    const Anchors a = solve_anchors(p, cfg, anchor_grid(o), execution(o));
    const ConditionBReport r = check_condition_B(p, a, cfg, anchor_grid(o), condition_b_config(o), execution(o));
    if (format_or(o, "json") == "json") {
        json j = condition_b_json(r);
        j["anchors"] = anchors_json(a);
        emit(o, out, j.dump(2) + "\n");
        return kExitOk;
    }
    emit(o, out,
         kv_csv({{"ideal_y1", format_number(r.ideal[0])},
                 {"ideal_y2", format_number(r.ideal[1])},
                 {"ideal_H", format_number(r.ideal_H)},
                 {"ideal_infeasible", r.ideal_infeasible ? "true" : "false"},
                 {"ideal_in_K0", r.ideal_in_K0 ? "true" : "false"},
                 {"vertical_evidence", format_number(r.vertical_evidence())},
                 {"horizontal_evidence", format_number(r.horizontal_evidence())},
                 {"verdict", to_string(r.verdict)}}));
    return kExitOk;
}

int cmd_frontier(const Options& o, std::ostream& out) {
    const Problem p = load(o);
    const ScanConfig cfg = scan_config(o);
    SweepConfig s;
    s.count = o.angles;
    s.phi_lo = o.phi_lo;
    s.phi_hi = o.phi_hi;
    s.method = parse_method(o.method);
    s.shift = o.shift == "on";
    s.grid = anchor_grid(o);
    s.condition_b = condition_b_config(o);
    s.exec = execution(o);
    const Frontier f = sweep(p, s, cfg);

    std::size_t reported = 0;
    for (const auto& fp : f.points) reported += fp.y_star ? 1 : 0;
    if (reported == 0) throw SolveFailure("frontier is empty: no ray reached the feasible set");

    const auto& samples = f.samples;
    std::size_t checked = 0;
    std::size_t passed = 0;
    for (const auto& fp : f.points) {
        if (fp.status != PointStatus::boundary) continue;
        ++checked;
        passed += verify_pareto_cone(fp, samples) ? 1 : 0;
    }

    json meta{{"problem", p.name()},
              {"method", to_string(f.method)},
              {"shift", s.shift},
              {"origin", point_json(f.origin)},
              {"anchors", anchors_json(f.anchors)},
              {"condition_b", condition_b_json(f.condition_b)},
              {"degenerate", f.degenerate},
              {"filtered", f.filtered},
              {"filter_removed", f.filter_removed},
              {"cone_check", {{"samples", samples.size()}, {"checked", checked}, {"passed", passed}}}};

    if (format_or(o, "csv") == "json") {
        json pts = json::array();
        for (const auto& fp : f.points) {
            if (!fp.y_star) continue;
            pts.push_back({{"phi", fp.angle},
                           {"t_star", fp.t_star},
                           {"y1", (*fp.y_star)[0]},
                           {"y2", (*fp.y_star)[1]},
                           {"h_residual", fp.h_residual},
                           {"status", to_string(fp.status)}});
        }
        meta["points"] = std::move(pts);
        emit(o, out, meta.dump(2) + "\n");
        return kExitOk;
    }

    std::string csv = "phi,t_star,y1,y2,h_residual,status\n";
    for (const auto& fp : f.points) {
        if (!fp.y_star) continue;
        csv += format_number(fp.angle) + "," + format_number(fp.t_star) + "," + format_number((*fp.y_star)[0]) + "," +
               format_number((*fp.y_star)[1]) + "," + format_number(fp.h_residual) + "," + to_string(fp.status) + "\n";
    }
    emit(o, out, csv);
    if (!o.out.empty()) {
        std::ofstream side(o.out + ".json", std::ios::binary);
        if (!side) throw std::runtime_error("cannot write '" + o.out + ".json'");
        side << meta.dump(2) << "\n";
    }
    return kExitOk;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2) throw std::invalid_argument("--angles must be at least 2");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return v;
}

int cmd_map(const Options& o, std::ostream& out) {
    const Problem p = load(o);
    if (p.kind() != ProblemKind::decision_space) {
        throw std::invalid_argument("map needs a problem with 'minimize' lines");
    }
    const auto axis = linspace(o.phi_lo, o.phi_hi, o.angles);
    const std::size_t dims = p.dimension() - 1;
    std::vector<Angles> grid;
    if (dims == 0) {
        grid.emplace_back();
    } else {
        std::vector<std::size_t> idx(dims, 0);
        for (;;) {
            std::vector<double> a(dims);
            for (std::size_t d = 0; d < dims; ++d) a[d] = axis[idx[d]];
            grid.emplace_back(std::move(a));
            std::size_t d = dims;
            while (d > 0 && ++idx[d - 1] == axis.size()) idx[--d] = 0;
            if (d == 0) break;
        }
    }
    const ImageCloud cloud = image_sample(p, grid, o.tau_samples, scan_config(o), execution(o));

    if (format_or(o, "csv") == "json") {
        json pts = json::array();
        for (const auto& pt : cloud.points) {
            pts.push_back({{"angles", pt.angles.values()}, {"tau", pt.tau}, {"x", pt.x}, {"y", pt.y}});
        }
        json j{{"problem", p.name()},
               {"points", std::move(pts)},
               {"truncated_directions", cloud.truncated_directions},
               {"diagnostics", cloud.diagnostics}};
        emit(o, out, j.dump(2) + "\n");
        return kExitOk;
    }
    std::string csv;
    for (std::size_t d = 0; d < dims; ++d) csv += "phi_" + std::to_string(d + 1) + ",";
    csv += "tau";
    for (std::size_t k = 0; k < p.objectives().size(); ++k) csv += ",y_" + std::to_string(k + 1);
    csv += "\n";
    for (const auto& pt : cloud.points) {
        for (double a : pt.angles.values()) csv += format_number(a) + ",";
        csv += format_number(pt.tau);
        for (double y : pt.y) csv += "," + format_number(y);
        csv += "\n";
    }
    emit(o, out, csv);
    return kExitOk;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& s, double& v) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

int cmd_filter(const Options& o, std::ostream& out) {
    std::ifstream in(o.input, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + o.input + "'");
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) {
        emit(o, out, "");
        return kExitOk;
    }

    std::size_t c1 = 0;
    std::size_t c2 = 1;
    std::size_t first_row = 0;
    const auto head = split_csv(lines.front());
    double probe = 0.0;
    if (head.size() < 2) throw std::invalid_argument(o.input + ": need at least two columns");
    if (!parse_double(head[0], probe)) {
        first_row = 1;
        auto find = [&](const char* name) {
            for (std::size_t i = 0; i < head.size(); ++i) {
                if (head[i] == name) return i;
            }
            return head.size();
        };
        const std::size_t i1 = find("y1");
        const std::size_t i2 = find("y2");
        if (i1 < head.size() && i2 < head.size()) {
            c1 = i1;
            c2 = i2;
        } else if (head.size() != 2) {
            throw std::invalid_argument(o.input + ": header needs y1 and y2 columns");
        }
    }

    std::vector<Point2> pts;
    for (std::size_t r = first_row; r < lines.size(); ++r) {
        const auto cells = split_csv(lines[r]);
        Point2 y{};
        if (cells.size() <= std::max(c1, c2) || !parse_double(cells[c1], y[0]) || !parse_double(cells[c2], y[1])) {
            throw std::invalid_argument(o.input + ": line " + std::to_string(r + 1) + ": malformed point");
        }
        pts.push_back(y);
    }
    const auto keep = nondominated_mask(pts);
    std::string text;
    if (first_row == 1) text += lines.front() + "\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (keep[i]) text += lines[first_row + i] + "\n";
    }
    emit(o, out, text);
    return kExitOk;
}

void add_common(CLI::App* sub, Options& o, bool sweep_flags) {
    sub->add_option("--t-max", o.t_max, "scan window upper bound (also the anchor window)")->capture_default_str();
    sub->add_option("--step", o.step, "coarse scan spacing")->capture_default_str();
    sub->add_option("--tol-root", o.tol_root, "bisection width target")->capture_default_str();
    sub->add_option("--tol-feas", o.tol_feas, "feasibility slack")->capture_default_str();
    sub->add_option("--grid", o.grid, "anchor grid resolution per axis")->capture_default_str();
    sub->add_option("--samples", o.samples, "feasible sample budget")->capture_default_str();
    sub->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
    sub->add_option("--lines", o.lines, "condition (B) lines per direction")->capture_default_str();
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_flag("--serial", o.serial, "use the serial reference kernels");
    if (sweep_flags) {
        sub->add_option("--angles", o.angles, "number of sweep angles")->capture_default_str();
        sub->add_option("--phi-lo", o.phi_lo, "first sweep angle")->capture_default_str();
        sub->add_option("--phi-hi", o.phi_hi, "last sweep angle")->capture_default_str();
    }
}

}  // namespace

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pareto frontiers of bi-objective problems by ray sweeps in objective space", "raypareto"};
    app.require_subcommand(1);
    Options o;

    auto* anchors = app.add_subcommand("anchors", "solve y1 -> min and y2 -> min; report the ideal point");
    anchors->add_option("problem", o.input, "problem file")->required();
    add_common(anchors, o, false);

    auto* frontier = app.add_subcommand("frontier", "sweep task (A) over directions");
    frontier->add_option("problem", o.input, "problem file")->required();
    add_common(frontier, o, true);
    frontier->add_option("--method", o.method, "auto, scan or lp")
        ->check(CLI::IsMember({"auto", "scan", "lp"}))
        ->capture_default_str();
    frontier->add_option("--shift", o.shift, "move the origin to the ideal point")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();

    auto* map = app.add_subcommand("map", "sample the image of X under the objectives");
    map->add_option("problem", o.input, "problem file")->required();
    add_common(map, o, true);
    map->add_option("--tau-samples", o.tau_samples, "samples per feasible interval")->capture_default_str();

    auto* check_b = app.add_subcommand("check-b", "sampled condition (B) report");
    check_b->add_option("problem", o.input, "problem file")->required();
    add_common(check_b, o, false);

    auto* filter = app.add_subcommand("filter", "keep the non-dominated rows of a CSV of points");
    filter->add_option("points", o.input, "CSV with y1,y2 columns (or exactly two columns)")->required();
    filter->add_option("--out", o.out, "output path (default stdout)");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("raypareto");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (anchors->parsed()) return cmd_anchors(o, out);
        if (frontier->parsed()) return cmd_frontier(o, out);
        if (map->parsed()) return cmd_map(o, out);
        if (check_b->parsed()) return cmd_check_b(o, out);
        if (filter->parsed()) return cmd_filter(o, out);
    } catch (const ProblemError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const AnchorError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolve;
    } catch (const SolveFailure& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolve;
    } catch (const SimplexError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolve;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolve;
    }
    return kExitUsage;
}

}  // namespace raypareto::cli
