#include "raypareto/frontier.hpp"

#include "raypareto/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace raypareto {

namespace {

FrontierPoint anchor_point(const Problem& original, const AnchorSolution& a, const Point2& origin) {
    FrontierPoint fp;
    const double dx = a.witness[0] - origin[0];
    const double dy = a.witness[1] - origin[1];
    fp.angle = std::atan2(dy, dx);
    fp.t_star = std::hypot(dx, dy);
    fp.y_star = a.witness;
    fp.h_residual = aggregate_H_or_inf(original, a.witness);
    fp.status = PointStatus::boundary;
    return fp;
}

}  // namespace

FrontierPoint solve_task_A(const Problem& p, const UnitDirection& u, const ScanConfig& cfg, const Point2& origin) {
    if (p.dimension() != 2 || u.dimension() != 2) throw std::invalid_argument("task (A) is two-dimensional");
    FrontierPoint fp;
    fp.angle = std::atan2(u[1], u[0]);
    Ray ray{{0.0, 0.0}, u};
    FeasibleIntervals t = feasible_set(p, ray, cfg);
    if (t.empty()) {
        fp.status = PointStatus::no_intersection;
        fp.t_star = std::numeric_limits<double>::quiet_NaN();
        return fp;
    }
    const Interval& first = t.intervals.front();
    fp.t_star = first.lo;
    fp.status = first.lo_kind == EndpointKind::refined_root ? PointStatus::boundary : PointStatus::scan_limit;
    const Point2 local{u[0] * fp.t_star, u[1] * fp.t_star};
    fp.h_residual = aggregate_H_or_inf(p, local);
    fp.y_star = Point2{origin[0] + local[0], origin[1] + local[1]};
    return fp;
}

FrontierPoint solve_task_A_lp(const Problem& p, const UnitDirection& u, const Point2& origin) {
    FrontierPoint fp;
    fp.angle = std::atan2(u[1], u[0]);
    LpSolution sol = solve_lp(build_cone_lp(p, u));
    if (sol.status != LpStatus::optimal) {
        fp.status = PointStatus::no_intersection;
        fp.t_star = std::numeric_limits<double>::quiet_NaN();
        return fp;
    }
    fp.t_star = sol.values[2];
    const Point2 local{sol.values[0], sol.values[1]};
    fp.h_residual = aggregate_H_or_inf(p, local);
    fp.y_star = Point2{origin[0] + local[0], origin[1] + local[1]};
    fp.status = PointStatus::boundary;
    return fp;
}

Frontier sweep(const Problem& p, const SweepConfig& scfg, const ScanConfig& cfg) {
    if (p.dimension() != 2 || p.kind() != ProblemKind::objective_space) {
        throw std::invalid_argument("frontier sweep needs a 2-variable objective-space problem");
    }
    cfg.validate();
    Frontier f;
    f.method = scfg.method == Method::automatic ? (p.linear() ? Method::lp : Method::scan) : scfg.method;
    if (f.method == Method::lp && !p.linear()) {
        throw std::invalid_argument("method lp requested but problem '" + p.name() + "' is nonlinear");
    }
    const auto angles = sweep_2d(scfg.count, scfg.phi_lo, scfg.phi_hi);

    f.anchors = solve_anchors(p, cfg, scfg.grid, scfg.exec);
    const IdealPoint ideal = f.anchors.ideal();
    f.origin = scfg.shift ? ideal.coordinates : Point2{0.0, 0.0};
    f.samples = sample_feasible(p, scfg.grid, scfg.condition_b.samples, scfg.condition_b.seed);
    f.condition_b = check_condition_B(p, f.anchors, cfg, scfg.grid, scfg.condition_b, f.samples, scfg.exec);

    if (f.anchors.coincide()) {
        f.degenerate = true;
        f.points.push_back(anchor_point(p, f.anchors.y1_min, f.origin));
        f.points.front().angle = 0.0;
        return f;
    }

    const Problem shifted = scfg.shift ? shift_to_ideal(p, ideal) : p;
    std::vector<FrontierPoint> swept(angles.size());
    for_each_index(scfg.exec, angles.size(), [&](std::size_t i) {
        const UnitDirection u = unit_from_angles(angles[i]);
        swept[i] = f.method == Method::lp ? solve_task_A_lp(shifted, u, f.origin)
                                          : solve_task_A(shifted, u, cfg, f.origin);
        swept[i].angle = angles[i].values().front();
    });

    f.points.push_back(anchor_point(p, f.anchors.y2_min, f.origin));
    f.points.insert(f.points.end(), swept.begin(), swept.end());
    f.points.push_back(anchor_point(p, f.anchors.y1_min, f.origin));
    std::stable_sort(f.points.begin(), f.points.end(),
                     [](const FrontierPoint& a, const FrontierPoint& b) { return a.angle < b.angle; });

    if (f.condition_b.verdict == ConditionBVerdict::fails) {
        std::vector<Point2> ys;
        std::vector<std::size_t> owner;
        for (std::size_t i = 0; i < f.points.size(); ++i) {
            if (f.points[i].y_star) {
                ys.push_back(*f.points[i].y_star);
                owner.push_back(i);
            }
        }
        const auto keep = nondominated_mask(ys);
        std::vector<bool> drop(f.points.size(), false);
        for (std::size_t k = 0; k < keep.size(); ++k) {
            if (!keep[k]) drop[owner[k]] = true;
        }
        std::vector<FrontierPoint> kept;
        for (std::size_t i = 0; i < f.points.size(); ++i) {
            if (!drop[i]) kept.push_back(f.points[i]);
        }
        f.filter_removed = f.points.size() - kept.size();
        f.points = std::move(kept);
        f.filtered = true;
    }
    return f;
}

bool verify_pareto_cone(const FrontierPoint& candidate, std::span<const Point2> samples, double tol) {
    if (!candidate.y_star) return false;
    const Point2 y = *candidate.y_star;
    for (const auto& s : samples) {
        const bool within = s[0] <= y[0] + tol && s[1] <= y[1] + tol;
        const bool strict = s[0] < y[0] - tol || s[1] < y[1] - tol;
        if (within && strict) return false;
    }
    return true;
}

std::vector<bool> nondominated_mask(std::span<const Point2> points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    // After a lexicographic sort a point survives iff its y2 is strictly below
    // every y2 seen so far; equal values (duplicates included) are dominated
    // or repeated.
    std::vector<bool> keep(points.size(), false);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t idx : order) {
        if (points[idx][1] < best) {
            keep[idx] = true;
            best = points[idx][1];
        }
    }
    return keep;
}

std::vector<Point2> dominance_filter(std::span<const Point2> points) {
    const auto keep = nondominated_mask(points);
    std::vector<Point2> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (keep[i]) out.push_back(points[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(PointStatus s) {
    switch (s) {
    case PointStatus::boundary: return "boundary";
    case PointStatus::no_intersection: return "no-intersection";
    case PointStatus::scan_limit: return "scan-limit";
    }
    return "unknown";
}

std::string to_string(Method m) {
    switch (m) {
    case Method::automatic: return "auto";
    case Method::scan: return "scan";
    case Method::lp: return "lp";
    }
    return "unknown";
}

Method parse_method(const std::string& s) {
    if (s == "auto") return Method::automatic;
    if (s == "scan") return Method::scan;
    if (s == "lp") return Method::lp;
    throw std::invalid_argument("unknown method '" + s + "' (expected auto, scan or lp)");
}

}  // namespace raypareto
