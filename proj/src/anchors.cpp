#include "raypareto/anchors.hpp"

#include "raypareto/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace raypareto {

namespace {

constexpr double kRefineTol = 1e-10;
constexpr std::size_t kMaxCounterexamples = 8;

bool feasible_at(const Problem& p, const Point2& y) { return feasible(p, y); }

// Lowest feasible value of y[coord] reachable by walking down from the feasible
// point y in steps of `h`, bisected to kRefineTol. Returns the feasible side.
double descend(const Problem& p, Point2 y, std::size_t coord, double floor, double h) {
    double upper = y[coord];
    double lower = upper;
    for (;;) {
        if (upper <= floor) return floor;
        lower = std::max(floor, upper - h);
        y[coord] = lower;
        if (!feasible_at(p, y)) break;
        if (lower <= floor) return floor;
        upper = lower;
    }
    while (upper - lower > kRefineTol) {
        const double mid = 0.5 * (lower + upper);
        if (mid <= lower || mid >= upper) break;
        y[coord] = mid;
        if (feasible_at(p, y)) {
            upper = mid;
        } else {
            lower = mid;
        }
    }
    return upper;
}

AnchorSolution solve_anchor_lp(const Problem& p, std::size_t index) {
    const std::size_t other = 1 - index;
    LpSolution first = solve_lp(build_coordinate_lp(p, index));
    if (first.status == LpStatus::infeasible) {
        throw AnchorError("anchor y" + std::to_string(index + 1) + " -> min: constraints are infeasible");
    }
    if (first.status == LpStatus::unbounded) {
        throw AnchorError("anchor y" + std::to_string(index + 1) + " -> min: unbounded");
    }
    LinearProgram second = build_coordinate_lp(p, other);
    LinearConstraint cap;
    cap.coefficients = {0.0, 0.0};
    cap.coefficients[index] = 1.0;
    cap.relation = Relation::less_equal;
    cap.rhs = first.values[index];
    second.constraints.push_back(cap);
    LpSolution lex = solve_lp(second);
    const LpSolution& best = lex.status == LpStatus::optimal ? lex : first;

    AnchorSolution a;
    a.index = index;
    a.witness = {best.values[0], best.values[1]};
    a.value = a.witness[index];
    a.window_limited = a.value <= 0.0;
    return a;
}

AnchorSolution solve_anchor_grid(const Problem& p, std::size_t index, const AnchorGrid& grid) {
    if (!(grid.hi > grid.lo) || grid.resolution < 2) throw std::invalid_argument("anchor grid: bad window");
    const std::size_t other = 1 - index;
    const double h = (grid.hi - grid.lo) / static_cast<double>(grid.resolution);
    auto node = [&](std::size_t k) {
        return k == grid.resolution ? grid.hi : grid.lo + h * static_cast<double>(k);
    };

    std::optional<Point2> best;
    for (std::size_t a = 0; a <= grid.resolution && !best; ++a) {
        for (std::size_t b = 0; b <= grid.resolution; ++b) {
            Point2 y{};
            y[index] = node(a);
            y[other] = node(b);
            if (feasible_at(p, y)) {
                best = y;
                break;
            }
        }
    }
    if (!best) {
        throw AnchorError("anchor y" + std::to_string(index + 1) + " -> min: no feasible point in [" +
                          std::to_string(grid.lo) + ", " + std::to_string(grid.hi) +
                          "]^2; enlarge the window (--t-max)");
    }

    Point2 y = *best;
    y[index] = descend(p, y, index, grid.lo, h);
    for (double delta = h; delta > kRefineTol;) {
        bool improved = false;
        for (double sign : {-1.0, 1.0}) {
            Point2 probe = y;
            probe[other] = std::clamp(y[other] + sign * delta, grid.lo, grid.hi);
            if (probe[other] == y[other] || !feasible_at(p, probe)) continue;
            probe[index] = descend(p, probe, index, grid.lo, h);
            if (probe[index] < y[index]) {
                y = probe;
                improved = true;
            }
        }
        if (!improved) delta *= 0.5;
    }
    y[other] = descend(p, y, other, grid.lo, h);

    AnchorSolution s;
    s.index = index;
    s.witness = y;
    s.value = y[index];
    s.window_limited = s.value <= grid.lo;
    return s;
}

// First feasible point along an axis-parallel line; nullopt when it misses Y.
std::optional<double> first_hit(const Problem& p, Point2 origin, std::size_t axis, double length,
                                const ScanConfig& cfg) {
    if (!(length > cfg.step)) return std::nullopt;
    ScanConfig line_cfg = cfg;
    line_cfg.tau_max = length;
    std::vector<double> dir(2, 0.0);
    dir[axis] = 1.0;
    Ray ray{{origin[0], origin[1]}, UnitDirection(dir)};
    FeasibleIntervals t = feasible_set(p, ray, line_cfg);
    if (t.empty()) return std::nullopt;
    return origin[axis] + t.intervals.front().lo;
}

}  // namespace

bool Anchors::coincide(double tol) const {
    return std::fabs(y1_min.witness[0] - y2_min.witness[0]) <= tol &&
           std::fabs(y1_min.witness[1] - y2_min.witness[1]) <= tol;
}

AnchorSolution solve_anchor(const Problem& p, std::size_t index, const ScanConfig& cfg, const AnchorGrid& grid) {
    if (p.dimension() != 2 || p.kind() != ProblemKind::objective_space) {
        throw std::invalid_argument("anchors need a 2-variable objective-space problem");
    }
    if (index > 1) throw std::invalid_argument("anchor index must be 0 or 1");
    cfg.validate();
    return p.linear() ? solve_anchor_lp(p, index) : solve_anchor_grid(p, index, grid);
}

Anchors solve_anchors(const Problem& p, const ScanConfig& cfg, const AnchorGrid& grid, Execution exec) {
    std::array<AnchorSolution, 2> out;
    for_each_index(exec, 2, [&](std::size_t i) { out[i] = solve_anchor(p, i, cfg, grid); });
    return Anchors{out[0], out[1]};
}

Problem shift_problem(const Problem& p, const Point2& offset) {
    if (p.dimension() != 2) throw std::invalid_argument("shift needs a 2-variable problem");
    std::map<std::string, Expr, std::less<>> subst;
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& v = p.variables()[i];
        subst.emplace(v, Expr::binary(ExprKind::add, Expr::variable(v), Expr::constant(offset[i])));
    }
    std::vector<Constraint> constraints;
    for (const auto& c : p.constraints()) {
        constraints.push_back(Constraint::make(c.lhs.substitute(subst), c.relation, c.rhs.substitute(subst), c.line));
    }
    std::vector<Expr> objectives;
    for (const auto& o : p.objectives()) objectives.push_back(o.substitute(subst));
    return Problem::make(p.name(), p.variables(), std::move(constraints), std::move(objectives));
}

Problem shift_to_ideal(const Problem& p, const IdealPoint& ideal) { return shift_problem(p, ideal.coordinates); }

bool Cone::contains(const Point2& y) const {
    if (kind == ConeKind::lower_left) return y[0] <= apex[0] && y[1] <= apex[1];
    return y[0] >= apex[0] && y[1] >= apex[1];
}

double ConditionBReport::vertical_evidence() const {
    const std::size_t hit = vertical_sampled - vertical_missed;
    return hit == 0 ? 1.0 : static_cast<double>(vertical_respecting) / static_cast<double>(hit);
}

double ConditionBReport::horizontal_evidence() const {
    const std::size_t hit = horizontal_sampled - horizontal_missed;
    return hit == 0 ? 1.0 : static_cast<double>(horizontal_respecting) / static_cast<double>(hit);
}

ConditionBReport check_condition_B(const Problem& p, const Anchors& anchors, const ScanConfig& cfg,
                                   const AnchorGrid& grid, const ConditionBConfig& bcfg, Execution exec) {
    const auto samples = sample_feasible(p, grid, bcfg.samples, bcfg.seed);
    return check_condition_B(p, anchors, cfg, grid, bcfg, samples, exec);
}

ConditionBReport check_condition_B(const Problem& p, const Anchors& anchors, const ScanConfig& cfg,
                                   const AnchorGrid& grid, const ConditionBConfig& bcfg,
                                   std::span<const Point2> samples, Execution exec) {
    ConditionBReport r;
    const Point2 ideal = anchors.ideal().coordinates;
    const Point2 top = anchors.y1_min.witness;    // on the vertical axis through the ideal point
    const Point2 right = anchors.y2_min.witness;  // on the horizontal axis through the ideal point
    r.ideal = ideal;
    r.ideal_H = aggregate_H_or_inf(p, ideal);
    r.ideal_infeasible = r.ideal_H > 0.0;

    const Cone k0{{ideal[0] - bcfg.tol, ideal[1] - bcfg.tol}, ConeKind::containing};
    r.k0_samples = samples.size();
    for (const auto& s : samples) {
        if (!k0.contains(s)) ++r.k0_violations;
    }
    r.ideal_in_K0 = r.k0_violations == 0;

    // Lines strictly between the anchors; none when the anchors share a coordinate.
    const std::size_t n = bcfg.lines;
    std::vector<std::optional<double>> vertical(n), horizontal(n);
    auto line_at = [n](double a, double b, std::size_t i) {
        return a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n + 1);
    };
    const bool spread = right[0] > top[0] && top[1] > right[1];
    if (spread) {
        for_each_index(exec, n, [&](std::size_t i) {
            const double c = line_at(top[0], right[0], i);
            vertical[i] = first_hit(p, {c, ideal[1]}, 1, grid.hi - ideal[1], cfg);
        });
        for_each_index(exec, n, [&](std::size_t i) {
            const double c = line_at(right[1], top[1], i);
            horizontal[i] = first_hit(p, {ideal[0], c}, 0, grid.hi - ideal[0], cfg);
        });
        r.vertical_sampled = r.horizontal_sampled = n;
    }
    for (std::size_t i = 0; i < r.vertical_sampled; ++i) {
        if (!vertical[i]) {
            ++r.vertical_missed;
        } else if (*vertical[i] <= top[1] + bcfg.tol) {
            ++r.vertical_respecting;
        } else if (r.vertical_counterexamples.size() < kMaxCounterexamples) {
            r.vertical_counterexamples.push_back({line_at(top[0], right[0], i), *vertical[i]});
        }
    }
    for (std::size_t i = 0; i < r.horizontal_sampled; ++i) {
        if (!horizontal[i]) {
            ++r.horizontal_missed;
        } else if (*horizontal[i] <= right[0] + bcfg.tol) {
            ++r.horizontal_respecting;
        } else if (r.horizontal_counterexamples.size() < kMaxCounterexamples) {
            r.horizontal_counterexamples.push_back({line_at(right[1], top[1], i), *horizontal[i]});
        }
    }

    const std::size_t hits =
        (r.vertical_sampled - r.vertical_missed) + (r.horizontal_sampled - r.horizontal_missed);
    const bool counterexample = r.vertical_respecting + r.horizontal_respecting < hits;
    if (!r.ideal_infeasible || counterexample) {
        r.verdict = ConditionBVerdict::fails;
    } else if (hits == 0) {
        r.verdict = ConditionBVerdict::degenerate;
    } else {
        r.verdict = ConditionBVerdict::holds_on_evidence;
    }
    return r;
}

std::vector<Point2> sample_feasible(const Problem& p, const AnchorGrid& window, std::size_t count,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(window.lo, window.hi);
    std::vector<Point2> out;
    out.reserve(count);
    const std::size_t max_draws = count * 1000;
    for (std::size_t draw = 0; draw < max_draws && out.size() < count; ++draw) {
        Point2 y{coord(rng), coord(rng)};
        if (feasible_at(p, y)) out.push_back(y);
    }
    return out;
}

std::string to_string(ConditionBVerdict v) {
    switch (v) {
    case ConditionBVerdict::holds_on_evidence: return "holds-on-evidence";
    case ConditionBVerdict::fails: return "fails";
    case ConditionBVerdict::degenerate: return "degenerate";
    }
    return "unknown";
}

}  // namespace raypareto
