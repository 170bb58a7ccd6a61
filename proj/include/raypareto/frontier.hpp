#pragma once

#include "raypareto/anchors.hpp"
#include "raypareto/directions.hpp"
#include "raypareto/execution.hpp"
#include "raypareto/problem.hpp"
#include "raypareto/rayscan.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace raypareto {

enum class PointStatus { boundary, no_intersection, scan_limit };

/// Solution of "minimize t such that origin + u t reaches the feasible set".
struct FrontierPoint {
    double angle = 0.0;
    double t_star = 0.0;
    std::optional<Point2> y_star;  ///< original (unshifted) coordinates
    double h_residual = 0.0;
    PointStatus status = PointStatus::no_intersection;
};

enum class Method { automatic, scan, lp };

struct SweepConfig {
    std::size_t count = 150;
    double phi_lo = 0.01;
    double phi_hi = 1.5607;
    Method method = Method::automatic;
    bool shift = true;
    AnchorGrid grid;
    ConditionBConfig condition_b;
    Execution exec = Execution::parallel;
};

struct Frontier {
    std::vector<FrontierPoint> points;  ///< strictly increasing angle
    Anchors anchors;
    Point2 origin{};  ///< sweep origin: the ideal point, or 0 without shift
    ConditionBReport condition_b;
    std::vector<Point2> samples;  ///< seeded feasible samples behind the K0 check
    Method method = Method::scan;  ///< resolved method
    bool degenerate = false;       ///< anchors coincide; single point
    bool filtered = false;
    std::size_t filter_removed = 0;
};

/// Scan route. `p` is already expressed relative to `origin`; the ray starts
/// at p's coordinate origin and y_star is reported as origin + u t_star.
FrontierPoint solve_task_A(const Problem& p, const UnitDirection& u, const ScanConfig& cfg,
                           const Point2& origin = {0.0, 0.0});

/// Linear route through the cone LP. y_star is the touching feasible point.
FrontierPoint solve_task_A_lp(const Problem& p, const UnitDirection& u, const Point2& origin = {0.0, 0.0});

/// Anchors, shift, condition-(B) report, then one task-(A) solve per angle.
/// The anchor witnesses become the endpoints. When (B) fails the dominance
/// filter is applied. Throws AnchorError if an anchor solve fails.
Frontier sweep(const Problem& p, const SweepConfig& scfg, const ScanConfig& cfg);

/// Sampled check of K(y*) intersect Y = {y*}: false if some sample dominates
/// y_star (<= in both coordinates up to tol, < by more than tol in one).
/// Vacuously true for an empty sample list; false without a y_star.
bool verify_pareto_cone(const FrontierPoint& candidate, std::span<const Point2> samples, double tol = 1e-9);

/// keep[i] is true iff points[i] is not dominated by any other point and is
/// the first occurrence of its value. y dominates z iff y <= z, y != z.
std::vector<bool> nondominated_mask(std::span<const Point2> points);

/// Non-dominated subset sorted by first coordinate, duplicates collapsed.
std::vector<Point2> dominance_filter(std::span<const Point2> points);

std::string to_string(PointStatus s);
std::string to_string(Method m);
Method parse_method(const std::string& s);

}  // namespace raypareto
