#pragma once

#include "raypareto/execution.hpp"
#include "raypareto/problem.hpp"
#include "raypareto/rayscan.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace raypareto {

using Point2 = std::array<double, 2>;

class AnchorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Square search window [lo, hi]^2 for the nonlinear anchor route and for
/// feasible-point sampling. The linear route implicitly uses y >= 0.
struct AnchorGrid {
    double lo = 0.0;
    double hi = 10.0;
    std::size_t resolution = 400;
};

/// Minimizer of a single coordinate over the feasible set.
struct AnchorSolution {
    std::size_t index = 0;  ///< 0 for y1 -> min, 1 for y2 -> min
    double value = 0.0;     ///< equals witness[index]
    Point2 witness{};
    bool window_limited = false;  ///< minimum sits on the window's lower edge
};

struct IdealPoint {
    Point2 coordinates{};
};

struct Anchors {
    AnchorSolution y1_min;  ///< lies on the vertical axis through the ideal point
    AnchorSolution y2_min;  ///< lies on the horizontal axis through the ideal point

    IdealPoint ideal() const { return {{y1_min.value, y2_min.value}}; }
    /// One feasible point attains both minima.
    bool coincide(double tol = 1e-9) const;
};

/// Linear problems go through the simplex solver (lexicographic: the other
/// coordinate is minimized among optima); nonlinear ones through a feasible
/// grid minimum refined by coordinate bisection and a shrinking pattern search.
/// Throws AnchorError when nothing feasible is found or the LP is unbounded.
AnchorSolution solve_anchor(const Problem& p, std::size_t index, const ScanConfig& cfg, const AnchorGrid& grid);

Anchors solve_anchors(const Problem& p, const ScanConfig& cfg, const AnchorGrid& grid,
                      Execution exec = Execution::parallel);

/// Substitutes y_i -> y_i + offset_i into every constraint and objective, so
/// that H_shifted(y) == H_original(y + offset) bit for bit.
Problem shift_problem(const Problem& p, const Point2& offset);
Problem shift_to_ideal(const Problem& p, const IdealPoint& ideal);

enum class ConeKind { lower_left, containing };

/// lower_left: {y <= apex}; containing: {y >= apex}. Componentwise.
struct Cone {
    Point2 apex{};
    ConeKind kind = ConeKind::lower_left;

    bool contains(const Point2& y) const;
};

enum class ConditionBVerdict { holds_on_evidence, fails, degenerate };

struct ConditionBConfig {
    std::size_t lines = 200;       ///< vertical and horizontal lines each
    std::size_t samples = 100000;  ///< feasible samples for the K0 check
    std::uint64_t seed = 42;
    double tol = 1e-6;
};

struct ConditionBReport {
    Point2 ideal{};
    double ideal_H = 0.0;
    bool ideal_infeasible = false;
    bool ideal_in_K0 = true;
    std::size_t k0_samples = 0;
    std::size_t k0_violations = 0;

    std::size_t vertical_sampled = 0;
    std::size_t vertical_missed = 0;
    std::size_t vertical_respecting = 0;
    std::size_t horizontal_sampled = 0;
    std::size_t horizontal_missed = 0;
    std::size_t horizontal_respecting = 0;

    /// Fraction of hit lines respecting their clause (1 when nothing was hit).
    double vertical_evidence() const;
    double horizontal_evidence() const;

    /// First few lines violating a clause, as (line coordinate, minimal component).
    std::vector<Point2> vertical_counterexamples;
    std::vector<Point2> horizontal_counterexamples;

    ConditionBVerdict verdict = ConditionBVerdict::degenerate;
};

/// Sampled evidence for condition (B). Clause 1: on every vertical line between
/// the anchor abscissas the lowest point of Y is no higher than the y1-min
/// anchor. Clause 2: on every horizontal line between the anchor ordinates the
/// leftmost point of Y is no further right than the y2-min anchor. Also reports
/// whether the ideal point is infeasible and below every sampled feasible point.
ConditionBReport check_condition_B(const Problem& p, const Anchors& anchors, const ScanConfig& cfg,
                                   const AnchorGrid& grid, const ConditionBConfig& bcfg,
                                   Execution exec = Execution::parallel);
/// As above, with the K0 check run against caller-supplied feasible samples.
ConditionBReport check_condition_B(const Problem& p, const Anchors& anchors, const ScanConfig& cfg,
                                   const AnchorGrid& grid, const ConditionBConfig& bcfg,
                                   std::span<const Point2> samples, Execution exec = Execution::parallel);

/// Seeded rejection sampling of feasible points in [lo, hi]^2. Gives up after
/// count * 1000 draws and returns what it has.
std::vector<Point2> sample_feasible(const Problem& p, const AnchorGrid& window, std::size_t count,
                                    std::uint64_t seed);

std::string to_string(ConditionBVerdict v);

}  // namespace raypareto
