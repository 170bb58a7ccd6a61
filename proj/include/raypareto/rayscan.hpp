#pragma once

#include "raypareto/directions.hpp"
#include "raypareto/problem.hpp"

#include <functional>
#include <string>
#include <vector>

namespace raypareto {

/// origin + direction * tau.
struct Ray {
    std::vector<double> origin;
    UnitDirection direction;

    std::vector<double> point_at(double tau) const;
};

struct ScanConfig {
    double tau_max = 10.0;
    double step = 0.01;
    double tol_root = 1e-9;
    double tol_feas = 1e-9;

    /// Throws std::invalid_argument on non-positive fields or step >= tau_max.
    void validate() const;
};

enum class EndpointKind { refined_root, scan_limit };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    EndpointKind lo_kind = EndpointKind::refined_root;
    EndpointKind hi_kind = EndpointKind::refined_root;
};

/// T(u): sorted, pairwise disjoint feasible tau-intervals inside [0, tau_max].
struct FeasibleIntervals {
    std::vector<Interval> intervals;
    /// Grid nodes whose constraints failed to evaluate (treated as infeasible).
    std::vector<std::string> diagnostics;

    bool empty() const { return intervals.empty(); }
};

struct RootResult {
    double tau = 0.0;
    double residual = 0.0;  ///< |g(tau)|
    double width = 0.0;     ///< final bracket width
};

/// Bisection on a sign-change bracket [a, b] (g(a) * g(b) <= 0) until the
/// bracket is no wider than tol; returns the bracket midpoint. "Sign" means
/// g > 0 versus g <= 0, so a bracket with an exact zero at one end returns
/// that end. Throws std::invalid_argument without a sign change.
RootResult refine_root(const std::function<double(double)>& g, double a, double b, double tol);

/// Scans tau in [0, tau_max] at cfg.step, refines every feasibility change by
/// bisection and assembles the maximal feasible intervals.
FeasibleIntervals feasible_set(const Problem& p, const Ray& r, const ScanConfig& cfg);

}  // namespace raypareto
