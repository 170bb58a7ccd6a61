#pragma once

#include "raypareto/directions.hpp"
#include "raypareto/problem.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace raypareto {

struct LinearConstraint {
    std::vector<double> coefficients;
    Relation relation = Relation::less_equal;
    double rhs = 0.0;
};

/// minimize objective . x subject to constraints, x >= 0.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<LinearConstraint> constraints;

    std::size_t variable_count() const { return objective.size(); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    std::vector<double> values;
};

class SimplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kPivotTolerance = 1e-9;
inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr std::size_t kIterationCap = 10000;

/// Dense two-phase simplex with Bland's rule. Throws SimplexError when the
/// iteration cap is hit or the program is malformed.
LpSolution solve_lp(const LinearProgram& lp);

/// Cone LP over (y1, y2, t): minimize t subject to the problem's constraints,
/// y1 <= u1 t, y2 <= u2 t and y, t >= 0. Requires a linear 2-variable problem
/// and a strictly positive direction.
LinearProgram build_cone_lp(const Problem& p, const UnitDirection& u);

/// LP minimizing coordinate `index` (0-based) over a linear problem, y >= 0.
LinearProgram build_coordinate_lp(const Problem& p, std::size_t index);

}  // namespace raypareto
