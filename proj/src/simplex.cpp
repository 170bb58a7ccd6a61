#include "raypareto/simplex.hpp"

#include <cmath>
#include <limits>

namespace raypareto {

namespace {

enum class PhaseResult { optimal, unbounded };

class Tableau {
public:
    Tableau(const LinearProgram& lp) : n_(lp.variable_count()), m_(lp.constraints.size()) {
        std::size_t artificial_count = 0;
        std::vector<LinearConstraint> rows = lp.constraints;
        for (auto& r : rows) {
            if (r.coefficients.size() != n_) throw SimplexError("constraint width does not match objective");
            if (r.rhs < 0.0) {
                for (double& a : r.coefficients) a = -a;
                r.rhs = -r.rhs;
                r.relation = r.relation == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
            }
            if (r.relation == Relation::greater_equal) ++artificial_count;
        }
        first_artificial_ = n_ + m_;
        cols_ = first_artificial_ + artificial_count;
        rhs_ = cols_;
        t_.assign(m_, std::vector<double>(cols_ + 1, 0.0));
        basis_.assign(m_, 0);

        std::size_t next_artificial = first_artificial_;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& r = rows[i];
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = r.coefficients[j];
            t_[i][rhs_] = r.rhs;
            if (r.relation == Relation::less_equal) {
                t_[i][n_ + i] = 1.0;
                basis_[i] = n_ + i;
            } else {
                t_[i][n_ + i] = -1.0;
                t_[i][next_artificial] = 1.0;
                basis_[i] = next_artificial++;
            }
        }
    }

    LpSolution solve(const std::vector<double>& objective) {
        if (cols_ > first_artificial_) {
            std::vector<double> phase1(cols_, 0.0);
            for (std::size_t j = first_artificial_; j < cols_; ++j) phase1[j] = 1.0;
            run(phase1, cols_);
            double infeasibility = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (basis_[i] >= first_artificial_) infeasibility += t_[i][rhs_];
            }
            if (infeasibility > kFeasibilityTolerance) return LpSolution{LpStatus::infeasible, 0.0, {}};
            drive_out_artificials();
        }

        std::vector<double> cost(cols_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) cost[j] = objective[j];
        if (run(cost, first_artificial_) == PhaseResult::unbounded) {
            return LpSolution{LpStatus::unbounded, -std::numeric_limits<double>::infinity(), {}};
        }

        LpSolution sol{LpStatus::optimal, 0.0, std::vector<double>(n_, 0.0)};
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < n_) sol.values[basis_[i]] = std::max(0.0, t_[i][rhs_]);
        }
        for (std::size_t j = 0; j < n_; ++j) sol.objective += objective[j] * sol.values[j];
        return sol;
    }

private:
    std::size_t n_;
    std::size_t m_;
    std::size_t first_artificial_ = 0;
    std::size_t cols_ = 0;
    std::size_t rhs_ = 0;
    std::size_t iterations_ = 0;
    std::vector<std::vector<double>> t_;
    std::vector<std::size_t> basis_;

    // Columns [0, allowed) may enter the basis.
    PhaseResult run(const std::vector<double>& cost, std::size_t allowed) {
        for (;;) {
            if (++iterations_ > kIterationCap) throw SimplexError("simplex iteration cap exceeded");
            std::size_t entering = cols_;
            for (std::size_t j = 0; j < allowed; ++j) {
                double reduced = cost[j];
                for (std::size_t i = 0; i < basis_.size(); ++i) reduced -= cost[basis_[i]] * t_[i][j];
                if (reduced < -kPivotTolerance) {
                    entering = j;
                    break;
                }
            }
            if (entering == cols_) return PhaseResult::optimal;

            std::size_t leaving = basis_.size();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < basis_.size(); ++i) {
                const double a = t_[i][entering];
                if (a <= kPivotTolerance) continue;
                const double ratio = t_[i][rhs_] / a;
                if (leaving == basis_.size()) {
                    best = ratio;
                    leaving = i;
                    continue;
                }
                const double slack = 1e-12 * std::max(1.0, std::fabs(best));
                if (ratio < best - slack) {
                    best = ratio;
                    leaving = i;
                } else if (ratio <= best + slack && basis_[i] < basis_[leaving]) {
                    leaving = i;  // Bland tie-break
                }
            }
            if (leaving == basis_.size()) return PhaseResult::unbounded;
            pivot(leaving, entering);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        auto& pr = t_[row];
        const double p = pr[col];
        for (double& v : pr) v /= p;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == row) continue;
            const double f = t_[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * pr[j];
        }
        basis_[row] = col;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < basis_.size();) {
            if (basis_[i] < first_artificial_) {
                ++i;
                continue;
            }
            std::size_t col = first_artificial_;
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (std::fabs(t_[i][j]) > kPivotTolerance) {
                    col = j;
                    break;
                }
            }
            if (col == first_artificial_) {
                // redundant row
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, col);
            ++i;
        }
    }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    for (const auto& c : lp.constraints) {
        for (double a : c.coefficients) {
            if (!std::isfinite(a)) throw SimplexError("non-finite constraint coefficient");
        }
        if (!std::isfinite(c.rhs)) throw SimplexError("non-finite right-hand side");
    }
    for (double c : lp.objective) {
        if (!std::isfinite(c)) throw SimplexError("non-finite objective coefficient");
    }
    return Tableau(lp).solve(lp.objective);
}

namespace {

void require_linear_2d(const Problem& p) {
    if (!p.linear()) {
        throw std::invalid_argument("problem '" + p.name() + "' has nonlinear constraints; use the scan method");
    }
    if (p.dimension() != 2) throw std::invalid_argument("linear route needs exactly 2 variables");
}

void append_problem_rows(const Problem& p, std::size_t width, LinearProgram& lp) {
    for (const auto& form : p.affine_constraints()) {
        LinearConstraint row;
        row.coefficients.assign(width, 0.0);
        for (std::size_t j = 0; j < form.coefficients.size(); ++j) row.coefficients[j] = form.coefficients[j];
        row.relation = Relation::less_equal;
        row.rhs = -form.constant;
        lp.constraints.push_back(std::move(row));
    }
}

}  // namespace

LinearProgram build_cone_lp(const Problem& p, const UnitDirection& u) {
    require_linear_2d(p);
    if (u.dimension() != 2 || !(u[0] > 0.0) || !(u[1] > 0.0)) {
        throw std::invalid_argument("cone LP needs a strictly positive 2-D direction");
    }
    LinearProgram lp;
    lp.objective = {0.0, 0.0, 1.0};
    append_problem_rows(p, 3, lp);
    lp.constraints.push_back({{1.0, 0.0, -u[0]}, Relation::less_equal, 0.0});
    lp.constraints.push_back({{0.0, 1.0, -u[1]}, Relation::less_equal, 0.0});
    return lp;
}

LinearProgram build_coordinate_lp(const Problem& p, std::size_t index) {
    require_linear_2d(p);
    if (index > 1) throw std::invalid_argument("coordinate index must be 0 or 1");
    LinearProgram lp;
    lp.objective = {0.0, 0.0};
    lp.objective[index] = 1.0;
    append_problem_rows(p, 2, lp);
    return lp;
}

}  // namespace raypareto
