#pragma once

#include "raypareto/expr.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace raypareto {

/// Aggregated load/validation failure; what() lists every problem found.
class ProblemError : public std::runtime_error {
public:
    explicit ProblemError(std::vector<std::string> messages);
    const std::vector<std::string>& messages() const noexcept { return messages_; }

private:
    std::vector<std::string> messages_;
};

enum class Relation { less_equal, greater_equal };

/// lhs REL rhs, normalized to a single h with h <= 0 meaning "holds".
struct Constraint {
    Expr lhs;
    Relation relation;
    Expr rhs;
    Expr normalized;
    std::size_t line = 0;

    static Constraint make(Expr lhs, Relation relation, Expr rhs, std::size_t line = 0);
};

enum class ProblemKind { objective_space, decision_space };

class Problem {
public:
    /// Validates and binds every expression. Throws ProblemError.
    static Problem make(std::string name, std::vector<std::string> variables, std::vector<Constraint> constraints,
                        std::vector<Expr> objectives = {});

    const std::string& name() const { return name_; }
    const std::vector<std::string>& variables() const { return variables_; }
    std::size_t dimension() const { return variables_.size(); }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<Expr>& objectives() const { return objectives_; }
    ProblemKind kind() const {
        return objectives_.empty() ? ProblemKind::objective_space : ProblemKind::decision_space;
    }
    bool linear() const { return linear_; }

    /// Affine form of every normalized constraint; empty unless linear().
    const std::vector<AffineForm>& affine_constraints() const { return affine_; }

    /// Values of the objectives at `point`. Throws EvalError.
    std::vector<double> objective_values(std::span<const double> point) const;

private:
    std::string name_;
    std::vector<std::string> variables_;
    std::vector<Constraint> constraints_;
    std::vector<Expr> objectives_;
    std::vector<AffineForm> affine_;
    bool linear_ = false;
};

/// Parses the line-oriented problem file format.
Problem load_problem(std::string_view text);
Problem load_problem_file(const std::filesystem::path& path);

/// max_i h_i(point). Propagates EvalError.
double aggregate_H(const Problem& p, std::span<const double> point);

struct Membership {
    bool member = false;
    std::optional<std::string> diagnostic;
};

/// Closed-set indicator: member iff aggregate_H <= 0. Evaluation failures
/// yield a non-member with the error text as diagnostic.
Membership indicator(const Problem& p, std::span<const double> point);

/// aggregate_H that maps evaluation failures to +infinity.
double aggregate_H_or_inf(const Problem& p, std::span<const double> point) noexcept;

/// Same verdict as aggregate_H_or_inf(p, point) <= 0, stopping at the first
/// violated constraint.
bool feasible(const Problem& p, std::span<const double> point) noexcept;

}  // namespace raypareto
