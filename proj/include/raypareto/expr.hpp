#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace raypareto {

/// Thrown by parse() with the byte offset of the offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Thrown by evaluation on division by zero or an unbound variable.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExprKind { constant, variable, negate, add, sub, mul, div, pow };

struct ExprNode;

using Binding = std::map<std::string, double, std::less<>>;

/// Immutable arithmetic expression tree over named variables.
///
/// Nodes are shared; copying an Expr is cheap. Variables carry an optional
/// slot index assigned by bind(), which enables positional evaluation.
class Expr {
public:
    static Expr constant(double value);
    static Expr variable(std::string name);
    static Expr negate(Expr operand);
    static Expr binary(ExprKind kind, Expr lhs, Expr rhs);
    static Expr power(Expr base, int exponent);

    ExprKind kind() const;

    /// Evaluates with variables looked up by name.
    double eval(const Binding& binding) const;

    /// Evaluates with variables looked up by slot. Requires bind().
    double eval(std::span<const double> values) const;

    /// Resolves every variable to its position in `variables`.
    /// Throws std::invalid_argument naming the first unknown identifier.
    Expr bind(std::span<const std::string> variables) const;

    /// Replaces variables by expressions; unmapped variables are kept.
    Expr substitute(const std::map<std::string, Expr, std::less<>>& replacements) const;

    /// Distinct variable names in first-occurrence order.
    std::vector<std::string> variables() const;

    /// Fully parenthesized text that parses back to an equivalent tree.
    std::string to_string() const;

    const ExprNode& node() const { return *root_; }

private:
    explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}
    std::shared_ptr<const ExprNode> root_;

    friend struct ExprNode;
};

struct ExprNode {
    ExprKind kind = ExprKind::constant;
    double value = 0.0;
    std::string name;
    int slot = -1;
    int exponent = 0;
    std::optional<Expr> lhs;
    std::optional<Expr> rhs;
};

Expr parse(std::string_view text);

/// Affine function sum_i coefficients[i] * x_i + constant.
struct AffineForm {
    std::vector<double> coefficients;
    double constant = 0.0;

    double eval(std::span<const double> values) const;
};

/// Returns the affine form of `e` over `variables`, or nullopt when `e` is not
/// of total degree <= 1 once constant subtrees are folded.
std::optional<AffineForm> extract_affine(const Expr& e, std::span<const std::string> variables);

}  // namespace raypareto
