#include "raypareto/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace raypareto {

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

namespace {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

double pow_int(double base, int exponent, const Expr& where) {
    if (exponent < 0) {
        if (base == 0.0) {
            throw EvalError("division by zero in " + where.to_string());
        }
        return 1.0 / pow_int(base, -exponent, where);
    }
    double result = 1.0;
    auto n = static_cast<unsigned>(exponent);
    while (n != 0) {
        if (n & 1u) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

// Shared evaluation core; `lookup` resolves a variable node.
template <class Lookup>
double eval_node(const Expr& e, const Lookup& lookup) {
    const ExprNode& n = e.node();
    switch (n.kind) {
    case ExprKind::constant:
        return n.value;
    case ExprKind::variable:
        return lookup(n);
    case ExprKind::negate:
        return -eval_node(*n.lhs, lookup);
    case ExprKind::add:
        return eval_node(*n.lhs, lookup) + eval_node(*n.rhs, lookup);
    case ExprKind::sub:
        return eval_node(*n.lhs, lookup) - eval_node(*n.rhs, lookup);
    case ExprKind::mul:
        return eval_node(*n.lhs, lookup) * eval_node(*n.rhs, lookup);
    case ExprKind::div: {
        double num = eval_node(*n.lhs, lookup);
        double den = eval_node(*n.rhs, lookup);
        if (den == 0.0) {
            throw EvalError("division by zero in " + e.to_string());
        }
        return num / den;
    }
    case ExprKind::pow:
        return pow_int(eval_node(*n.lhs, lookup), n.exponent, e);
    }
    return 0.0;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        }
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(ExprKind::add, lhs, term());
            } else if (accept('-')) {
                lhs = Expr::binary(ExprKind::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    Expr term() {
        Expr lhs = factor();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(ExprKind::mul, lhs, factor());
            } else if (accept('/')) {
                lhs = Expr::binary(ExprKind::div, lhs, factor());
            } else {
                return lhs;
            }
        }
    }

    Expr factor() {
        if (accept('-')) return Expr::negate(factor());
        return power();
    }

    Expr power() {
        Expr base = atom();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            std::size_t at = pos_;
            Expr exponent = factor();
            if (!exponent.variables().empty()) {
                throw ParseError("exponent must be a constant", at);
            }
            double value = 0.0;
            try {
                value = exponent.eval(Binding{});
            } catch (const EvalError&) {
                throw ParseError("exponent does not evaluate", at);
            }
            if (!std::isfinite(value) || value != std::nearbyint(value) || std::fabs(value) > 1e6) {
                throw ParseError("exponent must be an integer", at);
            }
            return Expr::power(base, static_cast<int>(value));
        }
        return base;
    }

    Expr atom() {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of expression", pos_);
        }
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            if (!accept(')')) {
                throw ParseError("expected ')'", pos_);
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            return Expr::variable(std::string(text_.substr(start, pos_ - start)));
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    Expr number() {
        std::size_t start = pos_;
        auto digits = [&] {
            std::size_t from = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return pos_ - from;
        };
        std::size_t count = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            count += digits();
        }
        if (count == 0) {
            throw ParseError("malformed number", start);
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                throw ParseError("malformed exponent in number", mark);
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            throw ParseError("number out of range", start);
        }
        return Expr::constant(value);
    }
};

void collect_variables(const Expr& e, std::vector<std::string>& out, std::unordered_set<std::string>& seen) {
    const ExprNode& n = e.node();
    if (n.kind == ExprKind::variable) {
        if (seen.insert(n.name).second) out.push_back(n.name);
        return;
    }
    if (n.lhs) collect_variables(*n.lhs, out, seen);
    if (n.rhs) collect_variables(*n.rhs, out, seen);
}

bool is_constant_form(const AffineForm& f) {
    for (double c : f.coefficients) {
        if (c != 0.0) return false;
    }
    return true;
}

std::optional<AffineForm> affine_of(const Expr& e, std::span<const std::string> vars) {
    const ExprNode& n = e.node();
    const std::size_t dim = vars.size();
    switch (n.kind) {
    case ExprKind::constant:
        return AffineForm{std::vector<double>(dim, 0.0), n.value};
    case ExprKind::variable: {
        for (std::size_t i = 0; i < dim; ++i) {
            if (vars[i] == n.name) {
                AffineForm f{std::vector<double>(dim, 0.0), 0.0};
                f.coefficients[i] = 1.0;
                return f;
            }
        }
        return std::nullopt;
    }
    case ExprKind::negate: {
        auto f = affine_of(*n.lhs, vars);
        if (!f) return std::nullopt;
        for (double& c : f->coefficients) c = -c;
        f->constant = -f->constant;
        return f;
    }
    case ExprKind::add:
    case ExprKind::sub: {
        auto a = affine_of(*n.lhs, vars);
        auto b = affine_of(*n.rhs, vars);
        if (!a || !b) return std::nullopt;
        double sign = n.kind == ExprKind::add ? 1.0 : -1.0;
        for (std::size_t i = 0; i < dim; ++i) a->coefficients[i] += sign * b->coefficients[i];
        a->constant += sign * b->constant;
        return a;
    }
    case ExprKind::mul: {
        auto a = affine_of(*n.lhs, vars);
        auto b = affine_of(*n.rhs, vars);
        if (!a || !b) return std::nullopt;
        if (!is_constant_form(*a)) std::swap(a, b);
        if (!is_constant_form(*a)) return std::nullopt;
        double k = a->constant;
        for (double& c : b->coefficients) c *= k;
        b->constant *= k;
        return b;
    }
    case ExprKind::div: {
        auto a = affine_of(*n.lhs, vars);
        auto b = affine_of(*n.rhs, vars);
        if (!a || !b || !is_constant_form(*b) || b->constant == 0.0) return std::nullopt;
        for (double& c : a->coefficients) c /= b->constant;
        a->constant /= b->constant;
        return a;
    }
    case ExprKind::pow: {
        auto base = affine_of(*n.lhs, vars);
        if (!base) return std::nullopt;
        if (n.exponent == 0) return AffineForm{std::vector<double>(dim, 0.0), 1.0};
        if (n.exponent == 1) return base;
        if (!is_constant_form(*base)) return std::nullopt;
        if (base->constant == 0.0 && n.exponent < 0) return std::nullopt;
        return AffineForm{std::vector<double>(dim, 0.0), pow_int(base->constant, n.exponent, e)};
    }
    }
    return std::nullopt;
}

char op_char(ExprKind kind) {
    switch (kind) {
    case ExprKind::add: return '+';
    case ExprKind::sub: return '-';
    case ExprKind::mul: return '*';
    case ExprKind::div: return '/';
    default: return '?';
    }
}

}  // namespace

Expr Expr::constant(double value) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::constant;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::variable;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::negate;
    n->lhs = std::move(operand);
    return Expr(std::move(n));
}

Expr Expr::binary(ExprKind kind, Expr lhs, Expr rhs) {
    if (kind != ExprKind::add && kind != ExprKind::sub && kind != ExprKind::mul && kind != ExprKind::div) {
        throw std::invalid_argument("Expr::binary: not a binary operator");
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::pow;
    n->lhs = std::move(base);
    n->exponent = exponent;
    return Expr(std::move(n));
}

ExprKind Expr::kind() const { return root_->kind; }

double Expr::eval(const Binding& binding) const {
    return eval_node(*this, [&](const ExprNode& n) {
        auto it = binding.find(n.name);
        if (it == binding.end()) {
            throw EvalError("variable '" + n.name + "' is not bound");
        }
        return it->second;
    });
}

double Expr::eval(std::span<const double> values) const {
    return eval_node(*this, [&](const ExprNode& n) {
        if (n.slot < 0 || static_cast<std::size_t>(n.slot) >= values.size()) {
            throw EvalError("variable '" + n.name + "' has no slot");
        }
        return values[static_cast<std::size_t>(n.slot)];
    });
}

Expr Expr::bind(std::span<const std::string> variables) const {
    const ExprNode& n = *root_;
    if (n.kind == ExprKind::variable) {
        for (std::size_t i = 0; i < variables.size(); ++i) {
            if (variables[i] == n.name) {
                auto copy = std::make_shared<ExprNode>(n);
                copy->slot = static_cast<int>(i);
                return Expr(std::move(copy));
            }
        }
        throw std::invalid_argument("undeclared variable '" + n.name + "'");
    }
    if (!n.lhs) return *this;
    auto copy = std::make_shared<ExprNode>(n);
    copy->lhs = n.lhs->bind(variables);
    if (n.rhs) copy->rhs = n.rhs->bind(variables);
    return Expr(std::move(copy));
}

Expr Expr::substitute(const std::map<std::string, Expr, std::less<>>& replacements) const {
    const ExprNode& n = *root_;
    if (n.kind == ExprKind::variable) {
        auto it = replacements.find(n.name);
        return it == replacements.end() ? *this : it->second;
    }
    if (!n.lhs) return *this;
    auto copy = std::make_shared<ExprNode>(n);
    copy->lhs = n.lhs->substitute(replacements);
    if (n.rhs) copy->rhs = n.rhs->substitute(replacements);
    return Expr(std::move(copy));
}

std::vector<std::string> Expr::variables() const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    collect_variables(*this, out, seen);
    return out;
}

std::string Expr::to_string() const {
    const ExprNode& n = *root_;
    switch (n.kind) {
    case ExprKind::constant: {
        std::string s = format_double(n.value);
        return n.value < 0 || std::signbit(n.value) ? "(" + s + ")" : s;
    }
    case ExprKind::variable:
        return n.name;
    case ExprKind::negate:
        return "(-" + n.lhs->to_string() + ")";
    case ExprKind::pow: {
        std::string exp = std::to_string(n.exponent);
        if (n.exponent < 0) exp = "(" + exp + ")";
        return "(" + n.lhs->to_string() + "^" + exp + ")";
    }
    default:
        return "(" + n.lhs->to_string() + " " + op_char(n.kind) + " " + n.rhs->to_string() + ")";
    }
}

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

double AffineForm::eval(std::span<const double> values) const {
    double sum = constant;
    for (std::size_t i = 0; i < coefficients.size(); ++i) sum += coefficients[i] * values[i];
    return sum;
}

std::optional<AffineForm> extract_affine(const Expr& e, std::span<const std::string> variables) {
    return affine_of(e, variables);
}

}  // namespace raypareto
