#include "raypareto/problem.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace raypareto {

namespace {

std::string join_messages(const std::vector<std::string>& messages) {
    std::string out;
    for (const auto& m : messages) {
        if (!out.empty()) out += "\n";
        out += m;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> words;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) words.push_back(w);
    return words;
}

bool valid_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string where(std::size_t line) { return line == 0 ? std::string() : "line " + std::to_string(line) + ": "; }

}  // namespace

ProblemError::ProblemError(std::vector<std::string> messages)
    : std::runtime_error(join_messages(messages)), messages_(std::move(messages)) {}

Constraint Constraint::make(Expr lhs, Relation relation, Expr rhs, std::size_t line) {
    Expr normalized = relation == Relation::less_equal ? Expr::binary(ExprKind::sub, lhs, rhs)
                                                       : Expr::binary(ExprKind::sub, rhs, lhs);
    return Constraint{std::move(lhs), relation, std::move(rhs), std::move(normalized), line};
}

Problem Problem::make(std::string name, std::vector<std::string> variables, std::vector<Constraint> constraints,
                      std::vector<Expr> objectives) {
    std::vector<std::string> errors;
    if (variables.empty()) errors.push_back("no variables declared");
    std::set<std::string> declared;
    for (const auto& v : variables) {
        if (!valid_identifier(v)) errors.push_back("invalid variable name '" + v + "'");
        if (!declared.insert(v).second) errors.push_back("duplicate variable '" + v + "'");
    }
    if (constraints.empty()) errors.push_back("no constraints");
    if (objectives.size() == 1) errors.push_back("exactly one objective given; vector optimization needs 0 or >= 2");

    auto check_vars = [&](const Expr& e, std::size_t line, const char* what) {
        for (const auto& v : e.variables()) {
            if (!declared.count(v)) errors.push_back(where(line) + "undeclared variable '" + v + "' in " + what);
        }
    };
    for (const auto& c : constraints) check_vars(c.normalized, c.line, "constraint");
    for (const auto& o : objectives) check_vars(o, 0, "objective");
    if (!errors.empty()) throw ProblemError(std::move(errors));

    Problem p;
    p.name_ = std::move(name);
    p.variables_ = std::move(variables);
    for (auto& c : constraints) {
        c.lhs = c.lhs.bind(p.variables_);
        c.rhs = c.rhs.bind(p.variables_);
        c.normalized = c.normalized.bind(p.variables_);
        p.constraints_.push_back(std::move(c));
    }
    for (auto& o : objectives) p.objectives_.push_back(o.bind(p.variables_));

    p.linear_ = true;
    for (const auto& c : p.constraints_) {
        auto form = extract_affine(c.normalized, p.variables_);
        if (!form) {
            p.linear_ = false;
            p.affine_.clear();
            break;
        }
        p.affine_.push_back(std::move(*form));
    }
    return p;
}

std::vector<double> Problem::objective_values(std::span<const double> point) const {
    std::vector<double> out;
    out.reserve(objectives_.size());
    for (const auto& o : objectives_) out.push_back(o.eval(point));
    return out;
}

Problem load_problem(std::string_view text) {
    std::string name;
    std::vector<std::string> variables;
    bool have_vars = false;
    std::vector<Constraint> constraints;
    std::vector<Expr> objectives;
    std::vector<std::string> errors;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        std::size_t space = line.find_first_of(" \t");
        std::string_view keyword = line.substr(0, space);
        std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
        const std::string at = where(line_no);

        try {
            if (keyword == "problem") {
                auto words = split_words(rest);
                if (words.size() != 1) {
                    errors.push_back(at + "'problem' expects exactly one name");
                } else {
                    name = words[0];
                }
            } else if (keyword == "vars") {
                if (have_vars) errors.push_back(at + "'vars' declared more than once");
                have_vars = true;
                auto words = split_words(rest);
                if (words.empty()) errors.push_back(at + "'vars' needs at least one identifier");
                variables.insert(variables.end(), words.begin(), words.end());
            } else if (keyword == "constraint") {
                std::size_t le = rest.find("<=");
                std::size_t ge = rest.find(">=");
                std::size_t count = 0;
                for (std::string_view op : {"<=", ">="}) {
                    for (std::size_t p = rest.find(op); p != std::string_view::npos; p = rest.find(op, p + 2)) ++count;
                }
                if (count != 1) {
                    errors.push_back(at + "constraint needs exactly one '<=' or '>='");
                } else {
                    std::size_t pos = le != std::string_view::npos ? le : ge;
                    Relation rel = le != std::string_view::npos ? Relation::less_equal : Relation::greater_equal;
                    Expr lhs = parse(rest.substr(0, pos));
                    Expr rhs = parse(rest.substr(pos + 2));
                    constraints.push_back(Constraint::make(std::move(lhs), rel, std::move(rhs), line_no));
                }
            } else if (keyword == "minimize") {
                objectives.push_back(parse(rest));
            } else {
                errors.push_back(at + "unknown keyword '" + std::string(keyword) + "'");
            }
        } catch (const ParseError& e) {
            errors.push_back(at + e.what());
        }
        if (end == text.size()) break;
    }

    if (!have_vars) errors.push_back("missing 'vars' line");
    if (!errors.empty()) throw ProblemError(std::move(errors));
    return Problem::make(std::move(name), std::move(variables), std::move(constraints), std::move(objectives));
}

Problem load_problem_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ProblemError({"cannot open problem file '" + path.string() + "'"});
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_problem(buf.str());
    } catch (const ProblemError& e) {
        std::vector<std::string> prefixed;
        for (const auto& m : e.messages()) prefixed.push_back(path.string() + ": " + m);
        throw ProblemError(std::move(prefixed));
    }
}

double aggregate_H(const Problem& p, std::span<const double> point) {
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& c : p.constraints()) h = std::max(h, c.normalized.eval(point));
    return h;
}

double aggregate_H_or_inf(const Problem& p, std::span<const double> point) noexcept {
    try {
        return aggregate_H(p, point);
    } catch (...) {
        return std::numeric_limits<double>::infinity();
    }
}

bool feasible(const Problem& p, std::span<const double> point) noexcept {
    try {
        for (const auto& c : p.constraints()) {
            if (!(c.normalized.eval(point) <= 0.0)) return false;
        }
        return true;
    } catch (...) {
        return false;
    }
}

Membership indicator(const Problem& p, std::span<const double> point) {
    try {
        return Membership{aggregate_H(p, point) <= 0.0, std::nullopt};
    } catch (const EvalError& e) {
        return Membership{false, std::string(e.what())};
    }
}

}  // namespace raypareto
