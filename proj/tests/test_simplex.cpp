#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "raypareto/simplex.hpp"

#include <cmath>
#include <cstring>
#include <random>

using namespace raypareto;

namespace {

LinearConstraint row(std::vector<double> a, Relation r, double b) { return LinearConstraint{std::move(a), r, b}; }

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& c : lp.constraints) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coefficients[j] * x[j];
        const double v = c.relation == Relation::less_equal ? lhs - c.rhs : c.rhs - lhs;
        worst = std::max(worst, v);
    }
    for (double xi : x) worst = std::max(worst, -xi);
    return worst;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("solve_lp examples") {
    LinearProgram box{{-1, -1}, {row({1, 0}, Relation::less_equal, 1), row({0, 1}, Relation::less_equal, 1)}};
    const LpSolution a = solve_lp(box);
    REQUIRE(a.status == LpStatus::optimal);
    CHECK(a.objective == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(a.values[0] == doctest::Approx(1.0));
    CHECK(a.values[1] == doctest::Approx(1.0));

    const Problem lp = fixtures::load("lp_example.prob");
    const LpSolution b = solve_lp(build_coordinate_lp(lp, 0));
    REQUIRE(b.status == LpStatus::optimal);
    CHECK(std::fabs(b.objective - 1.0) <= 1e-9);
    const auto vmin = oracle::vertex_minimum(oracle::lp_fixture_halfplanes(), {1.0, 0.0});
    REQUIRE(vmin);
    CHECK(vmin->value == doctest::Approx(1.0));
    CHECK(vmin->point[1] == doctest::Approx(8.0));
    // min y1 has a unique optimum at the vertex (1, 8).
    CHECK(std::fabs(b.values[0] - 1.0) <= 1e-9);
    CHECK(std::fabs(b.values[1] - 8.0) <= 1e-9);

    LinearProgram unbounded{{-1}, {row({1}, Relation::greater_equal, 0)}};
    CHECK(solve_lp(unbounded).status == LpStatus::unbounded);

    LinearProgram infeasible{{1, 1}, {row({1, 1}, Relation::less_equal, 1), row({1, 1}, Relation::greater_equal, 2)}};
    CHECK(solve_lp(infeasible).status == LpStatus::infeasible);

    LinearProgram negative_rhs{{1}, {row({-1}, Relation::less_equal, -3)}};
    const LpSolution c = solve_lp(negative_rhs);
    REQUIRE(c.status == LpStatus::optimal);
    CHECK(c.values[0] == doctest::Approx(3.0));
}

TEST_CASE("malformed programs") {
    LinearProgram ragged{{1, 1}, {row({1}, Relation::less_equal, 1)}};
    CHECK_THROWS_AS(solve_lp(ragged), SimplexError);
    LinearProgram nan_rhs{{1}, {row({1}, Relation::less_equal, std::nan(""))}};
    CHECK_THROWS_AS(solve_lp(nan_rhs), SimplexError);
}

TEST_CASE("cone LP examples") {
    const Problem lp = fixtures::load("lp_example.prob");
    const UnitDirection diag({1.0, 1.0});
    const LinearProgram cone = build_cone_lp(lp, diag);
    CHECK(cone.objective == std::vector<double>{0, 0, 1});
    CHECK(cone.constraints.size() == lp.constraints().size() + 2);
    const LpSolution s = solve_lp(cone);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(std::fabs(s.values[2] - 2.5 * std::sqrt(2.0)) <= 1e-9);
    CHECK(std::fabs(s.values[0] - 2.5) <= 1e-9);
    CHECK(std::fabs(s.values[1] - 2.5) <= 1e-9);

    const Problem half = load_problem("vars y1 y2\nconstraint y1 >= 3\n");
    const LpSolution t = solve_lp(build_cone_lp(half, UnitDirection({1.0, 1e-9})));
    REQUIRE(t.status == LpStatus::optimal);
    CHECK(std::fabs(t.values[2] - 3.0) <= 1e-6);

    CHECK_THROWS_AS(build_cone_lp(lp, UnitDirection({1.0, 0.0})), std::invalid_argument);
    CHECK_THROWS_AS(build_cone_lp(fixtures::load("nonconvex.prob"), diag), std::invalid_argument);
}

TEST_CASE("degenerate vertex with many tight rows terminates") {
    // Ten rows through (1, 1), all tight at the optimum.
    LinearProgram lp;
    lp.objective = {1, 1};
    for (int k = 1; k <= 10; ++k) lp.constraints.push_back(row({double(k), double(11 - k)}, Relation::greater_equal, 11));
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(2.0));
}

TEST_CASE("property: 500 random LPs agree with vertex enumeration") {
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_real_distribution<double> pt(0.0, 6.0);
    std::uniform_int_distribution<int> nrows(1, 6);
    int optimal = 0;
    int infeasible = 0;
    for (int t = 0; t < 500; ++t) {
        LinearProgram lp;
        lp.objective = {double(coef(rng)), double(coef(rng))};
        std::vector<oracle::HalfPlane> hs{{1, 0, false, 0}, {0, 1, false, 0}};
        const bool force_feasible = t % 5 != 0;
        const oracle::P2 seed_point{pt(rng), pt(rng)};
        auto add = [&](double a1, double a2, Relation r, double b) {
            lp.constraints.push_back(row({a1, a2}, r, b));
            hs.push_back({a1, a2, r == Relation::less_equal, b});
        };
        add(1, 0, Relation::less_equal, 8);
        add(0, 1, Relation::less_equal, 8);
        for (int k = nrows(rng); k > 0; --k) {
            const double a1 = coef(rng);
            const double a2 = coef(rng);
            const Relation r = std::bernoulli_distribution(0.5)(rng) ? Relation::less_equal : Relation::greater_equal;
            double b = coef(rng) * 2.0;
            if (force_feasible) {
                const double at = a1 * seed_point[0] + a2 * seed_point[1];
                b = r == Relation::less_equal ? std::ceil(at) + std::abs(coef(rng)) : std::floor(at) - std::abs(coef(rng));
            }
            add(a1, a2, r, b);
        }
        const auto truth = oracle::vertex_minimum(hs, {lp.objective[0], lp.objective[1]});
        const LpSolution s = solve_lp(lp);
        if (!truth) {
            CHECK(s.status == LpStatus::infeasible);
            ++infeasible;
            continue;
        }
        REQUIRE(s.status == LpStatus::optimal);
        ++optimal;
        CHECK(std::fabs(s.objective - truth->value) <= 1e-7);
        CHECK(max_violation(lp, s.values) <= 1e-9);
        CHECK(std::fabs(s.objective - (lp.objective[0] * s.values[0] + lp.objective[1] * s.values[1])) <= 1e-9);
    }
    CHECK(optimal > 300);
    CHECK(infeasible > 0);
}

TEST_CASE("property: identical inputs give bit-identical outputs") {
    const Problem lp = fixtures::load("lp_example.prob");
    for (double phi = 0.05; phi < 1.55; phi += 0.05) {
        const UnitDirection u({std::cos(phi), std::sin(phi)});
        const LpSolution a = solve_lp(build_cone_lp(lp, u));
        const LpSolution b = solve_lp(build_cone_lp(lp, u));
        REQUIRE(a.status == b.status);
        CHECK(same_bits(a.objective, b.objective));
        for (std::size_t j = 0; j < a.values.size(); ++j) CHECK(same_bits(a.values[j], b.values[j]));
    }
}
