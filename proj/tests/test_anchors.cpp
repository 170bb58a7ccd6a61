#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "raypareto/anchors.hpp"

#include <cmath>
#include <random>

using namespace raypareto;

namespace {

const ScanConfig kScan;
const AnchorGrid kGrid;

// Lowest feasible grid node on the line y1 = 0 at spacing 1/1000, by the
// oracle's per-constraint check.
double grid_min_y2_on_axis(const Problem& p) {
    for (int j = 0; j <= 10000; ++j) {
        const double y2 = j * 1e-3;
        if (oracle::satisfies_all(p, {0.0, y2})) return y2;
    }
    return std::nan("");
}

}  // namespace

TEST_CASE("LP fixture anchors") {
    const Problem lp = fixtures::load("lp_example.prob");
    const auto hs = oracle::lp_fixture_halfplanes();

    const AnchorSolution a = solve_anchor(lp, 0, kScan, kGrid);
    const auto oa = oracle::vertex_minimum(hs, {1, 0});
    REQUIRE(oa);
    CHECK(std::fabs(a.value - 1.0) <= 1e-9);
    CHECK(std::fabs(a.witness[0] - 1.0) <= 1e-9);
    CHECK(std::fabs(a.witness[1] - 8.0) <= 1e-9);
    CHECK(std::fabs(oa->point[0] - 1.0) <= 1e-12);
    CHECK(std::fabs(oa->point[1] - 8.0) <= 1e-12);

    const AnchorSolution b = solve_anchor(lp, 1, kScan, kGrid);
    CHECK(std::fabs(b.value - 1.0) <= 1e-9);
    CHECK(std::fabs(b.witness[0] - 5.0) <= 1e-9);
    CHECK(std::fabs(b.witness[1] - 1.0) <= 1e-9);
    const auto ob = oracle::vertex_minimum(hs, {0, 1});
    REQUIRE(ob);
    CHECK(std::fabs(ob->point[0] - 5.0) <= 1e-12);
}

TEST_CASE("non-convex fixture anchors") {
    const Problem nc = fixtures::load("nonconvex.prob");
    const AnchorSolution a = solve_anchor(nc, 0, kScan, kGrid);
    CHECK(std::fabs(a.value) <= 1e-6);
    CHECK(std::fabs(a.witness[1] - 3.0) <= 1e-6);
    CHECK(a.window_limited);
    CHECK(std::fabs(grid_min_y2_on_axis(nc) - 3.0) <= 1e-3);
    CHECK(aggregate_H(nc, std::vector<double>{a.witness[0], a.witness[1]}) <= kScan.tol_feas);

    const AnchorSolution b = solve_anchor(nc, 1, kScan, kGrid);
    CHECK(std::fabs(b.value) <= 1e-6);
    CHECK(std::fabs(b.witness[0] - 3.0) <= 1e-6);

    const Anchors both = solve_anchors(nc, kScan, kGrid);
    CHECK(both.ideal().coordinates[0] == a.value);
    CHECK(both.ideal().coordinates[1] == b.value);
    CHECK_FALSE(both.coincide());
}

TEST_CASE("nonlinear route converges on a curved boundary") {
    const Problem disk = load_problem("vars y1 y2\nconstraint (y1 - 3)^2 + (y2 - 3)^2 <= 1\n");
    const AnchorSolution a = solve_anchor(disk, 0, kScan, kGrid);
    CHECK(std::fabs(a.value - 2.0) <= 1e-6);
    CHECK(std::fabs(a.witness[1] - 3.0) <= 1e-2);
    CHECK_FALSE(a.window_limited);
}

TEST_CASE("anchor failures") {
    CHECK_THROWS_AS(solve_anchor(fixtures::load("empty.prob"), 0, kScan, kGrid), AnchorError);
    const Problem none = load_problem("vars y1 y2\nconstraint y1^2 + y2^2 <= -1\n");
    try {
        solve_anchor(none, 0, kScan, kGrid);
        FAIL("expected AnchorError");
    } catch (const AnchorError& e) {
        CHECK(std::string(e.what()).find("window") != std::string::npos);
    }
    const Problem open = load_problem("vars y1 y2\nconstraint y1 + y2 >= 1\n");
    CHECK_NOTHROW(solve_anchor(open, 0, kScan, kGrid));
}

TEST_CASE("shift examples") {
    const Problem lp = fixtures::load("lp_example.prob");
    const Problem s = shift_to_ideal(lp, IdealPoint{{1.0, 1.0}});
    const auto form = extract_affine(s.constraints()[0].normalized, s.variables());
    REQUIRE(form);
    CHECK(form->coefficients == std::vector<double>{-1.0, -1.0});
    CHECK(form->constant == 3.0);
    CHECK(s.linear());

    const Problem nc = fixtures::load("nonconvex.prob");
    const Problem same = shift_to_ideal(nc, IdealPoint{{0.0, 0.0}});
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> c(-5, 5);
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> y{c(rng), c(rng)};
        CHECK(aggregate_H(same, y) == aggregate_H(nc, y));
    }

    const Problem there = shift_problem(shift_problem(nc, {0.7, -1.3}), {-0.7, 1.3});
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> y{c(rng), c(rng)};
        const double want = aggregate_H(nc, y);
        CHECK(std::fabs(aggregate_H(there, y) - want) <= 1e-9 * std::max(1.0, std::fabs(want)));
    }
}

TEST_CASE("property: shifted H equals original H at the shifted point, exactly") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> c(-4, 8);
    for (const char* name : {"lp_example.prob", "nonconvex.prob", "bump.prob"}) {
        const Problem p = fixtures::load(name);
        const IdealPoint ideal{{c(rng), c(rng)}};
        const Problem s = shift_to_ideal(p, ideal);
        for (int i = 0; i < 1000; ++i) {
            const std::vector<double> yt{c(rng), c(rng)};
            const std::vector<double> y{yt[0] + ideal.coordinates[0], yt[1] + ideal.coordinates[1]};
            CHECK(aggregate_H(s, yt) == aggregate_H(p, y));
        }
    }
}

TEST_CASE("property: no feasible sample beats an anchor") {
    for (const char* name : {"lp_example.prob", "nonconvex.prob", "bump.prob"}) {
        const Problem p = fixtures::load(name);
        const Anchors a = solve_anchors(p, kScan, kGrid);
        const auto samples = sample_feasible(p, kGrid, 100000, 42);
        CHECK(samples.size() == 100000);
        std::size_t below = 0;
        for (const auto& y : samples) {
            if (y[0] < a.y1_min.value - 1e-6 || y[1] < a.y2_min.value - 1e-6) ++below;
        }
        INFO(name);
        CHECK(below == 0);
    }
}

TEST_CASE("property: cone membership is componentwise, 100 x 100 grid") {
    const Point2 apex{1.5, -0.5};
    const Cone k{apex, ConeKind::lower_left};
    const Cone k0{apex, ConeKind::containing};
    for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 100; ++j) {
            const Point2 y{apex[0] - 1.0 + 0.02 * i, apex[1] - 1.0 + 0.02 * j};
            CHECK(k.contains(y) == (y[0] <= apex[0] && y[1] <= apex[1]));
            CHECK(k0.contains(y) == (y[0] >= apex[0] && y[1] >= apex[1]));
        }
    }
    CHECK(k.contains(apex));
    CHECK(k0.contains(apex));
}

TEST_CASE("condition (B) reports") {
    const ConditionBConfig bcfg;
    {
        const Problem nc = fixtures::load("nonconvex.prob");
        const ConditionBReport r = check_condition_B(nc, solve_anchors(nc, kScan, kGrid), kScan, kGrid, bcfg);
        CHECK(r.ideal_infeasible);
        CHECK(r.ideal_H == 16.0);
        CHECK(r.ideal_in_K0);
        CHECK(r.vertical_sampled == bcfg.lines);
        CHECK(r.vertical_evidence() == 1.0);
        CHECK(r.horizontal_evidence() == 1.0);
        CHECK(r.verdict == ConditionBVerdict::holds_on_evidence);
    }
    {
        const Problem lp = fixtures::load("lp_example.prob");
        const ConditionBReport r = check_condition_B(lp, solve_anchors(lp, kScan, kGrid), kScan, kGrid, bcfg);
        CHECK(r.ideal_infeasible);
        CHECK(r.verdict == ConditionBVerdict::holds_on_evidence);
        CHECK(r.k0_violations == 0);
    }
    {
        const Problem boxes = fixtures::load("two_boxes.prob");
        const Anchors a = solve_anchors(boxes, kScan, kGrid);
        CHECK(a.coincide());
        const ConditionBReport r = check_condition_B(boxes, a, kScan, kGrid, bcfg);
        CHECK_FALSE(r.ideal_infeasible);
        CHECK(r.verdict == ConditionBVerdict::fails);
    }
    {
        const Problem bump = fixtures::load("bump.prob");
        const ConditionBReport r = check_condition_B(bump, solve_anchors(bump, kScan, kGrid), kScan, kGrid, bcfg);
        CHECK(r.ideal_infeasible);
        CHECK_FALSE(r.vertical_counterexamples.empty());
        CHECK(r.verdict == ConditionBVerdict::fails);
    }
    CHECK(to_string(ConditionBVerdict::holds_on_evidence) == "holds-on-evidence");
}
