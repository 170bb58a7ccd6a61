#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "raypareto/rayscan.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace raypareto;
using std::numbers::pi;

namespace {

Ray ray_at(double phi, std::vector<double> origin = {0.0, 0.0}) {
    return Ray{std::move(origin), unit_from_angles(Angles({phi}))};
}

bool inside(const FeasibleIntervals& t, double tau) {
    for (const auto& iv : t.intervals) {
        if (tau >= iv.lo && tau <= iv.hi) return true;
    }
    return false;
}

double distance_to_endpoint(const FeasibleIntervals& t, double tau) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& iv : t.intervals) {
        best = std::min({best, std::fabs(tau - iv.lo), std::fabs(tau - iv.hi)});
    }
    return best;
}

}  // namespace

TEST_CASE("refine_root examples") {
    const RootResult a = refine_root([](double t) { return t - 2.0; }, 0.0, 10.0, 1e-9);
    CHECK(std::fabs(a.tau - 2.0) <= 1e-9);
    CHECK(a.width <= 1e-9);

    const RootResult b = refine_root([](double t) { return t * t - 2.0; }, 1.0, 2.0, 1e-9);
    CHECK(std::fabs(b.tau - std::sqrt(2.0)) <= 1e-9);
    CHECK(b.residual <= 1e-8);

    // Coarse bracket around the diagonal crossing of the non-convex fixture.
    const Problem nc = fixtures::load("nonconvex.prob");
    const Ray r = ray_at(pi / 4);
    auto g = [&](double t) { return aggregate_H(nc, r.point_at(t)); };
    const RootResult c = refine_root(g, 2.37, 2.38, 1e-9);
    CHECK(std::fabs(c.tau - 2.37841) <= 1e-5);
    CHECK(std::fabs(c.tau - std::pow(2.0, 0.75) * std::sqrt(2.0)) <= 1e-9);

    CHECK_THROWS_AS(refine_root([](double t) { return t + 1.0; }, 0.0, 1.0, 1e-9), std::invalid_argument);
    const RootResult exact = refine_root([](double t) { return t - 1.0; }, 1.0, 3.0, 1e-9);
    CHECK(exact.tau == 1.0);
}

TEST_CASE("example1 fixture: ray intersects X in one interval") {
    const Problem ex = fixtures::load("example1.prob");
    const ScanConfig cfg;
    for (double phi : {0.05, 0.4, pi / 4, 1.2, 1.5}) {
        const FeasibleIntervals t = feasible_set(ex, ray_at(phi), cfg);
        REQUIRE(t.intervals.size() == 1);
        const Interval& iv = t.intervals.front();
        CHECK(std::fabs(iv.lo - 1.0 / (std::cos(phi) + std::sin(phi))) <= 1e-9);
        CHECK(iv.lo_kind == EndpointKind::refined_root);
        CHECK(iv.hi == cfg.tau_max);
        CHECK(iv.hi_kind == EndpointKind::scan_limit);
    }
}

TEST_CASE("two-ring problem gives two intervals") {
    const Problem ring = fixtures::load("two_ring.prob");
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ang(0.0, 2 * pi);
    for (int i = 0; i < 20; ++i) {
        const FeasibleIntervals t = feasible_set(ring, ray_at(ang(rng)), ScanConfig{});
        REQUIRE(t.intervals.size() == 2);
        CHECK(t.intervals[0].lo == 0.0);
        CHECK(t.intervals[0].lo_kind == EndpointKind::scan_limit);
        CHECK(std::fabs(t.intervals[0].hi - 1.0) <= 1e-9);
        CHECK(std::fabs(t.intervals[1].lo - 2.0) <= 1e-9);
        CHECK(std::fabs(t.intervals[1].hi - 3.0) <= 1e-9);
        CHECK(t.intervals[1].hi_kind == EndpointKind::refined_root);
    }
}

TEST_CASE("non-convex diagonal ray") {
    const Problem nc = fixtures::load("nonconvex.prob");
    const FeasibleIntervals t = feasible_set(nc, ray_at(pi / 4), ScanConfig{});
    REQUIRE_FALSE(t.empty());
    const double analytic = std::pow(2.0, 0.75) * std::sqrt(2.0);
    CHECK(std::fabs(t.intervals.front().lo - analytic) <= 1e-9);
    const auto dense = oracle::dense_first_feasible(nc, {0, 0}, {std::cos(pi / 4), std::sin(pi / 4)}, 10.0, 1e-4);
    REQUIRE(dense);
    CHECK(std::fabs(t.intervals.front().lo - *dense) <= 1e-4);
}

TEST_CASE("evaluation failure at a node becomes a diagnostic") {
    const Problem p = load_problem("vars x1 x2\nconstraint 1/(x1 - 0.5) <= 100\n");
    const FeasibleIntervals t = feasible_set(p, ray_at(0.0), ScanConfig{});
    CHECK_FALSE(t.diagnostics.empty());
    CHECK_FALSE(inside(t, 0.5));
}

TEST_CASE("ScanConfig validation") {
    CHECK_THROWS_AS((ScanConfig{1.0, 2.0, 1e-9, 1e-9}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((ScanConfig{10.0, 0.01, 0.0, 1e-9}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((ScanConfig{-1.0, 0.01, 1e-9, 1e-9}).validate(), std::invalid_argument);
    CHECK_NOTHROW(ScanConfig{}.validate());
}

TEST_CASE("property: midpoints feasible and refined endpoints near the boundary") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ang(0.0, pi / 2);
    const ScanConfig cfg;
    for (const char* name : {"lp_example.prob", "nonconvex.prob"}) {
        const Problem p = fixtures::load(name);
        for (int i = 0; i < 100; ++i) {
            const Ray r = ray_at(ang(rng));
            const FeasibleIntervals t = feasible_set(p, r, cfg);
            for (const auto& iv : t.intervals) {
                CHECK(iv.lo <= iv.hi);
                CHECK(aggregate_H(p, r.point_at(0.5 * (iv.lo + iv.hi))) <= cfg.tol_feas);
                if (iv.lo_kind == EndpointKind::refined_root) CHECK(std::fabs(aggregate_H(p, r.point_at(iv.lo))) <= 1e-6);
                if (iv.hi_kind == EndpointKind::refined_root) CHECK(std::fabs(aggregate_H(p, r.point_at(iv.hi))) <= 1e-6);
            }
            for (std::size_t k = 1; k < t.intervals.size(); ++k) CHECK(t.intervals[k - 1].hi < t.intervals[k].lo);
        }
    }
}

TEST_CASE("property: dense scan oracle agrees on 50 random rays per fixture") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> ang(0.0, 2 * pi);
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    const ScanConfig cfg;
    const double dense_step = cfg.step / 100;
    for (const char* name : {"lp_example.prob", "nonconvex.prob", "example1.prob", "two_ring.prob"}) {
        const Problem p = fixtures::load(name);
        std::size_t checked = 0;
        for (int i = 0; i < 50; ++i) {
            const Ray r = ray_at(ang(rng), {off(rng), off(rng)});
            const FeasibleIntervals t = feasible_set(p, r, cfg);
            for (std::size_t k = 0; k * dense_step <= cfg.tau_max; ++k) {
                const double tau = static_cast<double>(k) * dense_step;
                const auto x = r.point_at(tau);
                const bool truth = oracle::satisfies_all(p, {x[0], x[1]});
                if (truth != inside(t, tau) && distance_to_endpoint(t, tau) > cfg.tol_root) {
                    FAIL_CHECK(name << " ray " << i << " tau " << tau);
                }
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("property: halving the step keeps every interval wider than two steps") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ang(0.0, 2 * pi);
    for (const char* name : {"nonconvex.prob", "two_ring.prob", "two_boxes.prob", "bump.prob"}) {
        const Problem p = fixtures::load(name);
        for (int i = 0; i < 30; ++i) {
            const Ray r = ray_at(ang(rng));
            ScanConfig coarse;
            coarse.step = 0.02;
            ScanConfig fine = coarse;
            fine.step = coarse.step / 2;
            const FeasibleIntervals a = feasible_set(p, r, coarse);
            const FeasibleIntervals b = feasible_set(p, r, fine);
            for (const auto& iv : a.intervals) {
                if (iv.hi - iv.lo <= 2 * coarse.step) continue;
                bool overlapped = false;
                for (const auto& jv : b.intervals) {
                    if (jv.lo <= iv.hi && jv.hi >= iv.lo) overlapped = true;
                }
                CHECK(overlapped);
            }
        }
    }
}
