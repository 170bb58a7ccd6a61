#include "raypareto/rayscan.hpp"

#include <cmath>
#include <stdexcept>

namespace raypareto {

std::vector<double> Ray::point_at(double tau) const {
    std::vector<double> x(origin);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += direction[i] * tau;
    return x;
}

void ScanConfig::validate() const {
    if (!(tau_max > 0.0) || !(step > 0.0) || !(tol_root > 0.0) || !(tol_feas > 0.0)) {
        throw std::invalid_argument("scan config: tau_max, step and tolerances must be positive");
    }
    if (!(step < tau_max)) throw std::invalid_argument("scan config: step must be smaller than tau_max");
}

RootResult refine_root(const std::function<double(double)>& g, double a, double b, double tol) {
    if (a > b) std::swap(a, b);
    double ga = g(a);
    double gb = g(b);
    if (ga == 0.0) return {a, 0.0, 0.0};
    if (gb == 0.0) return {b, 0.0, 0.0};
    const bool a_positive = ga > 0.0;
    if (a_positive == (gb > 0.0)) {
        throw std::invalid_argument("refine_root: bracket has no sign change");
    }
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;  // bracket at double resolution
        if ((g(mid) > 0.0) == a_positive) {
            a = mid;
        } else {
            b = mid;
        }
    }
    const double tau = 0.5 * (a + b);
    return {tau, std::fabs(g(tau)), b - a};
}

FeasibleIntervals feasible_set(const Problem& p, const Ray& r, const ScanConfig& cfg) {
    cfg.validate();
    if (r.origin.size() != p.dimension() || r.direction.dimension() != p.dimension()) {
        throw std::invalid_argument("ray dimension does not match problem dimension");
    }

    FeasibleIntervals out;
    std::vector<double> x(p.dimension());
    auto place = [&](double tau) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = r.origin[i] + r.direction[i] * tau;
    };
    auto g = [&](double tau) {
        place(tau);
        return aggregate_H_or_inf(p, x);
    };

    std::vector<double> nodes;
    for (std::size_t j = 0;; ++j) {
        const double tau = cfg.step * static_cast<double>(j);
        if (tau >= cfg.tau_max * (1.0 - 1e-12)) break;
        nodes.push_back(tau);
    }
    nodes.push_back(cfg.tau_max);

    std::vector<char> feasible(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        place(nodes[j]);
        try {
            feasible[j] = aggregate_H(p, x) <= 0.0;
        } catch (const EvalError& e) {
            feasible[j] = 0;
            out.diagnostics.push_back("tau=" + std::to_string(nodes[j]) + ": " + e.what());
        }
    }

    const std::size_t last = nodes.size() - 1;
    for (std::size_t j = 0; j <= last; ++j) {
        if (!feasible[j]) continue;
        Interval iv;
        if (j == 0) {
            iv.lo = nodes[0];
            iv.lo_kind = EndpointKind::scan_limit;
        } else {
            iv.lo = refine_root(g, nodes[j - 1], nodes[j], cfg.tol_root).tau;
            iv.lo_kind = EndpointKind::refined_root;
        }
        std::size_t k = j;
        while (k < last && feasible[k + 1]) ++k;
        if (k == last) {
            iv.hi = nodes[last];
            iv.hi_kind = EndpointKind::scan_limit;
        } else {
            iv.hi = refine_root(g, nodes[k], nodes[k + 1], cfg.tol_root).tau;
            iv.hi_kind = EndpointKind::refined_root;
        }
        out.intervals.push_back(iv);
        j = k;
    }
    return out;
}

}  // namespace raypareto
