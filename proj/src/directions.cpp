#include "raypareto/directions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace raypareto {

Angles::Angles(std::vector<double> values) : values_(std::move(values)) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        const bool last = i + 1 == values_.size();
        const double hi = (i == 0 && !last) ? std::numbers::pi : two_pi;
        if (!(v >= 0.0 && v <= hi)) {
            throw std::domain_error("angle " + std::to_string(i + 1) + " = " + std::to_string(v) +
                                    " outside [0, " + std::to_string(hi) + "]");
        }
    }
}

UnitDirection::UnitDirection(std::vector<double> components) : components_(std::move(components)) {
    double norm2 = 0.0;
    for (double c : components_) norm2 += c * c;
    if (components_.empty() || !(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw std::invalid_argument("direction must be a finite non-zero vector");
    }
    const double norm = std::sqrt(norm2);
    for (double& c : components_) c /= norm;
}

UnitDirection unit_from_angles(const Angles& a) {
    const auto& phi = a.values();
    const std::size_t n = phi.size() + 1;
    UnitDirection u;
    u.components_.resize(n);
    double sin_prod = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        u.components_[i] = sin_prod * std::cos(phi[i]);
        sin_prod *= std::sin(phi[i]);
    }
    u.components_[n - 1] = sin_prod;
    return u;
}

Angles angles_from_unit(const UnitDirection& u) {
    const auto& c = u.components();
    const std::size_t n = c.size();
    if (n < 2) return Angles{};
    std::vector<double> phi(n - 1);
    // tail[i] = |(c_i, ..., c_{n-1})|
    std::vector<double> tail(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) tail[i] = std::hypot(tail[i + 1], c[i]);
    for (std::size_t i = 0; i + 2 < n; ++i) phi[i] = std::atan2(tail[i + 1], c[i]);
    double last = std::atan2(c[n - 1], c[n - 2]);
    if (last < 0.0) last += 2.0 * std::numbers::pi;
    phi[n - 2] = last;
    return Angles(std::move(phi));
}

std::vector<Angles> sweep_2d(std::size_t count, double lo, double hi) {
    if (count < 2) throw std::domain_error("sweep needs at least 2 angles");
    if (!(lo >= 0.0 && lo < hi && hi <= std::numbers::pi / 2)) {
        throw std::domain_error("sweep bounds must satisfy 0 <= lo < hi <= pi/2");
    }
    std::vector<Angles> out;
    out.reserve(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        double v = i + 1 == count ? hi : lo + step * static_cast<double>(i);
        out.emplace_back(std::vector<double>{v});
    }
    return out;
}

}  // namespace raypareto
