#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace raypareto {

/// Hyperspherical angles (phi_1 .. phi_{n-1}) of a direction in R^n.
///
/// phi_1 lies in [0, pi] and the others in [0, 2 pi]. When phi_1 is also the
/// last angle (n = 2) it ranges over [0, 2 pi] so the whole circle is reachable.
class Angles {
public:
    Angles() = default;
    /// Throws std::domain_error when an angle is out of range.
    explicit Angles(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t dimension() const { return values_.size() + 1; }

private:
    std::vector<double> values_;
};

/// Unit-norm vector; construction normalizes and rejects the zero vector.
class UnitDirection {
public:
    explicit UnitDirection(std::vector<double> components);

    const std::vector<double>& components() const { return components_; }
    std::size_t dimension() const { return components_.size(); }
    double operator[](std::size_t i) const { return components_[i]; }

private:
    UnitDirection() = default;
    std::vector<double> components_;

    friend UnitDirection unit_from_angles(const Angles& a);
};

/// u_i = sin(phi_1)...sin(phi_{i-1}) cos(phi_i) for i < n,
/// u_n = sin(phi_1)...sin(phi_{n-1}). An empty tuple gives (1).
UnitDirection unit_from_angles(const Angles& a);

/// Inverse of unit_from_angles (angles in their canonical ranges).
Angles angles_from_unit(const UnitDirection& u);

/// `count` evenly spaced angles on [lo, hi] inclusive; 0 <= lo < hi <= pi/2.
std::vector<Angles> sweep_2d(std::size_t count, double lo, double hi);

}  // namespace raypareto
