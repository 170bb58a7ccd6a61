#pragma once

#include "raypareto/directions.hpp"
#include "raypareto/execution.hpp"
#include "raypareto/problem.hpp"
#include "raypareto/rayscan.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace raypareto {

/// One sample of Y = F(X), tagged with the ray parameters that produced it.
struct ImagePoint {
    std::size_t direction_index = 0;
    Angles angles;
    double tau = 0.0;
    std::vector<double> x;  ///< preimage origin + u * tau
    std::vector<double> y;  ///< F(x)
};

struct ImageCloud {
    std::vector<ImagePoint> points;
    std::vector<std::string> diagnostics;
    /// Directions whose feasible set was cut at tau_max.
    std::vector<std::size_t> truncated_directions;
};

/// Samples the image of a decision-space problem along rays from `origin`
/// (the zero vector when empty). Each feasible interval gets
/// `tau_per_interval` evenly spaced samples, endpoints included. Output order
/// is (direction, interval, tau) regardless of `exec`.
ImageCloud image_sample(const Problem& p, std::span<const Angles> angle_grid, std::size_t tau_per_interval,
                        const ScanConfig& cfg, Execution exec = Execution::parallel,
                        std::span<const double> origin = {});

/// F(x) = C x + b with C of shape k x n stored row-major.
class AffineMap {
public:
    AffineMap(std::vector<std::vector<double>> matrix, std::vector<double> offset);

    /// Affine map of the problem's objectives, if every objective is affine.
    static std::optional<AffineMap> from_objectives(const Problem& p);

    std::size_t rows() const { return matrix_.size(); }
    std::size_t cols() const { return cols_; }
    std::vector<double> apply(std::span<const double> x) const;

private:
    std::vector<std::vector<double>> matrix_;
    std::vector<double> offset_;
    std::size_t cols_ = 0;
};

/// Images of the segment endpoints. The image of the whole segment
/// [x_a, x_b] is the segment between the returned points.
std::pair<std::vector<double>, std::vector<double>> map_affine_segment(const AffineMap& m, std::span<const double> x_a,
                                                                       std::span<const double> x_b);

}  // namespace raypareto
