#include "raypareto/mapping.hpp"

#include <stdexcept>

namespace raypareto {

namespace {

struct DirectionSamples {
    std::vector<ImagePoint> points;
    std::vector<std::string> diagnostics;
    bool truncated = false;
};

DirectionSamples sample_direction(const Problem& p, std::size_t index, const Angles& angles,
                                  std::size_t tau_per_interval, const ScanConfig& cfg,
                                  const std::vector<double>& origin) {
    DirectionSamples out;
    Ray ray{origin, unit_from_angles(angles)};
    FeasibleIntervals t = feasible_set(p, ray, cfg);
    out.diagnostics = std::move(t.diagnostics);
    for (const Interval& iv : t.intervals) {
        if (iv.hi_kind == EndpointKind::scan_limit && iv.hi >= cfg.tau_max) out.truncated = true;
        const std::size_t count = iv.hi > iv.lo ? tau_per_interval : 1;
        for (std::size_t s = 0; s < count; ++s) {
            double tau = iv.lo;
            if (count > 1) {
                tau = s + 1 == count ? iv.hi
                                     : iv.lo + (iv.hi - iv.lo) * static_cast<double>(s) / static_cast<double>(count - 1);
            }
            ImagePoint pt;
            pt.direction_index = index;
            pt.angles = angles;
            pt.tau = tau;
            pt.x = ray.point_at(tau);
            try {
                pt.y = p.objective_values(pt.x);
            } catch (const EvalError& e) {
                out.diagnostics.push_back("direction " + std::to_string(index) + " tau=" + std::to_string(tau) +
                                          ": " + e.what());
                continue;
            }
            out.points.push_back(std::move(pt));
        }
    }
    return out;
}

}  // namespace

ImageCloud image_sample(const Problem& p, std::span<const Angles> angle_grid, std::size_t tau_per_interval,
                        const ScanConfig& cfg, Execution exec, std::span<const double> origin) {
    if (p.kind() != ProblemKind::decision_space) {
        throw std::invalid_argument("image_sample needs a problem with objectives");
    }
    if (tau_per_interval == 0) throw std::invalid_argument("image_sample needs at least one tau sample");
    cfg.validate();
    std::vector<double> o(origin.begin(), origin.end());
    if (o.empty()) o.assign(p.dimension(), 0.0);
    for (const auto& a : angle_grid) {
        if (a.dimension() != p.dimension()) throw std::invalid_argument("angle tuple does not match dimension");
    }

    std::vector<DirectionSamples> per_direction(angle_grid.size());
    for_each_index(exec, angle_grid.size(), [&](std::size_t i) {
        per_direction[i] = sample_direction(p, i, angle_grid[i], tau_per_interval, cfg, o);
    });

    ImageCloud cloud;
    for (std::size_t i = 0; i < per_direction.size(); ++i) {
        auto& d = per_direction[i];
        for (auto& pt : d.points) cloud.points.push_back(std::move(pt));
        for (auto& msg : d.diagnostics) cloud.diagnostics.push_back(std::move(msg));
        if (d.truncated) cloud.truncated_directions.push_back(i);
    }
    return cloud;
}

AffineMap::AffineMap(std::vector<std::vector<double>> matrix, std::vector<double> offset)
    : matrix_(std::move(matrix)), offset_(std::move(offset)) {
    if (matrix_.size() != offset_.size()) throw std::invalid_argument("affine map: row count != offset length");
    cols_ = matrix_.empty() ? 0 : matrix_.front().size();
    for (const auto& row : matrix_) {
        if (row.size() != cols_) throw std::invalid_argument("affine map: ragged matrix");
    }
}

std::optional<AffineMap> AffineMap::from_objectives(const Problem& p) {
    std::vector<std::vector<double>> matrix;
    std::vector<double> offset;
    for (const auto& f : p.objectives()) {
        auto form = extract_affine(f, p.variables());
        if (!form) return std::nullopt;
        matrix.push_back(std::move(form->coefficients));
        offset.push_back(form->constant);
    }
    return AffineMap(std::move(matrix), std::move(offset));
}

std::vector<double> AffineMap::apply(std::span<const double> x) const {
    if (x.size() != cols_) throw std::invalid_argument("affine map: dimension mismatch");
    std::vector<double> y(offset_);
    for (std::size_t r = 0; r < matrix_.size(); ++r) {
        for (std::size_t c = 0; c < cols_; ++c) y[r] += matrix_[r][c] * x[c];
    }
    return y;
}

std::pair<std::vector<double>, std::vector<double>> map_affine_segment(const AffineMap& m, std::span<const double> x_a,
                                                                       std::span<const double> x_b) {
    return {m.apply(x_a), m.apply(x_b)};
}

}  // namespace raypareto
