#pragma once

#include <cstddef>
#include <vector>

#include "json.hpp"

#include "cfgtc/geometry.hpp"

namespace cfgtc {

/// K+1 time-uniform frames of `count` points each, at t_k = k/K.
class SampledPaths {
public:
    SampledPaths() = default;
    /// Throws PreconditionError on dim not in {2,3}, fewer than two frames, ragged
    /// frames, or nonzero z for planar data.
    SampledPaths(int dim, std::vector<geo::Frame> frames);

    int dim() const { return dim_; }
    std::size_t count() const { return frames_.empty() ? 0 : frames_.front().size(); }
    int steps() const { return static_cast<int>(frames_.size()) - 1; }
    const std::vector<geo::Frame>& frames() const { return frames_; }
    const geo::Frame& frame(int k) const { return frames_.at(static_cast<std::size_t>(k)); }

    friend bool operator==(const SampledPaths&, const SampledPaths&) = default;

private:
    int dim_ = 2;
    std::vector<geo::Frame> frames_;
};

/// Sampled obstacle motion Y(t). Every frame has pairwise distinct points.
class ObstacleTrajectory {
public:
    ObstacleTrajectory() = default;
    /// Throws PreconditionError if two obstacles coincide in some frame.
    explicit ObstacleTrajectory(SampledPaths samples);

    const SampledPaths& samples() const { return samples_; }
    int dim() const { return samples_.dim(); }
    std::size_t count() const { return samples_.count(); }
    int steps() const { return samples_.steps(); }
    const geo::Frame& frame(int k) const { return samples_.frame(k); }

    /// Smallest pairwise obstacle distance over all frames (+inf when m <= 1).
    double min_sep() const { return min_sep_; }
    /// Largest single-step displacement of any obstacle.
    double max_step() const;

    /// Constant trajectory with K steps.
    static ObstacleTrajectory stationary(int dim, const geo::Frame& points, int steps);
    /// Inserts factor-1 linearly interpolated frames between consecutive samples.
    ObstacleTrajectory refined(int factor) const;

private:
    SampledPaths samples_;
    double min_sep_ = 0.0;
};

/// Object motion γ(t), sampled on the obstacle grid.
using ObjectPaths = SampledPaths;

/// Pairwise distinct points of one configuration.
struct Configuration {
    int dim = 2;
    geo::Frame points;

    /// Throws PreconditionError on coincident points or a bad dimension.
    static Configuration make(int dim, geo::Frame points);
};

/// Start and goal configurations of a planning query.
struct PlanningProblem {
    Configuration start;
    Configuration goal;
};

// File format {"dim": d, "count": c, "frames": [[[x,y(,z)],...],...]}.
nlohmann::json to_json(const SampledPaths& paths);
SampledPaths paths_from_json(const nlohmann::json& j);

// File format {"dim": d, "count": c, "start": [[x,y(,z)],...], "goal": [...]}.
nlohmann::json to_json(const PlanningProblem& problem);
PlanningProblem problem_from_json(const nlohmann::json& j);

}  // namespace cfgtc
