#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cfgtc/isotopy.hpp"
#include "cfgtc/trajectory.hpp"

namespace cfgtc {

struct PlannerOptions {
    double margin = 0.05;        // clearance kept between objects and from obstacles
    int budget = 2000;           // random via-point attempts per object move
    std::uint64_t seed = 1;
    int steps = 64;              // output grid size K
};

/// Moves objects one at a time along piecewise-linear routes (straight or through one or
/// two random via-points) from A to B around the fixed points S. Falls back to routing
/// every object through a parking spot first when no direct order works. Every segment
/// keeps distance >= margin from the obstacles and the other (resting) objects, so all
/// sampled frames do too. Throws PreconditionError on bad input, PlanningFailed when the
/// budget runs out.
ObjectPaths stationary_planner(const Configuration& start, const Configuration& goal, const geo::Frame& obstacles,
                               const PlannerOptions& options);

struct MovingPlan {
    ObjectPaths paths;         // γ on the obstacle grid, γ(0) = A, γ(1) = B
    ObjectPaths stationary;    // σ, the plan in the pinned problem
    AmbientIsotopy isotopy;
    double margin = 0.0;       // achieved clearance δ'
};

/// Pins the obstacles with an ambient isotopy ψ, plans σ from A to ψ_1(B) around Y(0),
/// and returns γ(t_k) = ψ_{t_k}^{-1}(σ(t_k)). options.steps is ignored; the obstacle grid is used.
MovingPlan plan_with_moving_obstacles(const Configuration& start, const Configuration& goal,
                                      const ObstacleTrajectory& obstacles, double radius,
                                      const PlannerOptions& options);

struct ConditionResult {
    bool pass = false;
    std::optional<int> frame;   // frame of the worst or first violating sample
    double value = 0.0;
    std::string detail;
};

struct VerifyOptions {
    double margin = 0.0;        // required clearance; distances must also be > 0
    double max_step = 1.0;      // continuity audit: bound on per-step displacement
    double endpoint_tol = 0.0;
};

struct VerifyReport {
    bool grid_ok = true;
    std::string grid_detail;
    ConditionResult continuity;    // (α)
    ConditionResult endpoints;     // (β)
    ConditionResult separation;    // (γ) objects pairwise apart
    ConditionResult avoidance;     // (δ) objects away from obstacles
    double min_object_distance = 0.0;
    double min_obstacle_distance = 0.0;
    double max_step = 0.0;

    bool all_pass() const
    {
        return grid_ok && continuity.pass && endpoints.pass && separation.pass && avoidance.pass;
    }
};

/// Never throws on bad plans; every failure is reported.
VerifyReport verify_plan(const ObjectPaths& paths, const ObstacleTrajectory& obstacles, const Configuration& start,
                         const Configuration& goal, const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace cfgtc
