#include <random>

#include "doctest.h"

#include "cfgtc/error.hpp"
#include "cfgtc/planner.hpp"
#include "trajectory_gen.hpp"

using namespace cfgtc;
using geo::Frame;
using geo::Vec;

namespace {

Configuration config2(std::initializer_list<std::pair<double, double>> pts)
{
    Frame f;
    for (auto [x, y] : pts)
        f.push_back(Vec{x, y, 0.0});
    return Configuration::make(2, f);
}

}  // namespace

TEST_CASE("stationary planner: nothing to avoid gives a straight segment")
{
    PlannerOptions opts;
    opts.steps = 10;
    ObjectPaths p = stationary_planner(config2({{0, 0}}), config2({{1, 0}}), {}, opts);
    REQUIRE(p.steps() == 10);
    for (int k = 0; k <= 10; ++k) {
        CHECK(p.frame(k)[0][0] == doctest::Approx(k / 10.0));
        CHECK(p.frame(k)[0][1] == 0.0);
    }
    CHECK(p.frame(0)[0] == Vec{0.0, 0.0, 0.0});
    CHECK(p.frame(10)[0] == Vec{1.0, 0.0, 0.0});
}

TEST_CASE("stationary planner detours around an obstacle on the segment")
{
    PlannerOptions opts;
    opts.margin = 0.1;
    opts.steps = 200;
    Frame S{Vec{0.5, 0.0, 0.0}};
    ObjectPaths p = stationary_planner(config2({{0, 0}}), config2({{1, 0}}), S, opts);
    double closest = 1e9;
    for (int k = 0; k <= p.steps(); ++k)
        closest = std::min(closest, geo::dist(p.frame(k)[0], S[0]));
    CHECK(closest >= 0.1);
    CHECK(p.frame(200)[0] == Vec{1.0, 0.0, 0.0});
}

TEST_CASE("stationary planner: swapping objects needs an ordering or parking")
{
    PlannerOptions opts;
    opts.margin = 0.2;
    opts.steps = 300;
    auto A = config2({{0, 0}, {1, 0}});
    auto B = config2({{1, 0}, {0, 0}});
    ObjectPaths p = stationary_planner(A, B, {}, opts);
    auto Y = ObstacleTrajectory(SampledPaths(2, std::vector<Frame>(301, Frame{})));
    VerifyOptions v;
    v.margin = 0.2;
    auto rep = verify_plan(p, Y, A, B, v);
    CHECK(rep.all_pass());
}

TEST_CASE("stationary planner preconditions")
{
    PlannerOptions opts;
    CHECK_THROWS_AS(config2({{0, 0}, {0, 0}}), PreconditionError);
    CHECK_THROWS_AS(stationary_planner(config2({{0, 0}}), config2({{1, 0}}), {Vec{0.0, 0.01, 0.0}}, opts),
                    PreconditionError);
    CHECK_THROWS_AS(stationary_planner(config2({{0, 0}}), config2({{1, 0}, {2, 0}}), {}, opts),
                    PreconditionError);
    opts.margin = 0.0;
    CHECK_THROWS_AS(stationary_planner(config2({{0, 0}}), config2({{1, 0}}), {}, opts), PreconditionError);
}

TEST_CASE("stationary planner is deterministic for a seed")
{
    PlannerOptions opts;
    opts.margin = 0.1;
    opts.steps = 50;
    opts.seed = 99;
    Frame S{Vec{0.5, 0.0, 0.0}, Vec{0.5, 0.3, 0.0}, Vec{0.5, -0.3, 0.0}};
    auto A = config2({{0, 0}, {0, 1}}), B = config2({{1, 0}, {1, 1}});
    CHECK(stationary_planner(A, B, S, opts) == stationary_planner(A, B, S, opts));
}

TEST_CASE("moving obstacles: stationary trajectory reduces to the stationary planner bit for bit")
{
    Frame S{Vec{0.5, 0.0, 0.0}, Vec{2.0, 2.0, 0.0}};
    auto Y = ObstacleTrajectory::stationary(2, S, 80);
    auto A = config2({{0, 0}, {0, 1}}), B = config2({{1, 0}, {1, 1}});
    PlannerOptions opts;
    opts.margin = 0.1;
    opts.seed = 5;
    MovingPlan plan = plan_with_moving_obstacles(A, B, Y, 0.4, opts);
    PlannerOptions inner = opts;
    inner.steps = 80;
    CHECK(plan.paths == stationary_planner(A, B, S, inner));
    CHECK(plan.isotopy.layer_count() == 0);
}

TEST_CASE("moving obstacles: an obstacle sweeping across the straight route")
{
    const int K = 400;
    std::vector<Frame> frames;
    for (int k = 0; k <= K; ++k) {
        const double t = static_cast<double>(k) / K;
        frames.push_back({Vec{0.5, -2.0 + 4.0 * t, 0.0}});
    }
    ObstacleTrajectory Y(SampledPaths(2, frames));
    auto A = config2({{0, 0}}), B = config2({{1, 0}});
    PlannerOptions opts;
    opts.margin = 0.1;
    MovingPlan plan = plan_with_moving_obstacles(A, B, Y, 0.3, opts);
    CHECK(plan.margin > 0.0);
    VerifyOptions v;
    v.margin = plan.margin;
    auto rep = verify_plan(plan.paths, Y, A, B, v);
    CHECK(rep.all_pass());
    CHECK(plan.paths.frame(0)[0] == A.points[0]);
    CHECK(plan.paths.frame(K)[0] == B.points[0]);
}

TEST_CASE("moving obstacles: goal on top of the final obstacle position is rejected")
{
    ObstacleTrajectory Y(SampledPaths(2, {{Vec{0.0, 2.0, 0.0}}, {Vec{0.0, 2.05, 0.0}}, {Vec{1.0, 0.0, 0.0}}}));
    PlannerOptions opts;
    CHECK_THROWS_AS(plan_with_moving_obstacles(config2({{0, 0}}), config2({{1, 0}}), Y, 0.2, opts),
                    PreconditionError);
}

TEST_CASE("verify_plan flags constructed violations")
{
    const int K = 20;
    std::vector<Frame> obstacle_frames, object_frames;
    for (int k = 0; k <= K; ++k) {
        const double t = static_cast<double>(k) / K;
        obstacle_frames.push_back({Vec{-1.0 + 2.0 * t, 0.0, 0.0}});
        object_frames.push_back({Vec{0.0, 0.0, 0.0}});
    }
    ObstacleTrajectory Y(SampledPaths(2, obstacle_frames));
    ObjectPaths still(2, object_frames);
    auto A = config2({{0, 0}});

    SUBCASE("obstacle passes through a resting object")
    {
        auto rep = verify_plan(still, Y, A, A, {});
        CHECK(!rep.avoidance.pass);
        CHECK(rep.avoidance.frame == 10);
        CHECK(rep.endpoints.pass);
        CHECK(rep.continuity.pass);
        CHECK(rep.separation.pass);
    }
    SUBCASE("swapped endpoints")
    {
        auto two = std::vector<Frame>(K + 1, Frame{Vec{0.0, 3.0, 0.0}, Vec{1.0, 3.0, 0.0}});
        auto Az = config2({{0, 3}, {1, 3}}), Bz = config2({{1, 3}, {0, 3}});
        auto rep = verify_plan(ObjectPaths(2, two), Y, Az, Bz, {});
        CHECK(!rep.endpoints.pass);
        CHECK(rep.endpoints.frame == K);
    }
    SUBCASE("objects collide")
    {
        std::vector<Frame> f;
        for (int k = 0; k <= K; ++k) {
            const double t = static_cast<double>(k) / K;
            f.push_back({Vec{0.0, 3.0, 0.0}, Vec{1.0 - t, 3.0, 0.0}});
        }
        auto rep = verify_plan(ObjectPaths(2, f), Y, config2({{0, 3}, {1, 3}}), config2({{0, 3}, {0.5, 4}}), {});
        CHECK(!rep.separation.pass);
        CHECK(rep.separation.frame == K);
    }
    SUBCASE("jumps fail the continuity audit")
    {
        std::vector<Frame> f = object_frames;
        f[5] = {Vec{0.0, 5.0, 0.0}};
        VerifyOptions v;
        v.max_step = 1.0;
        auto rep = verify_plan(ObjectPaths(2, f), Y, A, A, v);
        CHECK(!rep.continuity.pass);
        CHECK(rep.continuity.frame == 4);
    }
    SUBCASE("grid mismatch is reported, not thrown")
    {
        ObjectPaths shorter(2, std::vector<Frame>(5, Frame{Vec{0.0, 0.0, 0.0}}));
        auto rep = verify_plan(shorter, Y, A, A, {});
        CHECK(!rep.grid_ok);
        CHECK(!rep.all_pass());
        CHECK(to_json(rep)["pass"] == false);
    }
}

TEST_CASE("randomized end-to-end soundness")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = 2 + trial % 2, m = trial % 4, n = 1 + trial % 4;
        const double rho = 0.3;
        ObstacleTrajectory Y = testgen::random_obstacles(rng, dim, m, rho, 3);
        Frame A = testgen::random_configuration(rng, dim, n, Y.frame(0), 0.3);
        Frame B = testgen::random_configuration(rng, dim, n, Y.frame(Y.steps()), 0.3);
        PlannerOptions opts;
        opts.margin = 0.1;
        opts.seed = static_cast<std::uint64_t>(trial);
        auto cA = Configuration::make(dim, A), cB = Configuration::make(dim, B);
        MovingPlan plan = plan_with_moving_obstacles(cA, cB, Y, rho, opts);
        VerifyOptions v;
        v.margin = plan.margin;
        auto rep = verify_plan(plan.paths, Y, cA, cB, v);
        CAPTURE(trial);
        CHECK(plan.margin > 0.0);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("trajectory JSON")
{
    std::vector<Frame> frames{{Vec{0.0, 1.0, 0.0}}, {Vec{0.5, 1.0, 0.0}}};
    SampledPaths p(2, frames);
    auto j = to_json(p);
    CHECK(j.dump() == R"({"count":1,"dim":2,"frames":[[[0.0,1.0]],[[0.5,1.0]]]})");
    CHECK(paths_from_json(j) == p);
    CHECK_THROWS_AS(paths_from_json(nlohmann::json::parse(R"({"dim":4,"count":1,"frames":[]})")), ParseError);
    CHECK_THROWS_AS(paths_from_json(nlohmann::json::parse(R"({"dim":2,"count":2,"frames":[[[0,0]],[[0,0]]]})")),
                    ParseError);
    CHECK_THROWS_AS(paths_from_json(nlohmann::json::parse(R"({"dim":2,"count":1,"frames":[[[0,0]]]})")),
                    ParseError);

    PlanningProblem prob{config2({{0, 0}}), config2({{1, 0}})};
    auto pj = to_json(prob);
    auto back = problem_from_json(pj);
    CHECK(back.start.points == prob.start.points);
    CHECK(back.goal.points == prob.goal.points);
}
