#include "cfgtc/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "cfgtc/error.hpp"

namespace cfgtc {

namespace {

using geo::Frame;
using geo::Vec;
using Route = std::vector<Vec>;

struct Move {
    std::size_t object = 0;
    Route route;
};

bool point_clear(const Vec& p, const Frame& blockers, double margin)
{
    for (const auto& b : blockers)
        if (geo::dist(p, b) < margin)
            return false;
    return true;
}

bool route_clear(const Route& route, const Frame& blockers, double margin)
{
    for (std::size_t s = 0; s + 1 < route.size(); ++s)
        for (const auto& b : blockers)
            if (geo::segment_distance(route[s], route[s + 1], b) < margin)
                return false;
    return true;
}

class RouteSampler {
public:
    RouteSampler(int dim, const std::vector<const Frame*>& sets, double margin, std::uint64_t seed)
        : dim_(dim), rng_(seed)
    {
        lo_ = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0.0};
        hi_ = {-lo_[0], -lo_[1], 0.0};
        if (dim == 3) {
            lo_[2] = std::numeric_limits<double>::infinity();
            hi_[2] = -lo_[2];
        }
        bool any = false;
        for (const Frame* f : sets)
            for (const auto& p : *f) {
                any = true;
                for (int c = 0; c < dim; ++c) {
                    lo_[c] = std::min(lo_[c], p[c]);
                    hi_[c] = std::max(hi_[c], p[c]);
                }
            }
        if (!any)
            lo_ = hi_ = {0.0, 0.0, 0.0};
        double extent = 0.0;
        for (int c = 0; c < dim; ++c)
            extent = std::max(extent, hi_[c] - lo_[c]);
        const double pad = std::max(1.0, 0.25 * extent) + 2.0 * margin;
        for (int c = 0; c < dim; ++c) {
            lo_[c] -= pad;
            hi_[c] += pad;
        }
    }

    Vec sample()
    {
        Vec p{0.0, 0.0, 0.0};
        for (int c = 0; c < dim_; ++c)
            p[c] = std::uniform_real_distribution<double>(lo_[c], hi_[c])(rng_);
        return p;
    }

    std::optional<Route> route(const Vec& from, const Vec& to, const Frame& blockers, double margin, int budget)
    {
        if (!point_clear(from, blockers, margin) || !point_clear(to, blockers, margin))
            return std::nullopt;
        Route straight{from, to};
        if (route_clear(straight, blockers, margin))
            return straight;
        for (int attempt = 0; attempt < budget; ++attempt) {
            Route r{from, sample()};
            if (attempt % 2 == 1)
                r.push_back(sample());
            r.push_back(to);
            if (route_clear(r, blockers, margin))
                return r;
        }
        return std::nullopt;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    int dim_;
    std::mt19937_64 rng_;
    Vec lo_{}, hi_{};
};

Frame others(const Frame& positions, std::size_t skip, const Frame& obstacles)
{
    Frame blockers = obstacles;
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (i != skip)
            blockers.push_back(positions[i]);
    return blockers;
}

/* Moves objects in the given order from `from` to `to`, each while the rest stay put. */
std::optional<std::vector<Move>> sequential(RouteSampler& sampler, const std::vector<std::size_t>& order,
                                            const Frame& from, const Frame& to, const Frame& obstacles,
                                            double margin, int budget)
{
    std::vector<Move> moves;
    Frame positions = from;
    for (std::size_t i : order) {
        if (from[i] == to[i])
            continue;
        auto r = sampler.route(positions[i], to[i], others(positions, i, obstacles), margin, budget);
        if (!r)
            return std::nullopt;
        moves.push_back({i, std::move(*r)});
        positions[i] = to[i];
    }
    return moves;
}

Vec along(const Route& route, double u)
{
    if (u <= 0.0)
        return route.front();
    if (u >= 1.0)
        return route.back();
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < route.size(); ++s)
        total += geo::dist(route[s], route[s + 1]);
    double target = u * total;
    for (std::size_t s = 0; s + 1 < route.size(); ++s) {
        const double len = geo::dist(route[s], route[s + 1]);
        if (target <= len && len > 0.0)
            return route[s] + (target / len) * (route[s + 1] - route[s]);
        target -= len;
    }
    return route.back();
}

ObjectPaths sample_moves(int dim, const Frame& start, const std::vector<Move>& moves, int steps)
{
    std::vector<Frame> frames;
    const long long count = static_cast<long long>(moves.size());
    for (int k = 0; k <= steps; ++k) {
        Frame f = start;
        for (long long s = 0; s < count; ++s) {
            // local time of move s is k*M/K - s
            const long long num = static_cast<long long>(k) * count - s * steps;
            if (num <= 0)
                break;
            const auto& mv = moves[static_cast<std::size_t>(s)];
            f[mv.object] = along(mv.route, static_cast<double>(num) / steps);
        }
        frames.push_back(std::move(f));
    }
    return ObjectPaths(dim, std::move(frames));
}

void require_clearance(const Frame& pts, const Frame& obstacles, double margin, const char* what)
{
    if (geo::min_pairwise_distance(pts) < margin) {
        std::ostringstream os;
        os << what << " configuration has two objects closer than the margin " << margin;
        throw PreconditionError(os.str());
    }
    if (geo::min_cross_distance(pts, obstacles) < margin) {
        std::ostringstream os;
        os << what << " configuration has an object closer than " << margin << " to an obstacle";
        throw PreconditionError(os.str());
    }
}

}  // namespace

ObjectPaths stationary_planner(const Configuration& start, const Configuration& goal, const geo::Frame& obstacles,
                               const PlannerOptions& options)
{
    if (start.dim != goal.dim || start.points.size() != goal.points.size())
        throw PreconditionError("start and goal configurations differ in dimension or size");
    if (!(options.margin > 0.0))
        throw PreconditionError("margin must be positive");
    if (options.steps < 1 || options.budget < 1)
        throw PreconditionError("steps and budget must be >= 1");
    for (const auto& p : obstacles)
        if (start.dim == 2 && p[2] != 0.0)
            throw PreconditionError("planar obstacles must have z = 0");
    require_clearance(start.points, obstacles, options.margin, "start");
    require_clearance(goal.points, obstacles, options.margin, "goal");

    const Frame& a = start.points;
    const Frame& b = goal.points;
    const std::size_t n = a.size();
    RouteSampler sampler(start.dim, {&a, &b, &obstacles}, options.margin, options.seed);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const int orderings = n <= 1 ? 1 : 8;
    for (int attempt = 0; attempt < orderings; ++attempt) {
        if (attempt > 0)
            std::shuffle(order.begin(), order.end(), sampler.rng());
        if (auto moves = sequential(sampler, order, a, b, obstacles, options.margin, options.budget))
            return sample_moves(start.dim, a, *moves, options.steps);
    }

    // Park everyone away from all endpoints and obstacles, then bring them in.
    Frame fixed = obstacles;
    fixed.insert(fixed.end(), a.begin(), a.end());
    fixed.insert(fixed.end(), b.begin(), b.end());
    std::iota(order.begin(), order.end(), 0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Frame parking;
        for (int tries = 0; parking.size() < n && tries < options.budget * static_cast<int>(n); ++tries) {
            Vec p = sampler.sample();
            if (point_clear(p, fixed, 3.0 * options.margin) && point_clear(p, parking, 3.0 * options.margin))
                parking.push_back(p);
        }
        if (parking.size() < n)
            continue;
        auto out = sequential(sampler, order, a, parking, obstacles, options.margin, options.budget);
        if (!out)
            continue;
        auto in = sequential(sampler, order, parking, b, obstacles, options.margin, options.budget);
        if (!in)
            continue;
        out->insert(out->end(), in->begin(), in->end());
        return sample_moves(start.dim, a, *out, options.steps);
    }
    throw PlanningFailed("no collision-free routing found within the budget; raise the budget or lower the margin");
}

MovingPlan plan_with_moving_obstacles(const Configuration& start, const Configuration& goal,
                                      const ObstacleTrajectory& obstacles, double radius,
                                      const PlannerOptions& options)
{
    if (start.dim != obstacles.dim() || goal.dim != obstacles.dim())
        throw PreconditionError("configurations and obstacle trajectory differ in dimension");
    if (start.points.size() != goal.points.size())
        throw PreconditionError("start and goal configurations differ in size");
    const int steps = obstacles.steps();
    require_clearance(start.points, obstacles.frame(0), options.margin, "start");
    require_clearance(goal.points, obstacles.frame(steps), options.margin, "goal");

    AmbientIsotopy iso = build_isotopy(obstacles, radius);

    Frame pinned_goal;
    for (const auto& p : goal.points)
        pinned_goal.push_back(iso.apply(steps, p));
    const Frame& pinned = obstacles.frame(0);

    PlannerOptions inner = options;
    inner.steps = steps;
    inner.margin = std::min({options.margin, geo::min_pairwise_distance(pinned_goal),
                             geo::min_cross_distance(pinned_goal, pinned)});
    if (!(inner.margin > 0.0))
        throw PreconditionError("pinned goal configuration degenerates");

    ObjectPaths sigma =
        stationary_planner(start, Configuration{goal.dim, pinned_goal}, pinned, inner);

    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        Frame f;
        for (const auto& p : sigma.frame(k))
            f.push_back(iso.apply_inverse(k, p));
        frames.push_back(std::move(f));
    }
    // ψ_1^{-1}(ψ_1(B)) differs from B only by the fixed-point tolerance.
    frames.back() = goal.points;
    frames.front() = start.points;

    MovingPlan plan{ObjectPaths(start.dim, std::move(frames)), std::move(sigma), std::move(iso), 0.0};
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= steps; ++k) {
        margin = std::min(margin, geo::min_pairwise_distance(plan.paths.frame(k)));
        margin = std::min(margin, geo::min_cross_distance(plan.paths.frame(k), obstacles.frame(k)));
    }
    plan.margin = margin;
    return plan;
}

VerifyReport verify_plan(const ObjectPaths& paths, const ObstacleTrajectory& obstacles, const Configuration& start,
                         const Configuration& goal, const VerifyOptions& options)
{
    VerifyReport rep;
    auto fail_all = [&](const std::string& why) {
        rep.grid_ok = false;
        rep.grid_detail = why;
        for (ConditionResult* c : {&rep.continuity, &rep.endpoints, &rep.separation, &rep.avoidance}) {
            c->pass = false;
            c->detail = "not evaluated: " + why;
        }
        return rep;
    };
    if (paths.frames().empty() || obstacles.samples().frames().empty())
        return fail_all("empty trajectory");
    if (paths.steps() != obstacles.steps())
        return fail_all("object grid has " + std::to_string(paths.steps()) + " steps, obstacle grid has " +
                        std::to_string(obstacles.steps()));
    if (paths.dim() != obstacles.dim())
        return fail_all("dimension mismatch between objects and obstacles");
    if (start.points.size() != paths.count() || goal.points.size() != paths.count())
        return fail_all("start/goal size does not match the object count");

    const int steps = paths.steps();

    // (α)
    rep.max_step = 0.0;
    int step_frame = 0;
    bool finite = true;
    for (int k = 0; k <= steps; ++k)
        for (const auto& p : paths.frame(k))
            for (double c : p)
                finite = finite && std::isfinite(c);
    for (int k = 0; k < steps; ++k)
        for (std::size_t i = 0; i < paths.count(); ++i) {
            const double d = geo::dist(paths.frame(k)[i], paths.frame(k + 1)[i]);
            if (d > rep.max_step) {
                rep.max_step = d;
                step_frame = k;
            }
        }
    rep.continuity.value = rep.max_step;
    rep.continuity.frame = step_frame;
    rep.continuity.pass = finite && rep.max_step <= options.max_step;
    {
        std::ostringstream os;
        os << "max per-step displacement " << rep.max_step << " (bound " << options.max_step << ")";
        if (!finite)
            os << "; non-finite coordinates";
        rep.continuity.detail = os.str();
    }

    // (β)
    double end_err = 0.0;
    int end_frame = 0;
    for (std::size_t i = 0; i < paths.count(); ++i) {
        const double d0 = geo::dist(paths.frame(0)[i], start.points[i]);
        const double d1 = geo::dist(paths.frame(steps)[i], goal.points[i]);
        if (d0 > end_err) {
            end_err = d0;
            end_frame = 0;
        }
        if (d1 > end_err) {
            end_err = d1;
            end_frame = steps;
        }
    }
    rep.endpoints.value = end_err;
    rep.endpoints.pass = end_err <= options.endpoint_tol;
    if (!rep.endpoints.pass)
        rep.endpoints.frame = end_frame;
    rep.endpoints.detail = "max endpoint error " + std::to_string(end_err);

    // (γ) and (δ)
    rep.min_object_distance = std::numeric_limits<double>::infinity();
    rep.min_obstacle_distance = std::numeric_limits<double>::infinity();
    int sep_frame = 0, avoid_frame = 0;
    for (int k = 0; k <= steps; ++k) {
        const double d = geo::min_pairwise_distance(paths.frame(k));
        if (d < rep.min_object_distance) {
            rep.min_object_distance = d;
            sep_frame = k;
        }
        const double e = geo::min_cross_distance(paths.frame(k), obstacles.frame(k));
        if (e < rep.min_obstacle_distance) {
            rep.min_obstacle_distance = e;
            avoid_frame = k;
        }
    }
    auto judge = [&](ConditionResult& c, double value, int frame, const char* what) {
        c.value = value;
        c.frame = frame;
        c.pass = value > 0.0 && value >= options.margin;
        std::ostringstream os;
        os << "min " << what << " distance " << value << " at frame " << frame << " (margin " << options.margin << ")";
        c.detail = os.str();
    };
    judge(rep.separation, rep.min_object_distance, sep_frame, "object-object");
    judge(rep.avoidance, rep.min_obstacle_distance, avoid_frame, "object-obstacle");
    return rep;
}

namespace {

nlohmann::json condition_json(const ConditionResult& c)
{
    nlohmann::json j{{"pass", c.pass}, {"detail", c.detail}};
    j["value"] = std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json(nullptr);
    j["frame"] = c.frame ? nlohmann::json(*c.frame) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json finite_or_null(double v)
{
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const VerifyReport& report)
{
    nlohmann::json j;
    j["pass"] = report.all_pass();
    j["grid_ok"] = report.grid_ok;
    if (!report.grid_ok)
        j["grid_detail"] = report.grid_detail;
    j["conditions"] = {{"alpha_continuity", condition_json(report.continuity)},
                       {"beta_endpoints", condition_json(report.endpoints)},
                       {"gamma_object_separation", condition_json(report.separation)},
                       {"delta_obstacle_avoidance", condition_json(report.avoidance)}};
    j["min_object_distance"] = finite_or_null(report.min_object_distance);
    j["min_obstacle_distance"] = finite_or_null(report.min_obstacle_distance);
    j["max_step"] = finite_or_null(report.max_step);
    return j;
}

}  // namespace cfgtc
