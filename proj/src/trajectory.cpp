#include "cfgtc/trajectory.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "cfgtc/error.hpp"

namespace cfgtc {

namespace geo {

double min_pairwise_distance(const Frame& frame)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < frame.size(); ++a)
        for (std::size_t b = a + 1; b < frame.size(); ++b)
            best = std::min(best, dist(frame[a], frame[b]));
    return best;
}

double min_cross_distance(const Frame& a, const Frame& b)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a)
        for (const auto& q : b)
            best = std::min(best, dist(p, q));
    return best;
}

}  // namespace geo

namespace {

void check_dim(int dim)
{
    if (dim != 2 && dim != 3)
        throw PreconditionError("dimension must be 2 or 3, got " + std::to_string(dim));
}

void check_points(int dim, const geo::Frame& pts)
{
    for (const auto& p : pts) {
        for (double c : p)
            if (!std::isfinite(c))
                throw PreconditionError("non-finite coordinate");
        if (dim == 2 && p[2] != 0.0)
            throw PreconditionError("planar data must have z = 0");
    }
}

geo::Vec point_from_json(const nlohmann::json& j, int dim)
{
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ParseError("point must be an array of " + std::to_string(dim) + " numbers");
    geo::Vec p{0.0, 0.0, 0.0};
    for (int c = 0; c < dim; ++c) {
        if (!j[c].is_number())
            throw ParseError("point coordinate must be a number");
        p[c] = j[c].get<double>();
    }
    return p;
}

nlohmann::json point_to_json(const geo::Vec& p, int dim)
{
    auto j = nlohmann::json::array();
    for (int c = 0; c < dim; ++c)
        j.push_back(p[c]);
    return j;
}

geo::Frame frame_from_json(const nlohmann::json& j, int dim)
{
    if (!j.is_array())
        throw ParseError("frame must be an array of points");
    geo::Frame f;
    for (const auto& p : j)
        f.push_back(point_from_json(p, dim));
    return f;
}

nlohmann::json frame_to_json(const geo::Frame& f, int dim)
{
    auto j = nlohmann::json::array();
    for (const auto& p : f)
        j.push_back(point_to_json(p, dim));
    return j;
}

int header(const nlohmann::json& j, std::size_t& count)
{
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer() || !j.contains("count") ||
        !j["count"].is_number_integer() || j["count"].get<long long>() < 0)
        throw ParseError("expected an object with integer \"dim\" and \"count\"");
    count = j["count"].get<std::size_t>();
    int dim = j["dim"].get<int>();
    if (dim != 2 && dim != 3)
        throw ParseError("\"dim\" must be 2 or 3");
    return dim;
}

}  // namespace

SampledPaths::SampledPaths(int dim, std::vector<geo::Frame> frames) : dim_(dim), frames_(std::move(frames))
{
    check_dim(dim);
    if (frames_.size() < 2)
        throw PreconditionError("need at least two frames (K >= 1)");
    for (const auto& f : frames_) {
        if (f.size() != frames_.front().size())
            throw PreconditionError("frames have different point counts");
        check_points(dim, f);
    }
}

ObstacleTrajectory::ObstacleTrajectory(SampledPaths samples) : samples_(std::move(samples))
{
    min_sep_ = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= samples_.steps(); ++k)
        min_sep_ = std::min(min_sep_, geo::min_pairwise_distance(samples_.frame(k)));
    if (!(min_sep_ > 0.0))
        throw PreconditionError("obstacles collide in some frame");
}

double ObstacleTrajectory::max_step() const
{
    double best = 0.0;
    for (int k = 0; k < steps(); ++k)
        for (std::size_t j = 0; j < count(); ++j)
            best = std::max(best, geo::dist(frame(k)[j], frame(k + 1)[j]));
    return best;
}

ObstacleTrajectory ObstacleTrajectory::stationary(int dim, const geo::Frame& points, int steps)
{
    if (steps < 1)
        throw PreconditionError("need at least one step");
    return ObstacleTrajectory(SampledPaths(dim, std::vector<geo::Frame>(steps + 1, points)));
}

ObstacleTrajectory ObstacleTrajectory::refined(int factor) const
{
    if (factor < 1)
        throw PreconditionError("refinement factor must be >= 1");
    if (factor == 1)
        return *this;
    std::vector<geo::Frame> frames;
    for (int k = 0; k < steps(); ++k) {
        for (int s = 0; s < factor; ++s) {
            const double u = static_cast<double>(s) / factor;
            geo::Frame f(count());
            for (std::size_t j = 0; j < count(); ++j)
                f[j] = frame(k)[j] + u * (frame(k + 1)[j] - frame(k)[j]);
            frames.push_back(std::move(f));
        }
    }
    frames.push_back(frame(steps()));
    return ObstacleTrajectory(SampledPaths(dim(), std::move(frames)));
}

Configuration Configuration::make(int dim, geo::Frame points)
{
    check_dim(dim);
    check_points(dim, points);
    if (!(geo::min_pairwise_distance(points) > 0.0))
        throw PreconditionError("configuration has coincident points");
    return Configuration{dim, std::move(points)};
}

nlohmann::json to_json(const SampledPaths& paths)
{
    nlohmann::json j;
    j["dim"] = paths.dim();
    j["count"] = paths.count();
    auto frames = nlohmann::json::array();
    for (const auto& f : paths.frames())
        frames.push_back(frame_to_json(f, paths.dim()));
    j["frames"] = std::move(frames);
    return j;
}

SampledPaths paths_from_json(const nlohmann::json& j)
{
    std::size_t count = 0;
    int dim = header(j, count);
    if (!j.contains("frames") || !j["frames"].is_array())
        throw ParseError("expected \"frames\" array");
    std::vector<geo::Frame> frames;
    for (const auto& f : j["frames"]) {
        frames.push_back(frame_from_json(f, dim));
        if (frames.back().size() != count)
            throw ParseError("frame size does not match \"count\"");
    }
    try {
        return SampledPaths(dim, std::move(frames));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

nlohmann::json to_json(const PlanningProblem& problem)
{
    const int dim = problem.start.dim;
    return {{"dim", dim},
            {"count", problem.start.points.size()},
            {"start", frame_to_json(problem.start.points, dim)},
            {"goal", frame_to_json(problem.goal.points, dim)}};
}

PlanningProblem problem_from_json(const nlohmann::json& j)
{
    std::size_t count = 0;
    int dim = header(j, count);
    if (!j.contains("start") || !j.contains("goal"))
        throw ParseError("expected \"start\" and \"goal\" configurations");
    geo::Frame start = frame_from_json(j["start"], dim);
    geo::Frame goal = frame_from_json(j["goal"], dim);
    if (start.size() != count || goal.size() != count)
        throw ParseError("configuration size does not match \"count\"");
    return {Configuration::make(dim, std::move(start)), Configuration::make(dim, std::move(goal))};
}

}  // namespace cfgtc
