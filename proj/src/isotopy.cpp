#include "cfgtc/isotopy.hpp"

#include <cmath>
#include <sstream>

#include "cfgtc/error.hpp"

namespace cfgtc {

double bump(double s)
{
    if (s >= 1.0)
        return 0.0;
    const double u = 1.0 - s * s;
    return u * u;
}

geo::Vec BumpTranslation::apply(const geo::Vec& x) const
{
    const double w = bump(geo::dist(x, center) / radius);
    if (w == 0.0)
        return x;
    return x + w * displacement;
}

geo::Vec BumpTranslation::invert(const geo::Vec& y) const
{
    // Points farther than radius + |v| from the centre are fixed by the forward map.
    geo::Vec x = y;
    for (int it = 0; it < 200; ++it) {
        const double w = bump(geo::dist(x, center) / radius);
        const geo::Vec next = w == 0.0 ? y : y - w * displacement;
        const double delta = geo::dist(next, x);
        x = next;
        if (delta <= 1e-15 * (1.0 + geo::norm(y)))
            break;
    }
    return x;
}

double BumpTranslation::contraction() const
{
    return geo::norm(displacement) * kBumpLipschitz / radius;
}

double max_isotopy_step(double radius)
{
    return radius / (2.0 * kBumpLipschitz);
}

int refinement_needed(const ObstacleTrajectory& obstacles, double radius)
{
    const double limit = max_isotopy_step(radius);
    const double step = obstacles.max_step();
    if (step < limit)
        return 1;
    return static_cast<int>(std::floor(step / limit)) + 1;
}

std::size_t AmbientIsotopy::layer_count() const
{
    std::size_t total = 0;
    for (const auto& step : layers_)
        total += step.size();
    return total;
}

void AmbientIsotopy::check_index(int k) const
{
    if (k < 0 || k > steps())
        throw OffGridTime("frame index " + std::to_string(k) + " outside 0.." + std::to_string(steps()));
}

geo::Vec AmbientIsotopy::apply(int k, const geo::Vec& x) const
{
    check_index(k);
    geo::Vec p = x;
    for (int s = k - 1; s >= 0; --s)
        for (const auto& layer : layers_[static_cast<std::size_t>(s)])
            p = layer.apply(p);
    return p;
}

geo::Vec AmbientIsotopy::apply_inverse(int k, const geo::Vec& y) const
{
    check_index(k);
    geo::Vec p = y;
    for (int s = 0; s < k; ++s) {
        const auto& step = layers_[static_cast<std::size_t>(s)];
        for (auto it = step.rbegin(); it != step.rend(); ++it)
            p = it->invert(p);
    }
    return p;
}

int AmbientIsotopy::grid_index(double t) const
{
    const double scaled = t * steps();
    const double k = std::round(scaled);
    if (!(t >= 0.0 && t <= 1.0) || std::abs(scaled - k) > 1e-12 * std::max(1.0, static_cast<double>(steps()))) {
        std::ostringstream os;
        os << "time " << t << " is not on the grid t_k = k/" << steps();
        throw OffGridTime(os.str());
    }
    return static_cast<int>(k);
}

geo::Vec AmbientIsotopy::apply_at(double t, const geo::Vec& x) const
{
    return apply(grid_index(t), x);
}

geo::Vec AmbientIsotopy::apply_inverse_at(double t, const geo::Vec& y) const
{
    return apply_inverse(grid_index(t), y);
}

AmbientIsotopy build_isotopy(const ObstacleTrajectory& obstacles, double radius)
{
    if (!(radius > 0.0) || !(radius < obstacles.min_sep() / 2.0)) {
        std::ostringstream os;
        os << "bump radius " << radius << " must satisfy 0 < radius < min_sep/2 = " << obstacles.min_sep() / 2.0;
        throw RadiusTooLarge(os.str());
    }
    const double limit = max_isotopy_step(radius);
    AmbientIsotopy iso;
    iso.radius_ = radius;
    iso.layers_.resize(static_cast<std::size_t>(obstacles.steps()));
    for (int k = 0; k < obstacles.steps(); ++k) {
        for (std::size_t j = 0; j < obstacles.count(); ++j) {
            const geo::Vec& from = obstacles.frame(k + 1)[j];
            const geo::Vec& to = obstacles.frame(k)[j];
            const geo::Vec v = to - from;
            if (!(geo::norm(v) < limit)) {
                std::ostringstream os;
                os << "obstacle " << j + 1 << " moves " << geo::norm(v) << " in step " << k
                   << ", limit for radius " << radius << " is " << limit << "; refine the trajectory by "
                   << refinement_needed(obstacles, radius);
                throw StepTooCoarse(os.str());
            }
            if (v == geo::Vec{0.0, 0.0, 0.0})
                continue;
            iso.layers_[static_cast<std::size_t>(k)].push_back({from, radius, v, k, static_cast<int>(j)});
        }
    }
    return iso;
}

}  // namespace cfgtc
