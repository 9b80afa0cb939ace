#pragma once

#include <vector>

#include "cfgtc/trajectory.hpp"

namespace cfgtc {

/// Bump profile β(s) = (1 - s^2)^2 on [0, 1), zero beyond.
double bump(double s);
/// max |β'| = 8 / (3 sqrt 3).
inline constexpr double kBumpLipschitz = 1.5396007178390020;

/// x -> x + β(|x - center| / radius) * displacement. Identity outside the ball.
struct BumpTranslation {
    geo::Vec center{};
    double radius = 1.0;
    geo::Vec displacement{};
    int step = 0;
    int obstacle = 0;

    geo::Vec apply(const geo::Vec& x) const;
    /// Fixed-point inverse; contraction factor |v| L / radius < 1.
    geo::Vec invert(const geo::Vec& y) const;
    /// |v| L / radius, must be < 1.
    double contraction() const;
};

/// Composite of bump translations with ψ_0 = id and ψ_k(C_j(t_k)) = C_j(0).
///
/// ψ_{k+1} = ψ_k ∘ L_{k,m} ∘ ... ∘ L_{k,1}, where L_{k,j} is centred at C_j(t_{k+1})
/// and translates it to C_j(t_k). Layers with zero displacement are omitted, so a
/// stationary trajectory yields the identity bit for bit.
class AmbientIsotopy {
public:
    int steps() const { return static_cast<int>(layers_.size()); }
    double radius() const { return radius_; }
    /// Layers of step k (k -> k+1), in application order.
    const std::vector<BumpTranslation>& layers(int step) const { return layers_.at(static_cast<std::size_t>(step)); }
    std::size_t layer_count() const;

    /// ψ_{t_k}(x).
    geo::Vec apply(int k, const geo::Vec& x) const;
    /// ψ_{t_k}^{-1}(y).
    geo::Vec apply_inverse(int k, const geo::Vec& y) const;

    /// Same maps addressed by time; t must be k/K up to 1e-12, else OffGridTime.
    geo::Vec apply_at(double t, const geo::Vec& x) const;
    geo::Vec apply_inverse_at(double t, const geo::Vec& y) const;
    int grid_index(double t) const;

private:
    friend AmbientIsotopy build_isotopy(const ObstacleTrajectory& obstacles, double radius);
    void check_index(int k) const;

    std::vector<std::vector<BumpTranslation>> layers_;
    double radius_ = 0.0;
};

/// Throws RadiusTooLarge unless 0 < radius < min_sep / 2, StepTooCoarse unless every
/// obstacle step is below radius / (2 L).
AmbientIsotopy build_isotopy(const ObstacleTrajectory& obstacles, double radius);

/// Largest obstacle step allowed by build_isotopy for a given radius.
double max_isotopy_step(double radius);

/// Smallest refinement factor making `obstacles` fine enough for `radius`.
int refinement_needed(const ObstacleTrajectory& obstacles, double radius);

}  // namespace cfgtc
