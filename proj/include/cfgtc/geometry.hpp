#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace cfgtc::geo {

/// Point or vector in R^2 or R^3. Planar data keeps z = 0.
struct Vec : std::array<double, 3> {};

inline Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec operator-(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec operator*(double s, const Vec& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

/// Distance from p to the closed segment [a, b].
inline double segment_distance(const Vec& a, const Vec& b, const Vec& p)
{
    const Vec ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0)
        return dist(a, p);
    double t = dot(p - a, ab) / len2;
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    return dist(a + t * ab, p);
}

/// n points at one instant.
using Frame = std::vector<Vec>;

/// Smallest pairwise distance within a frame; +inf for fewer than two points.
double min_pairwise_distance(const Frame& frame);

/// Smallest distance between a point of `a` and a point of `b`; +inf if either is empty.
double min_cross_distance(const Frame& a, const Frame& b);

}  // namespace cfgtc::geo
