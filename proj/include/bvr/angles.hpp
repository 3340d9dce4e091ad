#pragma once

#include <cmath>
#include <numbers>

namespace bvr {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kGravity = 9.80665;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Wraps to [0, 2pi).
inline double wrap_two_pi(double a)
{
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Wraps to (-pi, pi].
inline double wrap_pi(double a)
{
    double r = std::fmod(a + kPi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    r -= kPi;
    if (r <= -kPi) r += kTwoPi;
    return r;
}

inline double wrap_360(double deg)
{
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    if (r >= 360.0) r = 0.0;
    return r;
}

/// Compass bearing (0 = north, clockwise) of a horizontal displacement; 0 when degenerate.
inline double compass_bearing(double north, double east)
{
    if (north == 0.0 && east == 0.0) return 0.0;
    return wrap_two_pi(std::atan2(east, north));
}

}  // namespace bvr
