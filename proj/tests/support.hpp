#pragma once

// Helpers shared by the unit and acceptance suites.

#include <cmath>
#include <vector>

#include "bvr/airframe.hpp"
#include "bvr/angles.hpp"
#include "bvr/atmosphere.hpp"
#include "bvr/missile.hpp"

namespace bvr::testing {

/// Independent ISA evaluation (barometric formula, three layers).
inline double oracle_isa_density(double h)
{
    constexpr double g = 9.80665, R = 287.05287, T0 = 288.15, p0 = 101325.0, L = 0.0065;
    const double T11 = T0 - L * 11000.0;
    const double p11 = p0 * std::pow(T11 / T0, g / (R * L));
    if (h <= 11000.0) {
        const double T = T0 - L * h;
        return p0 * std::pow(T / T0, g / (R * L)) / (R * T);
    }
    const double p20 = p11 * std::exp(-g * (20000.0 - 11000.0) / (R * T11));
    if (h <= 20000.0) return p11 * std::exp(-g * (h - 11000.0) / (R * T11)) / (R * T11);
    const double T = T11 + 0.001 * (h - 20000.0);
    return p20 * std::pow(T / T11, -g / (R * 0.001)) / (R * T);
}

/// Level-flight drag from the polar, written out directly from the parameters.
inline double oracle_level_drag(const AirframeParams& p, double h, double v)
{
    const double rho = oracle_isa_density(h);
    const double q = 0.5 * rho * v * v;
    const double cl = p.mass * 9.80665 / (q * p.wing_area);
    return q * p.wing_area * (p.cd0 + p.induced_drag_factor * cl * cl);
}

inline double oracle_thrust(const AirframeParams& p, double h, double throttle)
{
    return p.max_thrust_sea_level * std::pow(oracle_isa_density(h) / 1.225, p.thrust_lapse_exponent) *
           std::pow(throttle, p.throttle_exponent);
}

/// Largest speed where full-throttle thrust balances level drag, by bisection.
inline double oracle_vmax(const AirframeParams& p, double h)
{
    double lo = 200.0, hi = 900.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (oracle_thrust(p, h, 1.0) > oracle_level_drag(p, h, mid)) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Throttle that balances level drag at speed v, by bisection.
inline double oracle_trim_throttle(const AirframeParams& p, double h, double v)
{
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (oracle_thrust(p, h, mid) < oracle_level_drag(p, h, v)) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Line-of-sight rotation vector from central differences of the LOS unit
/// vector under straight-line relative motion.
inline Vec3 oracle_los_rate(const Vec3& mp, const Vec3& mv, const Vec3& tp, const Vec3& tv, double h)
{
    const auto los = [&](double t) {
        const Vec3 r = (tp + tv * t) - (mp + mv * t);
        return r / norm(r);
    };
    const Vec3 l0 = los(0.0);
    const Vec3 ldot = (los(h) - los(-h)) / (2.0 * h);
    return cross(l0, ldot);
}

struct Flyout {
    MissileState missile;
    AircraftState target;
    double min_range = 0.0;  // raw closest approach, not reset on hit
    std::vector<double> speeds;
    std::vector<double> mds;
};

/// Flies one missile against a constant-velocity target until it terminates or
/// `max_time` elapses. Target moves first each tick, as in the engine.
inline Flyout fly_constant_velocity(MissileState m, AircraftState target, double dt, const MissileParams& p,
                                    double max_time = 400.0, bool record = false)
{
    Flyout f;
    f.min_range = norm(target.position - m.position);
    const Vec3 v = target.velocity();
    const long steps = std::lround(max_time / dt);
    for (long i = 0; i < steps && m.active(); ++i) {
        target.position = target.position + v * dt;
        m = step_missile(m, target, dt, p);
        f.min_range = std::min(f.min_range, norm(target.position - m.position));
        if (record) {
            f.speeds.push_back(m.speed());
            f.mds.push_back(m.min_distance);
        }
        resolve_terminal(m, target, p);
    }
    f.missile = m;
    f.target = target;
    return f;
}

struct StepResponse {
    double settle_time = -1.0;  // last time the error left the band; -1 if never inside
    double overshoot = 0.0;     // largest excursion past the setpoint
    AircraftState final_state;
};

/// Heading step: holds the setpoints and measures settling to +-band degrees.
inline StepResponse heading_step(const AirframeParams& p, double start_deg, double target_deg, double duration,
                                 double band_deg, double dt = 0.02)
{
    AircraftState s = make_aircraft({0, 0, -8000.0}, 300.0, deg_to_rad(start_deg), p);
    s.throttle = 1.0;
    const AutopilotSetpoints sp{deg_to_rad(target_deg), 8000.0, 1.0};
    const double sign = wrap_pi(deg_to_rad(target_deg - start_deg)) >= 0 ? 1.0 : -1.0;
    StepResponse r;
    double last_outside = 0.0;
    const long steps = std::lround(duration / dt);
    for (long i = 1; i <= steps; ++i) {
        s = step_aircraft(s, autopilot(s, sp, p), dt, p);
        const double err = rad_to_deg(wrap_pi(s.heading - sp.heading));
        r.overshoot = std::max(r.overshoot, sign * err);
        if (std::abs(err) > band_deg) last_outside = i * dt;
    }
    r.settle_time = last_outside;
    r.final_state = s;
    return r;
}

/// Altitude step from 8 000 m by `delta` metres.
inline StepResponse altitude_step(const AirframeParams& p, double delta, double duration, double band, double dt = 0.02)
{
    AircraftState s = make_aircraft({0, 0, -8000.0}, 300.0, 0.0, p);
    s.throttle = 1.0;
    const AutopilotSetpoints sp{0.0, 8000.0 + delta, 1.0};
    const double sign = delta >= 0 ? 1.0 : -1.0;
    StepResponse r;
    double last_outside = 0.0;
    const long steps = std::lround(duration / dt);
    for (long i = 1; i <= steps; ++i) {
        s = step_aircraft(s, autopilot(s, sp, p), dt, p);
        const double err = s.altitude() - sp.altitude;
        r.overshoot = std::max(r.overshoot, sign * err);
        if (std::abs(err) > band) last_outside = i * dt;
    }
    r.settle_time = last_outside;
    r.final_state = s;
    return r;
}

}  // namespace bvr::testing
