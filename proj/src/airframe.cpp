#include "bvr/airframe.hpp"

#include <algorithm>
#include <cmath>

#include "bvr/angles.hpp"
#include "bvr/atmosphere.hpp"

namespace bvr {

namespace {

struct Derivative {
    Vec3 position;
    double speed = 0.0;
    double heading = 0.0;
    double climb_rate = 0.0;
    double bank = 0.0;
};

double max_vertical_speed(const AirframeParams& p, double speed)
{
    return speed * std::sin(deg_to_rad(p.max_flight_path_deg));
}

Vec3 velocity_of(double speed, double heading, double climb_rate)
{
    const double horizontal = std::sqrt(std::max(0.0, speed * speed - climb_rate * climb_rate));
    return {horizontal * std::cos(heading), horizontal * std::sin(heading), -climb_rate};
}

Derivative derivative(const AircraftState& s, const InnerLoopCommand& cmd, const AirframeParams& p)
{
    Derivative d;
    const double roll_rate_max = deg_to_rad(p.max_roll_rate_deg);
    d.bank = std::clamp((cmd.bank - s.bank) / p.roll_time_constant, -roll_rate_max, roll_rate_max);

    const double vz_max = max_vertical_speed(p, s.speed);
    const double climb_cmd = std::clamp(cmd.climb_rate, -vz_max, vz_max);
    d.climb_rate = std::clamp((climb_cmd - s.climb_rate) / p.climb_time_constant, -p.max_vertical_accel,
                              p.max_vertical_accel);

    const double sin_gamma = s.climb_rate / s.speed;
    const double cos_gamma = std::sqrt(std::max(0.0, 1.0 - sin_gamma * sin_gamma));
    const double tan_bank = std::tan(s.bank);
    const double n_vertical = cos_gamma + d.climb_rate / kGravity;
    const double load_factor = std::sqrt(n_vertical * n_vertical + tan_bank * tan_bank);

    const double altitude = s.altitude();
    d.speed = (thrust(p, altitude, s.throttle) - drag(p, altitude, s.speed, load_factor)) / s.mass -
              kGravity * sin_gamma;
    d.heading = kGravity * tan_bank / s.speed;
    d.position = velocity_of(s.speed, s.heading, s.climb_rate);
    return d;
}

AircraftState advance(const AircraftState& s, const Derivative& d, double h)
{
    AircraftState out = s;
    out.position += d.position * h;
    out.speed += d.speed * h;
    out.heading += d.heading * h;
    out.climb_rate += d.climb_rate * h;
    out.bank += d.bank * h;
    return out;
}

void enforce_envelope(AircraftState& s, const AirframeParams& p)
{
    s.speed = std::clamp(s.speed, p.min_speed, p.max_speed);
    const double vz_max = max_vertical_speed(p, s.speed);
    s.climb_rate = std::clamp(s.climb_rate, -vz_max, vz_max);
    s.heading = wrap_two_pi(s.heading);
}

}  // namespace

double AircraftState::flight_path_angle() const
{
    if (speed <= 0.0) return 0.0;
    return std::asin(std::clamp(climb_rate / speed, -1.0, 1.0));
}

Vec3 AircraftState::velocity() const { return velocity_of(speed, heading, climb_rate); }

AircraftState make_aircraft(const Vec3& position, double speed, double heading_rad, const AirframeParams& params)
{
    AircraftState s;
    s.position = position;
    s.speed = speed;
    s.heading = wrap_two_pi(heading_rad);
    s.mass = params.mass;
    s.throttle = 1.0;
    return s;
}

double effective_max_bank(const AirframeParams& params)
{
    return std::min(deg_to_rad(params.max_bank_deg), std::acos(1.0 / params.max_load_factor));
}

InnerLoopCommand autopilot(const AircraftState& state, const AutopilotSetpoints& setpoints, const AirframeParams& params)
{
    InnerLoopCommand cmd;
    const double bank_limit = effective_max_bank(params);
    const double heading_error = wrap_pi(setpoints.heading - state.heading);
    cmd.bank = std::clamp(params.heading_gain * heading_error, -bank_limit, bank_limit);

    const double altitude_error = setpoints.altitude - state.altitude();
    cmd.climb_rate =
        std::clamp(params.altitude_gain * altitude_error, -params.max_descent_rate, params.max_climb_rate);

    cmd.throttle = std::clamp(setpoints.throttle, 0.0, 1.0);
    return cmd;
}

double thrust(const AirframeParams& params, double altitude, double throttle)
{
    const double sigma = isa_density(altitude) / isa::kSeaLevelDensity;
    return params.max_thrust_sea_level * std::pow(sigma, params.thrust_lapse_exponent) *
           std::pow(std::clamp(throttle, 0.0, 1.0), params.throttle_exponent);
}

double drag(const AirframeParams& params, double altitude, double speed, double load_factor)
{
    const double qs = 0.5 * isa_density(altitude) * speed * speed * params.wing_area;
    const double cl = load_factor * params.mass * kGravity / qs;
    return qs * (params.cd0 + params.induced_drag_factor * cl * cl);
}

AircraftState step_aircraft(const AircraftState& state, const InnerLoopCommand& cmd, double dt,
                            const AirframeParams& params)
{
    if (!state.alive) return state;

    AircraftState s = state;
    s.throttle = std::clamp(cmd.throttle, 0.0, 1.0);

    if (params.integrator == Integrator::Rk4) {
        const Derivative k1 = derivative(s, cmd, params);
        const Derivative k2 = derivative(advance(s, k1, 0.5 * dt), cmd, params);
        const Derivative k3 = derivative(advance(s, k2, 0.5 * dt), cmd, params);
        const Derivative k4 = derivative(advance(s, k3, dt), cmd, params);
        Derivative sum;
        sum.position = (k1.position + 2.0 * k2.position + 2.0 * k3.position + k4.position) / 6.0;
        sum.speed = (k1.speed + 2.0 * k2.speed + 2.0 * k3.speed + k4.speed) / 6.0;
        sum.heading = (k1.heading + 2.0 * k2.heading + 2.0 * k3.heading + k4.heading) / 6.0;
        sum.climb_rate = (k1.climb_rate + 2.0 * k2.climb_rate + 2.0 * k3.climb_rate + k4.climb_rate) / 6.0;
        sum.bank = (k1.bank + 2.0 * k2.bank + 2.0 * k3.bank + k4.bank) / 6.0;
        s = advance(s, sum, dt);
        enforce_envelope(s, params);
    } else {
        // Rates first, then heading and position from the updated rates.
        const Derivative d = derivative(s, cmd, params);
        s.bank += d.bank * dt;
        s.climb_rate += d.climb_rate * dt;
        s.speed += d.speed * dt;
        enforce_envelope(s, params);
        s.heading = wrap_two_pi(s.heading + kGravity * std::tan(s.bank) / s.speed * dt);
        s.position += s.velocity() * dt;
    }

    if (s.altitude() <= 0.0) {
        s.position.z = 0.0;
        s.alive = false;
    }
    return s;
}

}  // namespace bvr
