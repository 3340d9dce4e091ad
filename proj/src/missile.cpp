#include "bvr/missile.hpp"

#include <algorithm>
#include <cmath>

#include "bvr/angles.hpp"
#include "bvr/atmosphere.hpp"

namespace bvr {

namespace {

constexpr double kBurnEpsilon = 1e-9;

Vec3 unit_or_zero(const Vec3& v)
{
    const double n = norm(v);
    return n > 0.0 ? v / n : Vec3{};
}

Vec3 clamp_magnitude(const Vec3& v, double limit)
{
    const double n = norm(v);
    return n > limit ? v * (limit / n) : v;
}

/// Midcourse steering: turn the velocity toward the target bearing at a flight
/// path angle that closes on cruise altitude.
Vec3 midcourse_accel(const MissileState& m, const AircraftState& target, const MissileParams& p)
{
    const Vec3 los = target.position - m.position;
    const double bearing = compass_bearing(los.x, los.y);
    const double max_loft = deg_to_rad(p.max_loft_deg);
    const double gamma = std::clamp(p.loft_gain * (p.cruise_altitude - m.altitude()), -max_loft, max_loft);
    const Vec3 desired{std::cos(gamma) * std::cos(bearing), std::cos(gamma) * std::sin(bearing), -std::sin(gamma)};

    const Vec3 v_hat = unit_or_zero(m.velocity);
    const Vec3 error = desired - v_hat * dot(desired, v_hat);
    return error * (p.steering_gain * m.speed());
}

}  // namespace

std::string_view to_string(MissilePhase phase)
{
    switch (phase) {
    case MissilePhase::Boost: return "boost";
    case MissilePhase::Climb: return "climb";
    case MissilePhase::Guided: return "guided";
    case MissilePhase::Terminated: return "terminated";
    }
    return "unknown";
}

std::string_view to_string(MissileOutcome outcome)
{
    switch (outcome) {
    case MissileOutcome::Active: return "active";
    case MissileOutcome::Hit: return "hit";
    case MissileOutcome::Expired: return "expired";
    }
    return "unknown";
}

Vec3 pn_command(const Vec3& missile_position, const Vec3& missile_velocity, const Vec3& target_position,
                const Vec3& target_velocity, double navigation_constant)
{
    const Vec3 r = target_position - missile_position;
    const double r2 = dot(r, r);
    if (r2 == 0.0) throw TargetCoincident();
    const Vec3 v_rel = target_velocity - missile_velocity;
    const Vec3 los_rate = cross(r, v_rel) / r2;
    return cross(los_rate, missile_velocity) * navigation_constant;
}

Vec3 pn_lateral_accel(const MissileState& missile, const AircraftState& target, double navigation_constant,
                      double max_lateral_accel)
{
    const Vec3 a =
        pn_command(missile.position, missile.velocity, target.position, target.velocity(), navigation_constant);
    return clamp_magnitude(a, max_lateral_accel);
}

MissileState launch_missile(const AircraftState& shooter, UnitId shooter_id, int& inventory, UnitId target_id,
                            const Vec3& target_position, UnitId missile_id, double clock,
                            const MissileParams& params)
{
    if (inventory <= 0) throw OutOfWeapons();
    --inventory;

    MissileState m;
    m.id = missile_id;
    m.shooter_id = shooter_id;
    m.target_id = target_id;
    m.position = shooter.position;
    m.launch_position = shooter.position;
    m.launch_speed = shooter.speed;
    m.launch_time = clock;
    m.burn_time_remaining = params.boost_time;
    m.mass = params.launch_mass;

    const Vec3 los = target_position - shooter.position;
    const double bearing = compass_bearing(los.x, los.y);
    const double gamma = shooter.flight_path_angle();
    m.velocity = Vec3{std::cos(gamma) * std::cos(bearing), std::cos(gamma) * std::sin(bearing), -std::sin(gamma)} *
                 shooter.speed;

    m.last_range = norm(los);
    m.min_distance = m.last_range;
    return m;
}

MissileState step_missile(const MissileState& missile, const AircraftState& target, double dt,
                          const MissileParams& params)
{
    if (!missile.active()) return missile;
    MissileState m = missile;

    if (m.phase == MissilePhase::Boost && m.burn_time_remaining <= kBurnEpsilon) {
        m.burn_time_remaining = 0.0;
        m.phase = MissilePhase::Climb;
    }
    if (m.phase == MissilePhase::Climb) {
        const bool at_cruise = std::abs(m.altitude() - params.cruise_altitude) < params.guidance_altitude_window;
        const bool close = norm(target.position - m.position) < params.guidance_range;
        if (at_cruise || close) m.phase = MissilePhase::Guided;
    }

    const double speed = m.speed();
    const Vec3 v_hat = unit_or_zero(m.velocity);

    Vec3 lateral = m.phase == MissilePhase::Guided
                       ? pn_command(m.position, m.velocity, target.position, target.velocity(),
                                    params.navigation_constant)
                       : midcourse_accel(m, target, params);
    // Lift to hold the trajectory against gravity.
    const Vec3 up{0.0, 0.0, -kGravity};
    lateral += up - v_hat * dot(up, v_hat);
    lateral = clamp_magnitude(lateral, params.max_lateral_accel);

    Vec3 accel = lateral + Vec3{0.0, 0.0, kGravity};

    const double burn = std::min(dt, m.burn_time_remaining);
    if (burn > 0.0) {
        accel += v_hat * (params.boost_accel * burn / dt);
    }

    const double q = 0.5 * isa_density(m.altitude()) * speed * speed;
    if (q > 0.0) {
        const double lift = m.mass * norm(lateral);
        const double drag_force =
            q * params.drag_area + params.induced_drag_factor * lift * lift / (q * params.reference_area);
        accel -= v_hat * (drag_force / m.mass);
    }

    m.velocity += accel * dt;
    m.position += m.velocity * dt;

    if (burn > 0.0) {
        const double propellant_rate = (params.launch_mass - params.burnout_mass) / params.boost_time;
        m.mass = std::max(params.burnout_mass, m.mass - propellant_rate * burn);
        m.burn_time_remaining -= burn;
    }
    m.time_since_launch += dt;

    const double range = norm(target.position - m.position);
    m.min_distance = std::min(m.min_distance, range);
    m.opening_time = range > m.last_range ? m.opening_time + dt : 0.0;
    m.last_range = range;
    return m;
}

MissileOutcome check_terminal(const MissileState& missile, const AircraftState& target, const MissileParams& params)
{
    if (!missile.active()) return missile.outcome;
    const double range = norm(target.position - missile.position);
    if (range < params.hit_radius) return MissileOutcome::Hit;

    const bool burned_out = missile.burn_time_remaining <= kBurnEpsilon;
    const bool slower = missile.speed() < target.speed;
    const bool opening = missile.opening_time >= params.giveup_time - kBurnEpsilon;
    if (burned_out && slower && opening) return MissileOutcome::Expired;

    // Ground impact or a target that no longer exists also ends the flight.
    if (missile.altitude() <= 0.0 || !target.alive) return MissileOutcome::Expired;
    return MissileOutcome::Active;
}

void resolve_terminal(MissileState& missile, const AircraftState& target, const MissileParams& params)
{
    const MissileOutcome outcome = check_terminal(missile, target, params);
    if (outcome == MissileOutcome::Active || !missile.active()) return;
    missile.outcome = outcome;
    missile.phase = MissilePhase::Terminated;
    if (outcome == MissileOutcome::Hit) missile.min_distance = 0.0;
}

}  // namespace bvr
