#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "bvr/airframe.hpp"
#include "bvr/vec3.hpp"

namespace bvr {

using UnitId = std::uint32_t;

/// BVR missile constants: single-stage boost, loft to cruise altitude, then
/// true proportional navigation.
struct MissileParams {
    double navigation_constant = 4.0;
    double max_lateral_accel = 40.0 * 9.80665;
    double boost_time = 10.0;
    double boost_accel = 98.0;   // axial thrust acceleration during burn, m/s^2
    double launch_mass = 160.0;
    double burnout_mass = 110.0;
    double drag_area = 0.006;           // Cd * reference area, m^2
    double reference_area = 0.0249;     // m^2
    double induced_drag_factor = 0.02;  // Cd_i = k * Cl^2
    double cruise_altitude = 12000.0;
    double loft_gain = 2.0e-4;  // commanded flight path [rad] per altitude error [m]
    double max_loft_deg = 25.0;
    double steering_gain = 0.5;  // 1/s, midcourse turn rate per rad of direction error
    double hit_radius = 100.0;
    double giveup_time = 10.0;
    double guidance_altitude_window = 500.0;
    double guidance_range = 20000.0;
};

enum class MissilePhase : std::uint8_t { Boost, Climb, Guided, Terminated };
enum class MissileOutcome : std::uint8_t { Active, Hit, Expired };

std::string_view to_string(MissilePhase phase);
std::string_view to_string(MissileOutcome outcome);

struct MissileState {
    UnitId id = 0;
    UnitId shooter_id = 0;
    UnitId target_id = 0;
    Vec3 position;
    Vec3 velocity;
    MissilePhase phase = MissilePhase::Boost;
    MissileOutcome outcome = MissileOutcome::Active;
    Vec3 launch_position;
    double launch_speed = 0.0;        // nu
    double launch_time = 0.0;         // world clock at launch
    double time_since_launch = 0.0;   // tau
    double burn_time_remaining = 0.0;
    double mass = 0.0;
    double min_distance = 0.0;        // running miss distance MD
    double last_range = 0.0;
    double opening_time = 0.0;        // consecutive seconds of strictly increasing range

    double speed() const { return norm(velocity); }
    double altitude() const { return -position.z; }
    double launch_altitude() const { return -launch_position.z; }
    bool active() const { return outcome == MissileOutcome::Active; }

    friend bool operator==(const MissileState&, const MissileState&) = default;
};

class OutOfWeapons : public std::runtime_error {
public:
    OutOfWeapons() : std::runtime_error("out of weapons") {}
};

class TargetCoincident : public std::runtime_error {
public:
    TargetCoincident() : std::runtime_error("target coincident") {}
};

/// True PN acceleration N * (r x v_rel)/(r.r) x v_m, before the lateral limit.
/// Throws TargetCoincident for zero range.
Vec3 pn_command(const Vec3& missile_position, const Vec3& missile_velocity, const Vec3& target_position,
                const Vec3& target_velocity, double navigation_constant);

/// PN command clamped to the lateral acceleration limit; always perpendicular to the missile velocity.
Vec3 pn_lateral_accel(const MissileState& missile, const AircraftState& target, double navigation_constant,
                      double max_lateral_accel);

/// Creates a missile at the shooter, pointed horizontally at the target, and
/// decrements `inventory`. Throws OutOfWeapons when the inventory is empty.
MissileState launch_missile(const AircraftState& shooter, UnitId shooter_id, int& inventory, UnitId target_id,
                            const Vec3& target_position, UnitId missile_id, double clock,
                            const MissileParams& params);

/// One fixed step of flight: phase schedule, steering or PN, thrust, drag, gravity,
/// and the running miss-distance update. Inactive missiles are returned unchanged.
MissileState step_missile(const MissileState& missile, const AircraftState& target, double dt,
                          const MissileParams& params);

/// Hit / expiry decision against the current target state.
MissileOutcome check_terminal(const MissileState& missile, const AircraftState& target, const MissileParams& params);

/// Applies check_terminal and, on a terminal outcome, updates phase, outcome and MD.
void resolve_terminal(MissileState& missile, const AircraftState& target, const MissileParams& params);

}  // namespace bvr
