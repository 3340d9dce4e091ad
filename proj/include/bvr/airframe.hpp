#pragma once

#include "bvr/vec3.hpp"

namespace bvr {

enum class Integrator { SemiImplicitEuler, Rk4 };

/// Point-mass airframe constants. Angles in degrees; everything else SI.
/// Defaults approximate an F-16 class fighter: level top speed ~Mach 1.8 at
/// 10 km and ~70 % throttle for 300 m/s cruise at the same altitude.
struct AirframeParams {
    double mass = 9000.0;
    double wing_area = 27.87;
    double cd0 = 0.0175;
    double induced_drag_factor = 0.12;
    double max_thrust_sea_level = 63800.0;
    double thrust_lapse_exponent = 0.7;  // thrust ~ (rho/rho0)^lapse
    double throttle_exponent = 2.8;      // thrust ~ throttle^exponent
    double min_speed = 120.0;
    double max_speed = 600.0;
    double ceiling = 15000.0;

    double max_bank_deg = 75.0;
    double max_load_factor = 9.0;
    double roll_time_constant = 0.5;
    double max_roll_rate_deg = 120.0;
    double heading_gain = 4.0;  // bank [rad] per heading error [rad]

    double altitude_gain = 0.1;  // climb rate [m/s] per altitude error [m]
    double max_climb_rate = 150.0;
    double max_descent_rate = 150.0;
    double climb_time_constant = 2.0;
    double max_vertical_accel = 29.42;  // 3 g
    double max_flight_path_deg = 60.0;

    Integrator integrator = Integrator::SemiImplicitEuler;
};

/// Kinematic state of one aircraft. The canonical variables are speed, compass
/// heading and vertical speed; velocity() and the other accessors derive from them.
struct AircraftState {
    Vec3 position;               // m, NED
    double speed = 0.0;          // airspeed, m/s
    double heading = 0.0;        // rad, 0 = north, [0, 2pi)
    double climb_rate = 0.0;     // m/s, positive up
    double bank = 0.0;           // rad
    double throttle = 0.0;       // applied throttle [0, 1]
    double mass = 9000.0;        // kg
    bool alive = true;

    double altitude() const { return -position.z; }
    double down_velocity() const { return -climb_rate; }
    double flight_path_angle() const;
    Vec3 velocity() const;

    friend bool operator==(const AircraftState&, const AircraftState&) = default;
};

struct AutopilotSetpoints {
    double heading = 0.0;   // rad
    double altitude = 0.0;  // m
    double throttle = 1.0;  // [0, 1]

    friend bool operator==(const AutopilotSetpoints&, const AutopilotSetpoints&) = default;
};

struct InnerLoopCommand {
    double bank = 0.0;        // rad
    double climb_rate = 0.0;  // m/s, positive up
    double throttle = 0.0;    // [0, 1]
};

/// Builds a level-flight state at the given point.
AircraftState make_aircraft(const Vec3& position, double speed, double heading_rad, const AirframeParams& params);

/// Proportional heading/altitude hold with saturation.
InnerLoopCommand autopilot(const AircraftState& state, const AutopilotSetpoints& setpoints, const AirframeParams& params);

/// Bank limit actually applied: the smaller of max_bank and the load-factor bound.
double effective_max_bank(const AirframeParams& params);

/// Available thrust at the given altitude and throttle.
double thrust(const AirframeParams& params, double altitude, double throttle);

/// Total drag including induced drag for the given load factor.
double drag(const AirframeParams& params, double altitude, double speed, double load_factor);

/// Advances one fixed step. Ground contact clears `alive`; dead aircraft do not move.
AircraftState step_aircraft(const AircraftState& state, const InnerLoopCommand& cmd, double dt,
                            const AirframeParams& params);

}  // namespace bvr
