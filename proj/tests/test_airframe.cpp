#include "doctest.h"
#include "support.hpp"

using namespace bvr;
using namespace bvr::testing;

namespace {

AircraftState level(double alt, double speed, double heading_deg, const AirframeParams& p)
{
    return make_aircraft({0, 0, -alt}, speed, deg_to_rad(heading_deg), p);
}

}  // namespace

TEST_CASE("autopilot zero error is a fixed point")
{
    const AirframeParams p;
    const AircraftState s = level(8000, 300, 45, p);
    const InnerLoopCommand c = autopilot(s, {deg_to_rad(45), 8000, 0.7}, p);
    CHECK(c.bank == 0.0);
    CHECK(c.climb_rate == 0.0);
    CHECK(c.throttle == 0.7);
}

TEST_CASE("autopilot saturates")
{
    const AirframeParams p;
    const AircraftState s = level(8000, 300, 0, p);
    CHECK(autopilot(s, {deg_to_rad(90), 8000, 1}, p).bank == effective_max_bank(p));
    CHECK(autopilot(s, {deg_to_rad(-90), 8000, 1}, p).bank == -effective_max_bank(p));
    CHECK(effective_max_bank(p) <= deg_to_rad(p.max_bank_deg));
    CHECK(effective_max_bank(p) <= std::acos(1.0 / p.max_load_factor) + 1e-12);

    // Descent saturates beyond max_descent_rate / altitude_gain = 1 500 m.
    const double threshold = p.max_descent_rate / p.altitude_gain;
    CHECK(threshold == doctest::Approx(1500.0));
    CHECK(autopilot(s, {0, 6000, 1}, p).climb_rate == -p.max_descent_rate);
    CHECK(autopilot(s, {0, 8000 - threshold - 1, 1}, p).climb_rate == -p.max_descent_rate);
    CHECK(autopilot(s, {0, 8000 - 1000, 1}, p).climb_rate == doctest::Approx(-100.0));
    CHECK(autopilot(s, {0, 12000, 1}, p).climb_rate == p.max_climb_rate);
    CHECK(autopilot(s, {0, 8000, 1.7}, p).throttle == 1.0);
    CHECK(autopilot(s, {0, 8000, -0.2}, p).throttle == 0.0);
}

TEST_CASE("autopilot is continuous in the error")
{
    const AirframeParams p;
    const AircraftState s = level(8000, 300, 0, p);
    double prev = autopilot(s, {deg_to_rad(-60), 8000, 1}, p).bank;
    for (double e = -59.9; e <= 60.0; e += 0.1) {
        const double b = autopilot(s, {deg_to_rad(e), 8000, 1}, p).bank;
        CHECK(b >= prev - 1e-12);
        CHECK(std::abs(b - prev) < 0.01);
        prev = b;
    }
}

TEST_CASE("level trim is an equilibrium")
{
    for (Integrator integ : {Integrator::SemiImplicitEuler, Integrator::Rk4}) {
        AirframeParams p;
        p.integrator = integ;
        AircraftState s = level(10000, 300, 30, p);
        const double trim = oracle_trim_throttle(p, 10000, 300);
        s.throttle = trim;
        const AircraftState next = step_aircraft(s, {0.0, 0.0, trim}, 0.02, p);
        CHECK(std::abs(next.heading - s.heading) < 1e-6);
        CHECK(std::abs(next.altitude() - s.altitude()) < 1e-6);
        CHECK(std::abs(next.speed - s.speed) < 1e-6);
    }
}

TEST_CASE("thrust and drag follow the documented model")
{
    const AirframeParams p;
    for (double h : {0.0, 5000.0, 10000.0}) {
        CHECK(thrust(p, h, 0.8) == doctest::Approx(oracle_thrust(p, h, 0.8)).epsilon(1e-12));
        CHECK(drag(p, h, 320.0, 1.0) == doctest::Approx(oracle_level_drag(p, h, 320.0)).epsilon(1e-12));
    }
    // 300 m/s cruise at 10 km needs a partial throttle; Mach 1.8 is reachable there.
    const double trim = oracle_trim_throttle(p, 10000, 300);
    CHECK(trim > 0.6);
    CHECK(trim < 0.8);
    CHECK(mach(oracle_vmax(p, 10000), 10000) == doctest::Approx(1.8).epsilon(0.03));
}

TEST_CASE("full throttle level flight approaches v_max monotonically")
{
    const AirframeParams p;
    const double vmax = oracle_vmax(p, 10000);
    AircraftState s = level(10000, 300, 0, p);
    s.throttle = 1.0;
    const AutopilotSetpoints sp{0.0, 10000, 1.0};
    double prev = s.speed;
    bool monotone = true;
    for (int i = 0; i < 60 * 50 * 10; ++i) {
        s = step_aircraft(s, autopilot(s, sp, p), 0.02, p);
        if (s.speed < prev - 1e-9) monotone = false;
        prev = s.speed;
    }
    CHECK(monotone);
    CHECK(s.speed == doctest::Approx(vmax).epsilon(0.005));
    CHECK(s.speed < vmax + 1e-6 + 0.005 * vmax);
}

TEST_CASE("turning at constant throttle never increases airspeed")
{
    const AirframeParams p;
    AircraftState s = level(8000, 320, 0, p);
    const double trim = oracle_trim_throttle(p, 8000, 320);
    s.throttle = trim;
    double prev = s.speed;
    for (int i = 0; i < 1500; ++i) {
        s = step_aircraft(s, {deg_to_rad(60), 0.0, trim}, 0.02, p);
        CHECK(s.speed <= prev + 1e-12);
        prev = s.speed;
    }
    CHECK(s.speed < 320.0);
}

TEST_CASE("climbing at fixed throttle costs speed")
{
    const AirframeParams p;
    AircraftState climb = level(8000, 300, 0, p);
    AircraftState flat = climb;
    climb.throttle = flat.throttle = 0.8;
    for (int i = 0; i < 500; ++i) {
        climb = step_aircraft(climb, {0, 60.0, 0.8}, 0.02, p);
        flat = step_aircraft(flat, {0, 0.0, 0.8}, 0.02, p);
    }
    CHECK(climb.altitude() > flat.altitude() + 300.0);
    CHECK(climb.speed < flat.speed - 10.0);
}

TEST_CASE("coordinated turn rate")
{
    const AirframeParams p;
    AircraftState s = level(8000, 250, 0, p);
    s.bank = deg_to_rad(45);
    s.throttle = 1;
    const AircraftState n = step_aircraft(s, {deg_to_rad(45), 0, 1}, 0.02, p);
    const double rate = wrap_pi(n.heading - s.heading) / 0.02;
    CHECK(rate == doctest::Approx(9.80665 * std::tan(deg_to_rad(45)) / n.speed).epsilon(1e-9));
}

TEST_CASE("step_aircraft is deterministic")
{
    const AirframeParams p;
    AircraftState a = level(7000, 310, 10, p), b = a;
    for (int i = 0; i < 1000; ++i) {
        const AutopilotSetpoints sp{deg_to_rad(200), 3000, 0.9};
        a = step_aircraft(a, autopilot(a, sp, p), 0.02, p);
        b = step_aircraft(b, autopilot(b, sp, p), 0.02, p);
    }
    CHECK(a == b);
}

TEST_CASE("ground contact kills exactly once")
{
    const AirframeParams p;
    AircraftState s = level(60, 300, 0, p);
    s.climb_rate = -100;
    int transitions = 0;
    bool was_alive = true;
    for (int i = 0; i < 200; ++i) {
        s = step_aircraft(s, {0, -150, 1}, 0.02, p);
        if (was_alive && !s.alive) ++transitions;
        was_alive = s.alive;
    }
    CHECK(transitions == 1);
    CHECK_FALSE(s.alive);
    CHECK(s.altitude() == 0.0);
    const AircraftState frozen = step_aircraft(s, {0, 0, 1}, 0.02, p);
    CHECK(frozen == s);
}

TEST_CASE("heading and altitude hold settle")
{
    const AirframeParams p;
    for (double start : {0.0, 137.0, 270.0}) {
        const StepResponse r = heading_step(p, start, start + 90.0, 120.0, 2.0);
        CAPTURE(start);
        CHECK(r.settle_time <= 60.0);
        CHECK(r.overshoot < 10.0);
    }
    const StepResponse r = altitude_step(p, -2000.0, 200.0, 50.0);
    CHECK(r.settle_time <= 120.0);
    CHECK(r.final_state.altitude() == doctest::Approx(6000).epsilon(0.01));
}

TEST_CASE("dive then turn: altitude drop precedes the heading sweep")
{
    const AirframeParams p;
    AircraftState s = level(8000, 330, 0, p);
    s.throttle = 1;
    double t_drop = -1, t_turn = -1;
    for (int i = 1; i <= 50 * 90; ++i) {
        const double t = i * 0.02;
        const AutopilotSetpoints sp{t < 8.0 ? 0.0 : kPi, 1500.0, 1.0};
        s = step_aircraft(s, autopilot(s, sp, p), 0.02, p);
        if (t_drop < 0 && s.altitude() < 8000 - 100) t_drop = t;
        if (t_turn < 0 && std::abs(wrap_pi(s.heading)) > deg_to_rad(5)) t_turn = t;
    }
    CHECK(t_drop > 0);
    CHECK(t_turn > 0);
    CHECK(t_drop < t_turn);
    CHECK(std::abs(wrap_pi(s.heading - kPi)) < deg_to_rad(2));
    CHECK(s.altitude() < 3000);
}
