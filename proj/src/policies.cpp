#include "bvr/policies.hpp"

#include <cmath>
#include <memory>

#include "bvr/angles.hpp"
#include "bvr/rng.hpp"

namespace bvr {

Policy straight_policy()
{
    return [](const Env& env) {
        const AutopilotSetpoints& s = env.world().agent().setpoints;
        return PilotAction{rad_to_deg(s.heading), s.altitude, 1.0, false};
    };
}

double escape_heading_deg(const Observation& obs, ScenarioKind kind)
{
    const std::vector<double>& o = obs.raw;
    double north = 0.0;
    double east = 0.0;
    const auto add = [&](double psi_deg, double rel_deg) {
        const double b = deg_to_rad(psi_deg + rel_deg);
        north += std::cos(b);
        east += std::sin(b);
    };
    switch (kind) {
    case ScenarioKind::Evade1: add(o[3], o[6]); break;
    case ScenarioKind::Evade2:
        add(o[3], o[6]);
        add(o[3], o[11]);
        break;
    case ScenarioKind::Dogfight: add(o[4], o[8]); break;
    }
    return wrap_360(rad_to_deg(compass_bearing(north, east)) + 180.0);
}

Policy dive_turn_policy(DiveTurnParams params)
{
    return [params](const Env& env) {
        const Observation obs = env.observation();
        const AircraftState& own = env.world().agent().state;
        PilotAction a;
        a.altitude = params.dive_altitude;
        a.throttle = 1.0;
        a.heading_deg = env.world().clock < params.turn_delay ? rad_to_deg(own.heading)
                                                              : escape_heading_deg(obs, env.kind());
        return a;
    };
}

Policy random_policy(std::uint64_t seed, double max_altitude)
{
    auto rng = std::make_shared<CounterRng>(CounterRng::substream(seed, "policy.random"));
    return [rng, max_altitude](const Env&) {
        PilotAction a;
        a.heading_deg = rng->uniform(0.0, 360.0);
        a.altitude = rng->uniform(1000.0, max_altitude);
        a.throttle = rng->uniform(0.5, 1.0);
        a.launch = rng->uniform() < 0.1;
        return a;
    };
}

Policy bt_policy(const RedPolicyParams& params)
{
    auto pilot = std::make_shared<const RedPolicy>(params);
    return [pilot](const Env& env) {
        const RedCommand cmd = pilot->tick(env.blue_blackboard());
        return PilotAction{rad_to_deg(cmd.setpoints.heading), cmd.setpoints.altitude, cmd.setpoints.throttle,
                           cmd.launch};
    };
}

}  // namespace bvr
