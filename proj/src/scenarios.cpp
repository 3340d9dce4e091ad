#include "bvr/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bvr/angles.hpp"
#include "bvr/rng.hpp"

namespace bvr {

namespace {

constexpr double kAltitudeScale = 20000.0;
constexpr double kSpeedScale = 600.0;
constexpr double kDistanceScale = 100000.0;
constexpr double kAngleScale = 180.0;
constexpr double kTimeScale = 300.0;

/// Relative bearing in degrees, (-180, 180], from `from` (with heading) to `to`.
double relative_bearing_deg(const AircraftState& from, const Vec3& to)
{
    const Vec3 d = to - from.position;
    if (d.x == 0.0 && d.y == 0.0) return 0.0;
    return rad_to_deg(wrap_pi(compass_bearing(d.x, d.y) - from.heading));
}

double heading_deg(const AircraftState& s) { return wrap_360(rad_to_deg(s.heading)); }

const MissileState* earliest_active_from(const World& world, Team team)
{
    for (const MissileState& m : world.missiles) {
        const AircraftUnit* shooter = world.find_aircraft(m.shooter_id);
        if (m.active() && shooter != nullptr && shooter->team == team) return &m;
    }
    return nullptr;
}

void require_terminal(const World& world)
{
    if (!world.terminal) throw std::logic_error("terminal reward requested before the episode ended");
}

}  // namespace

InitialConditions sample_initial_conditions(const ScenarioConfig& config, std::uint64_t seed)
{
    InitialConditions ic;
    if (config.kind == ScenarioKind::Dogfight) {
        ic.agent_speed = config.dogfight.speed;
        ic.agent_altitude = config.dogfight.altitude;
        ic.agent_heading_deg = 0.0;
        return ic;
    }
    const InitialConditionRanges& r = config.ranges;
    CounterRng agent = CounterRng::substream(seed, "agent");
    ic.agent_speed = agent.uniform(r.agent_speed_min, r.agent_speed_max);
    ic.agent_altitude = agent.uniform(r.agent_altitude_min, r.agent_altitude_max);
    ic.agent_heading_deg = agent.uniform(r.agent_heading_min_deg, r.agent_heading_max_deg);

    const int launchers = config.kind == ScenarioKind::Evade2 ? 2 : 1;
    for (int i = 1; i <= launchers; ++i) {
        CounterRng rng = CounterRng::substream(seed, "launcher." + std::to_string(i));
        LaunchSpec l;
        l.speed = rng.uniform(r.launcher_speed_min, r.launcher_speed_max);
        l.altitude = rng.uniform(r.launch_altitude_min, r.launch_altitude_max);
        l.distance = rng.uniform(r.firing_distance_min, r.firing_distance_max);
        l.bearing_deg = rng.uniform(0.0, 360.0);
        ic.launches.push_back(l);
    }
    return ic;
}

World build_world(const SimConfig& config, const InitialConditions& ic)
{
    World w;
    const ScenarioConfig& sc = config.scenario;

    AircraftUnit blue;
    blue.id = w.next_id++;
    blue.team = Team::Blue;
    blue.state = make_aircraft({0.0, 0.0, -ic.agent_altitude}, ic.agent_speed, deg_to_rad(ic.agent_heading_deg),
                               config.airframe);
    blue.setpoints = {blue.state.heading, ic.agent_altitude, 1.0};

    if (sc.kind == ScenarioKind::Dogfight) {
        blue.missiles_remaining = sc.dogfight.missiles_per_side;
        w.aircraft.push_back(blue);

        AircraftUnit red;
        red.id = w.next_id++;
        red.team = Team::Red;
        red.state = make_aircraft({sc.dogfight.separation, 0.0, -sc.dogfight.altitude}, sc.dogfight.speed, kPi,
                                  config.airframe);
        red.setpoints = {red.state.heading, sc.dogfight.altitude, 1.0};
        red.missiles_remaining = sc.dogfight.missiles_per_side;
        w.aircraft.push_back(red);
        return w;
    }

    w.aircraft.push_back(blue);
    for (const LaunchSpec& l : ic.launches) {
        const double b = deg_to_rad(l.bearing_deg);
        AircraftUnit launcher;
        launcher.id = w.next_id++;
        launcher.team = Team::Red;
        launcher.simulated = false;
        launcher.missiles_remaining = 1;
        const Vec3 pos{l.distance * std::cos(b), l.distance * std::sin(b), -l.altitude};
        const Vec3 to_agent = w.agent().state.position - pos;
        launcher.state = make_aircraft(pos, l.speed, compass_bearing(to_agent.x, to_agent.y), config.airframe);
        launcher.setpoints = {launcher.state.heading, l.altitude, 1.0};
        w.aircraft.push_back(launcher);
    }
    for (std::size_t i = 1; i < w.aircraft.size(); ++i) {
        AircraftUnit& launcher = w.aircraft[i];
        w.missiles.push_back(launch_missile(launcher.state, launcher.id, launcher.missiles_remaining,
                                            w.agent().id, w.agent().state.position, w.next_id++, 0.0,
                                            config.missile));
    }
    return w;
}

std::vector<ObservationField> observation_fields(ScenarioKind kind)
{
    const ObservationField h{"h", 0.0, 25000.0, kAltitudeScale};
    const ObservationField vd{"v_D", -600.0, 600.0, kSpeedScale};
    const ObservationField v{"v", 0.0, 600.0, kSpeedScale};
    const ObservationField psi{"psi", 0.0, 360.0, kAngleScale, true};

    const auto missile_block = [](const std::string& suffix) {
        return std::vector<ObservationField>{
            {"nu" + suffix, 0.0, 600.0, kSpeedScale},
            {"tau" + suffix, 0.0, 3600.0, kTimeScale},
            {"eta" + suffix, -180.0, 180.0, kAngleScale, true},
            {"beta" + suffix, 0.0, 25000.0, kAltitudeScale},
            {"rho" + suffix, 0.0, 1.0e6, kDistanceScale},
        };
    };

    std::vector<ObservationField> fields;
    switch (kind) {
    case ScenarioKind::Evade1: {
        fields = {h, vd, v, psi};
        const auto m = missile_block("");
        fields.insert(fields.end(), m.begin(), m.end());
        break;
    }
    case ScenarioKind::Evade2: {
        fields = {h, vd, v, psi};
        for (const char* s : {"_M1", "_M2"}) {
            const auto m = missile_block(s);
            fields.insert(fields.end(), m.begin(), m.end());
        }
        break;
    }
    case ScenarioKind::Dogfight:
        fields = {
            {"rho_BR", 0.0, 1.0e6, kDistanceScale},
            {"nu_BR", -180.0, 180.0, kAngleScale, true},
            {"v_B", 0.0, 600.0, kSpeedScale},
            {"h_B", 0.0, 25000.0, kAltitudeScale},
            {"psi_B", 0.0, 360.0, kAngleScale, true},
            {"v_R", 0.0, 600.0, kSpeedScale},
            {"h_R", 0.0, 25000.0, kAltitudeScale},
            {"rho_BM0", 0.0, 1.0e6, kDistanceScale},
            {"nu_BM0", -180.0, 180.0, kAngleScale, true},
            {"v_M0", 0.0, 600.0, kSpeedScale},
            {"h_M0", 0.0, 25000.0, kAltitudeScale},
        };
        break;
    }
    return fields;
}

Observation build_observation(const World& world, ScenarioKind kind)
{
    Observation obs;
    const AircraftState& agent = world.agent().state;

    if (kind == ScenarioKind::Dogfight) {
        const AircraftUnit* red = world.opponent_of(world.agent());
        const AircraftState red_state = red != nullptr ? red->state : agent;
        const double rho_br = norm(red_state.position - agent.position);
        const double nu_br = relative_bearing_deg(agent, red_state.position);
        obs.raw = {rho_br, nu_br, agent.speed, agent.altitude(), heading_deg(agent), red_state.speed,
                   red_state.altitude()};
        if (const MissileState* m = earliest_active_from(world, Team::Red); m != nullptr) {
            obs.raw.insert(obs.raw.end(), {norm(m->launch_position - agent.position),
                                           relative_bearing_deg(agent, m->launch_position), m->launch_speed,
                                           m->launch_altitude()});
        } else {
            // No red missile in flight: it rides on the aircraft carrying it.
            obs.raw.insert(obs.raw.end(), {rho_br, nu_br, red_state.speed, red_state.altitude()});
        }
    } else {
        obs.raw = {agent.altitude(), agent.down_velocity(), agent.speed, heading_deg(agent)};
        for (const MissileState& m : world.missiles) {
            if (m.target_id != world.agent().id) continue;
            obs.raw.insert(obs.raw.end(), {m.launch_speed, std::max(0.0, world.clock - m.launch_time),
                                           relative_bearing_deg(agent, m.launch_position), m.launch_altitude(),
                                           norm(m.launch_position - agent.position)});
        }
    }

    const std::vector<ObservationField> fields = observation_fields(kind);
    if (obs.raw.size() != fields.size()) {
        throw std::logic_error("observation length does not match the scenario layout");
    }
    obs.normalized.resize(obs.raw.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
        double value = obs.raw[i];
        if (fields[i].angular) value = rad_to_deg(wrap_pi(deg_to_rad(value)));
        obs.normalized[i] = std::clamp(value / fields[i].scale, -1.0, 1.0);
    }
    return obs;
}

DecodedAction decode_action(const PilotAction& action, const SimConfig& config)
{
    DecodedAction d;
    const double heading = wrap_360(action.heading_deg);
    d.heading_wrapped = heading != action.heading_deg;
    d.setpoints.heading = deg_to_rad(heading);

    d.setpoints.altitude = std::clamp(action.altitude, 0.0, config.airframe.ceiling);
    d.altitude_clamped = d.setpoints.altitude != action.altitude;

    if (config.scenario.throttle_fixed) {
        d.setpoints.throttle = 1.0;
    } else {
        d.setpoints.throttle = std::clamp(action.throttle, 0.0, 1.0);
        d.throttle_clamped = d.setpoints.throttle != action.throttle;
    }
    return d;
}

std::vector<double> threat_miss_distances(const World& world)
{
    std::vector<double> mds;
    for (const MissileState& m : world.missiles) {
        if (m.target_id == world.agent().id) mds.push_back(m.min_distance);
    }
    return mds;
}

double terminal_reward_evade1(const World& world)
{
    require_terminal(world);
    if (world.cause == TerminalCause::MissileHit || world.cause == TerminalCause::GroundImpact) return 0.0;
    const std::vector<double> mds = threat_miss_distances(world);
    return mds.empty() ? 0.0 : mds.front() / 1000.0;
}

double terminal_reward_evade2(const World& world)
{
    require_terminal(world);
    if (world.cause == TerminalCause::MissileHit || world.cause == TerminalCause::GroundImpact) return 0.0;
    const std::vector<double> mds = threat_miss_distances(world);
    if (mds.empty()) return 0.0;
    return *std::min_element(mds.begin(), mds.end()) / 1000.0;
}

double reward_dogfight(const World& world)
{
    if (!world.terminal) return 0.0;
    switch (world.cause) {
    case TerminalCause::RedDestroyed:
    case TerminalCause::RedGroundImpact: return 1.0;
    default: return -1.0;
    }
}

double step_reward(const World& world, ScenarioKind kind)
{
    if (!world.terminal) return 0.0;
    switch (kind) {
    case ScenarioKind::Evade1: return terminal_reward_evade1(world);
    case ScenarioKind::Evade2: return terminal_reward_evade2(world);
    case ScenarioKind::Dogfight: return reward_dogfight(world);
    }
    return 0.0;
}

bool auto_launch_check(const AircraftUnit& shooter, const AircraftUnit& opponent, const ScenarioConfig& config)
{
    if (shooter.missiles_remaining <= 0 || !shooter.state.alive || !opponent.state.alive) return false;
    const Vec3 d = opponent.state.position - shooter.state.position;
    if (!(norm(d) < config.blue_launch_envelope)) return false;
    const double error = wrap_pi(compass_bearing(d.x, d.y) - shooter.state.heading);
    return std::abs(error) < deg_to_rad(config.blue_alignment_gate_deg);
}

}  // namespace bvr
