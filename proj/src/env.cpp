#include "bvr/env.hpp"

#include <cmath>

#include "bvr/angles.hpp"

namespace bvr {

nlohmann::ordered_json to_json(const StepInfo& info)
{
    return {
        {"cause", std::string(to_string(info.cause))},
        {"miss_distances", info.miss_distances},
        {"shots_blue", info.shots_blue},
        {"shots_red", info.shots_red},
        {"physics_ticks", info.physics_ticks},
        {"launched", info.launched},
        {"launch_denied", info.launch_denied},
        {"heading_wrapped", info.heading_wrapped},
        {"altitude_clamped", info.altitude_clamped},
        {"throttle_clamped", info.throttle_clamped},
    };
}

Env::Env(SimConfig config) : config_(std::move(config)), red_(config_.red)
{
    validate(config_);
    red_stride_ = std::max<std::int64_t>(1, std::llround(config_.red.tick_interval / config_.scenario.dt));
    cap_ticks_ = std::llround(config_.scenario.episode_cap / config_.scenario.dt);
}

Observation Env::reset(std::uint64_t seed)
{
    return reset(seed, sample_initial_conditions(config_.scenario, seed));
}

Observation Env::reset(std::uint64_t seed, const InitialConditions& ic)
{
    seed_ = seed;
    world_ = build_world(config_, ic);
    events_.clear();
    for (const MissileState& m : world_.missiles) events_.push_back({EventKind::Launch, m.id, m.target_id});
    started_ = true;
    notify();
    return observation();
}

Transition Env::step(const PilotAction& action)
{
    if (!started_ || world_.terminal) throw EpisodeFinished();

    Transition t;
    const DecodedAction decoded = decode_action(action, config_);
    world_.agent().setpoints = decoded.setpoints;
    t.info.heading_wrapped = decoded.heading_wrapped;
    t.info.altitude_clamped = decoded.altitude_clamped;
    t.info.throttle_clamped = decoded.throttle_clamped;

    if (kind() == ScenarioKind::Dogfight && world_.aircraft.size() > 1) {
        const AircraftUnit& blue = world_.aircraft[0];
        const AircraftUnit& red = world_.aircraft[1];
        const bool want = config_.scenario.auto_launch ? auto_launch_check(blue, red, config_.scenario)
                                                       : action.launch;
        if (want) {
            if (blue.missiles_remaining > 0 && red.state.alive) {
                fire(0, 1);
                t.info.launched = true;
            } else {
                t.info.launch_denied = true;
            }
        }
    }

    const int ticks = config_.scenario.ticks_per_decision();
    for (int i = 0; i < ticks && !world_.terminal; ++i) {
        physics_tick();
        ++t.info.physics_ticks;
    }

    t.observation = observation();
    t.reward = step_reward(world_, kind());
    t.done = world_.terminal;
    t.info.cause = world_.cause;
    for (const MissileState& m : world_.missiles) t.info.miss_distances.push_back(m.min_distance);
    t.info.shots_blue = world_.shots_fired(Team::Blue);
    t.info.shots_red = world_.shots_fired(Team::Red);
    return t;
}

void Env::fire(std::size_t shooter_index, std::size_t target_index)
{
    AircraftUnit& shooter = world_.aircraft[shooter_index];
    const AircraftUnit& target = world_.aircraft[target_index];
    world_.missiles.push_back(launch_missile(shooter.state, shooter.id, shooter.missiles_remaining, target.id,
                                             target.state.position, world_.next_id++, world_.clock,
                                             config_.missile));
    events_.push_back({EventKind::Launch, world_.missiles.back().id, target.id});
}

void Env::physics_tick()
{
    const double dt = config_.scenario.dt;

    if (kind() == ScenarioKind::Dogfight && world_.tick % red_stride_ == 0 && world_.aircraft.size() > 1 &&
        world_.aircraft[1].state.alive) {
        const RedCommand cmd = red_.tick(make_blackboard(world_, world_.aircraft[1]));
        world_.aircraft[1].setpoints = cmd.setpoints;
        if (cmd.launch && world_.aircraft[1].missiles_remaining > 0 && world_.aircraft[0].state.alive) {
            fire(1, 0);
        }
    }

    for (AircraftUnit& unit : world_.aircraft) {
        if (!unit.simulated || !unit.state.alive) continue;
        const InnerLoopCommand cmd = autopilot(unit.state, unit.setpoints, config_.airframe);
        unit.state = step_aircraft(unit.state, cmd, dt, config_.airframe);
        if (!unit.state.alive) events_.push_back({EventKind::GroundImpact, unit.id, 0});
    }

    for (MissileState& m : world_.missiles) {
        if (!m.active()) continue;
        AircraftUnit* target = world_.find_aircraft(m.target_id);
        m = step_missile(m, target->state, dt, config_.missile);
        resolve_terminal(m, target->state, config_.missile);
        if (m.outcome == MissileOutcome::Hit) {
            if (target->state.alive) target->killed = true;
            target->state.alive = false;
            events_.push_back({EventKind::Hit, m.id, target->id});
        } else if (m.outcome == MissileOutcome::Expired) {
            events_.push_back({EventKind::Expire, m.id, target->id});
        }
    }

    ++world_.tick;
    world_.clock = static_cast<double>(world_.tick) * dt;
    evaluate_terminal();
    notify();
}

void Env::evaluate_terminal()
{
    if (world_.terminal) return;
    TerminalCause cause = TerminalCause::None;
    const AircraftUnit& blue = world_.agent();

    if (kind() == ScenarioKind::Dogfight) {
        const AircraftUnit& red = world_.aircraft[1];
        // Simultaneous losses resolve against blue.
        if (!blue.state.alive) {
            cause = blue.killed ? TerminalCause::BlueDestroyed : TerminalCause::BlueGroundImpact;
        } else if (!red.state.alive) {
            cause = red.killed ? TerminalCause::RedDestroyed : TerminalCause::RedGroundImpact;
        }
    } else {
        bool threats_active = false;
        for (const MissileState& m : world_.missiles) {
            threats_active = threats_active || (m.target_id == blue.id && m.active());
        }
        if (!blue.state.alive) {
            cause = blue.killed ? TerminalCause::MissileHit : TerminalCause::GroundImpact;
        } else if (!threats_active) {
            cause = TerminalCause::MissilesExpired;
        }
    }
    if (cause == TerminalCause::None && world_.tick >= cap_ticks_) cause = TerminalCause::Timeout;

    if (cause != TerminalCause::None) {
        world_.terminal = true;
        world_.cause = cause;
    }
}

void Env::notify()
{
    if (observer_) observer_(world_, events_);
    events_.clear();
}

nlohmann::ordered_json space_spec(const SimConfig& config)
{
    nlohmann::ordered_json obs = nlohmann::ordered_json::array();
    for (const ObservationField& f : observation_fields(config.scenario.kind)) {
        obs.push_back({{"name", f.name}, {"low", f.low}, {"high", f.high}, {"scale", f.scale}, {"angular", f.angular}});
    }
    nlohmann::ordered_json act = nlohmann::ordered_json::array();
    act.push_back({{"name", "a_Head"}, {"low", 0.0}, {"high", 360.0}, {"unit", "deg"}});
    act.push_back({{"name", "a_Alt"}, {"low", 0.0}, {"high", config.airframe.ceiling}, {"unit", "m"}});
    if (!config.scenario.throttle_fixed) {
        act.push_back({{"name", "a_Thr"}, {"low", 0.0}, {"high", 1.0}, {"unit", "1"}});
    }
    if (config.scenario.kind == ScenarioKind::Dogfight && !config.scenario.auto_launch) {
        act.push_back({{"name", "a_l"}, {"low", 0.0}, {"high", 1.0}, {"unit", "flag"}});
    }
    const std::size_t n_obs = obs.size();
    const std::size_t n_act = act.size();
    return {
        {"scenario", std::string(to_string(config.scenario.kind))},
        {"observation", {{"shape", nlohmann::ordered_json::array({n_obs})}, {"fields", obs}, {"normalized_bounds", {-1.0, 1.0}}}},
        {"action", {{"shape", nlohmann::ordered_json::array({n_act})}, {"fields", act}}},
        {"decision_interval", config.scenario.decision_interval},
        {"dt", config.scenario.dt},
        {"episode_cap", config.scenario.episode_cap},
    };
}

}  // namespace bvr
