#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bvr/config.hpp"
#include "bvr/red_policy.hpp"
#include "bvr/scenarios.hpp"
#include "bvr/world.hpp"
#include "json.hpp"

namespace bvr {

class EpisodeFinished : public std::logic_error {
public:
    EpisodeFinished() : std::logic_error("episode finished") {}
};

struct StepInfo {
    TerminalCause cause = TerminalCause::None;
    std::vector<double> miss_distances;  // every missile in launch order, metres
    int shots_blue = 0;
    int shots_red = 0;
    int physics_ticks = 0;
    bool launched = false;
    bool launch_denied = false;
    bool heading_wrapped = false;
    bool altitude_clamped = false;
    bool throttle_clamped = false;
};

nlohmann::ordered_json to_json(const StepInfo& info);

struct Transition {
    Observation observation;
    double reward = 0.0;
    bool done = false;
    StepInfo info;
};

/// One world and its step loop. Physics runs at scenario.dt; each step() holds the
/// decoded setpoints for one decision interval, stopping early on any terminal event.
///
/// Per physics tick: red behavior tree (dogfight, at red.tick_interval), aircraft,
/// missiles in launch order with hit/expiry resolution, clock, terminal check.
class Env {
public:
    using TickObserver = std::function<void(const World&, std::span<const SimEvent>)>;

    explicit Env(SimConfig config);

    Observation reset(std::uint64_t seed);

    /// Reset from explicit initial conditions instead of sampling them.
    Observation reset(std::uint64_t seed, const InitialConditions& ic);

    /// Throws EpisodeFinished once the world is terminal.
    Transition step(const PilotAction& action);

    bool done() const { return world_.terminal; }
    const World& world() const { return world_; }
    const SimConfig& config() const { return config_; }
    ScenarioKind kind() const { return config_.scenario.kind; }
    std::uint64_t seed() const { return seed_; }

    Observation observation() const { return build_observation(world_, kind()); }

    /// What the blue agent is allowed to know, for scripted blue policies.
    Blackboard blue_blackboard() const { return make_blackboard(world_, world_.agent()); }

    /// Called with the t = 0 world after reset and after every physics tick.
    void set_tick_observer(TickObserver observer) { observer_ = std::move(observer); }

private:
    void physics_tick();
    void evaluate_terminal();
    void fire(std::size_t shooter_index, std::size_t target_index);
    void notify();

    SimConfig config_;
    RedPolicy red_;
    World world_;
    std::uint64_t seed_ = 0;
    std::int64_t red_stride_ = 1;
    std::int64_t cap_ticks_ = 0;
    std::vector<SimEvent> events_;
    TickObserver observer_;
    bool started_ = false;
};

/// Machine-readable description of observation and action spaces.
nlohmann::ordered_json space_spec(const SimConfig& config);

}  // namespace bvr
