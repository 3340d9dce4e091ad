#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bvr/config.hpp"
#include "bvr/world.hpp"

namespace bvr {

/// One threat launch in an evasion scenario, relative to the agent's start.
struct LaunchSpec {
    double speed = 300.0;        // nu, m/s
    double altitude = 10000.0;   // beta, m
    double distance = 60000.0;   // horizontal firing distance, m
    double bearing_deg = 0.0;    // compass bearing from the agent to the launch point
};

struct InitialConditions {
    double agent_speed = 300.0;
    double agent_altitude = 8000.0;
    double agent_heading_deg = 0.0;
    std::vector<LaunchSpec> launches;
};

/// Draws the evasion start from the configured ranges, one counter-based
/// substream per unit. The dogfight start is fixed and ignores the seed.
InitialConditions sample_initial_conditions(const ScenarioConfig& config, std::uint64_t seed);

/// Builds the t = 0 world. Evasion threats are launched here, at the agent.
World build_world(const SimConfig& config, const InitialConditions& ic);

/// Observation in interface units (metres, m/s, seconds, degrees) plus a copy
/// scaled into [-1, 1] by fixed ranges.
struct Observation {
    std::vector<double> raw;
    std::vector<double> normalized;

    friend bool operator==(const Observation&, const Observation&) = default;
};

struct ObservationField {
    std::string name;
    double low;
    double high;
    double scale;          // normalized = raw / scale, clamped to [-1, 1]
    bool angular = false;  // wrapped to (-180, 180] before scaling
};

std::vector<ObservationField> observation_fields(ScenarioKind kind);

Observation build_observation(const World& world, ScenarioKind kind);

/// Pilot decision at the interface: heading in degrees, altitude in metres.
struct PilotAction {
    double heading_deg = 0.0;
    double altitude = 0.0;
    double throttle = 1.0;
    bool launch = false;
};

struct DecodedAction {
    AutopilotSetpoints setpoints;
    bool heading_wrapped = false;
    bool altitude_clamped = false;
    bool throttle_clamped = false;
};

DecodedAction decode_action(const PilotAction& action, const SimConfig& config);

/// Miss distance reward in kilometres. Throws std::logic_error before termination.
double terminal_reward_evade1(const World& world);
double terminal_reward_evade2(const World& world);

/// +1 red destroyed, -1 blue lost or timeout, 0 while running.
double reward_dogfight(const World& world);

/// Reward for the transition that produced `world`: zero until terminal.
double step_reward(const World& world, ScenarioKind kind);

/// Missile available, opponent inside the envelope and within the alignment gate.
bool auto_launch_check(const AircraftUnit& shooter, const AircraftUnit& opponent, const ScenarioConfig& config);

/// Miss distances of the threat missiles aimed at the agent, in launch order.
std::vector<double> threat_miss_distances(const World& world);

}  // namespace bvr
