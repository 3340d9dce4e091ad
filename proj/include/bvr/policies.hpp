#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "bvr/env.hpp"

namespace bvr {

/// A pilot: maps the environment (observation, or the blue blackboard for
/// scripted pilots) to the next decision.
using Policy = std::function<PilotAction(const Env&)>;

/// Holds the initial heading and altitude.
Policy straight_policy();

struct DiveTurnParams {
    double dive_altitude = 1500.0;  // m
    double turn_delay = 8.0;        // s after the episode starts before the turn begins
};

/// Scripted evader: dive toward dense air first, then turn to put the launch
/// point(s) behind. Uses only the observation.
Policy dive_turn_policy(DiveTurnParams params = {});

/// Uniform random heading, altitude and throttle, with its own substream.
Policy random_policy(std::uint64_t seed, double max_altitude);

/// Flies the behavior-tree adversary logic from the blue side.
Policy bt_policy(const RedPolicyParams& params);

/// Heading, in degrees, pointing away from the launch point(s) in the observation.
double escape_heading_deg(const Observation& obs, ScenarioKind kind);

}  // namespace bvr
