#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bvr/airframe.hpp"
#include "bvr/behavior_tree.hpp"
#include "bvr/missile.hpp"

namespace bvr {

/// A detected launch: where and when, never where the missile is now.
struct LaunchEvent {
    UnitId shooter_id = 0;
    Vec3 position;
    double time = 0.0;
};

struct OpponentTrack {
    Vec3 position;
    Vec3 velocity;
};

struct OwnMissileSummary {
    UnitId id = 0;
    double time_since_launch = 0.0;
};

/// Everything a scripted pilot may know. Deliberately holds no threat-missile kinematics.
struct Blackboard {
    double clock = 0.0;
    AircraftState own;
    std::optional<OpponentTrack> opponent;
    std::vector<LaunchEvent> incoming_launches;
    int missiles_remaining = 0;
    std::vector<OwnMissileSummary> own_missiles_in_flight;
};

struct RedPolicyParams {
    double threat_window = 120.0;       // s since a detected launch
    double launch_envelope = 50000.0;   // m
    double alignment_gate_deg = 10.0;
    double evade_altitude = 3000.0;     // m
    double cruise_altitude = 10000.0;   // m
    double crank_angle_deg = 50.0;
    double tick_interval = 1.0;         // s
    std::string tree;                   // s-expression; empty selects the built-in tree
};

struct RedCommand {
    AutopilotSetpoints setpoints;
    bool launch = false;
    std::string_view branch = "none";
};

/// Built-in adversary: evasion first, then engagement, then approach.
std::string_view default_red_tree();

/// Leaf commands, exposed so tests can compare against the tree's choice.
RedCommand evade_command(const Blackboard& bb, const RedPolicyParams& params);
RedCommand approach_command(const Blackboard& bb, const RedPolicyParams& params);

bool incoming_launch_detected(const Blackboard& bb, const RedPolicyParams& params);
bool opponent_in_envelope(const Blackboard& bb, const RedPolicyParams& params);
bool aligned_with_opponent(const Blackboard& bb, const RedPolicyParams& params);

/// Bearing error to the opponent in radians, (-pi, pi]; 0 without an opponent.
double opponent_bearing_error(const Blackboard& bb);

class RedPolicy {
public:
    explicit RedPolicy(RedPolicyParams params);

    RedCommand tick(const Blackboard& bb) const;

    const RedPolicyParams& params() const { return params_; }

    struct Context {
        const Blackboard& bb;
        const RedPolicyParams& params;
        RedCommand out;
    };

private:
    RedPolicyParams params_;
    std::shared_ptr<const BehaviorTree<Context>> tree_;
};

}  // namespace bvr
