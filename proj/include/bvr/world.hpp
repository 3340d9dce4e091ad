#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "bvr/airframe.hpp"
#include "bvr/missile.hpp"
#include "bvr/red_policy.hpp"

namespace bvr {

enum class Team : std::uint8_t { Blue, Red };

enum class TerminalCause : std::uint8_t {
    None,
    MissileHit,        // evasion: the agent was hit
    MissilesExpired,   // evasion: every threat missile gave up
    GroundImpact,      // evasion: the agent flew into the ground
    RedDestroyed,      // dogfight: red hit by a blue missile
    RedGroundImpact,   // dogfight: red flew into the ground
    BlueDestroyed,     // dogfight: blue hit by a red missile
    BlueGroundImpact,  // dogfight: blue flew into the ground
    Timeout,
};

std::string_view to_string(Team team);
std::string_view to_string(TerminalCause cause);

struct AircraftUnit {
    UnitId id = 0;
    Team team = Team::Blue;
    AircraftState state;
    AutopilotSetpoints setpoints;
    int missiles_remaining = 0;
    bool simulated = true;  // evasion-scenario launch platforms stay frozen at the launch point
    bool killed = false;    // destroyed by a missile, as opposed to ground impact

    friend bool operator==(const AircraftUnit&, const AircraftUnit&) = default;
};

enum class EventKind : std::uint8_t { Launch, Hit, Expire, GroundImpact };

std::string_view to_string(EventKind kind);

struct SimEvent {
    EventKind kind = EventKind::Launch;
    UnitId unit = 0;   // missile for launch/hit/expire, aircraft for ground impact
    UnitId other = 0;  // target for launch/hit/expire
};

struct World {
    std::int64_t tick = 0;
    double clock = 0.0;
    std::vector<AircraftUnit> aircraft;  // index 0 is always the blue agent
    std::vector<MissileState> missiles;
    bool terminal = false;
    TerminalCause cause = TerminalCause::None;
    UnitId next_id = 1;

    AircraftUnit& agent() { return aircraft.front(); }
    const AircraftUnit& agent() const { return aircraft.front(); }

    const AircraftUnit* find_aircraft(UnitId id) const;
    AircraftUnit* find_aircraft(UnitId id);

    /// First simulated aircraft of the other team, if any.
    const AircraftUnit* opponent_of(const AircraftUnit& unit) const;

    int shots_fired(Team team) const;
};

/// The view a scripted pilot gets of the world: own state, opponent track,
/// detected launches aimed at it, its own weapons. Threat-missile positions are
/// never copied in.
Blackboard make_blackboard(const World& world, const AircraftUnit& unit);

}  // namespace bvr
