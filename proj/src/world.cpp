#include "bvr/world.hpp"

#include <algorithm>

namespace bvr {

std::string_view to_string(Team team) { return team == Team::Blue ? "blue" : "red"; }

std::string_view to_string(TerminalCause cause)
{
    switch (cause) {
    case TerminalCause::None: return "none";
    case TerminalCause::MissileHit: return "missile_hit";
    case TerminalCause::MissilesExpired: return "missiles_expired";
    case TerminalCause::GroundImpact: return "ground_impact";
    case TerminalCause::RedDestroyed: return "red_destroyed";
    case TerminalCause::RedGroundImpact: return "red_ground_impact";
    case TerminalCause::BlueDestroyed: return "blue_destroyed";
    case TerminalCause::BlueGroundImpact: return "blue_ground_impact";
    case TerminalCause::Timeout: return "timeout";
    }
    return "unknown";
}

std::string_view to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::Launch: return "launch";
    case EventKind::Hit: return "hit";
    case EventKind::Expire: return "expire";
    case EventKind::GroundImpact: return "ground_impact";
    }
    return "unknown";
}

const AircraftUnit* World::find_aircraft(UnitId id) const
{
    const auto it = std::find_if(aircraft.begin(), aircraft.end(), [id](const AircraftUnit& u) { return u.id == id; });
    return it == aircraft.end() ? nullptr : &*it;
}

AircraftUnit* World::find_aircraft(UnitId id)
{
    const auto it = std::find_if(aircraft.begin(), aircraft.end(), [id](const AircraftUnit& u) { return u.id == id; });
    return it == aircraft.end() ? nullptr : &*it;
}

const AircraftUnit* World::opponent_of(const AircraftUnit& unit) const
{
    for (const AircraftUnit& u : aircraft) {
        if (u.team != unit.team && u.simulated) return &u;
    }
    return nullptr;
}

int World::shots_fired(Team team) const
{
    int n = 0;
    for (const MissileState& m : missiles) {
        const AircraftUnit* shooter = find_aircraft(m.shooter_id);
        if (shooter != nullptr && shooter->team == team) ++n;
    }
    return n;
}

Blackboard make_blackboard(const World& world, const AircraftUnit& unit)
{
    Blackboard bb;
    bb.clock = world.clock;
    bb.own = unit.state;
    bb.missiles_remaining = unit.missiles_remaining;
    if (const AircraftUnit* opp = world.opponent_of(unit); opp != nullptr && opp->state.alive) {
        bb.opponent = OpponentTrack{opp->state.position, opp->state.velocity()};
    }
    for (const MissileState& m : world.missiles) {
        if (m.target_id == unit.id) {
            bb.incoming_launches.push_back({m.shooter_id, m.launch_position, m.launch_time});
        }
        if (m.shooter_id == unit.id && m.active()) {
            bb.own_missiles_in_flight.push_back({m.id, m.time_since_launch});
        }
    }
    return bb;
}

}  // namespace bvr
