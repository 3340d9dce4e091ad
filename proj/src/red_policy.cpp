#include "bvr/red_policy.hpp"

#include <cmath>

#include "bvr/angles.hpp"

namespace bvr {

namespace {

constexpr std::string_view kDefaultTree = R"((fallback
  (sequence (condition incoming_launch) (action evade))
  (sequence (condition opponent_in_envelope)
    (fallback
      (sequence (condition own_missile_in_flight) (action crank))
      (sequence (condition missile_available)
        (fallback
          (sequence (condition aligned) (action launch))
          (action align)))))
  (action approach)))";

double bearing_to(const AircraftState& own, const Vec3& point)
{
    const Vec3 d = point - own.position;
    return compass_bearing(d.x, d.y);
}

RedCommand hold_course(const Blackboard& bb, const RedPolicyParams& params)
{
    RedCommand c;
    c.setpoints = {bb.own.heading, params.cruise_altitude, 1.0};
    return c;
}

RedCommand toward_opponent(const Blackboard& bb, const RedPolicyParams& params, std::string_view branch)
{
    RedCommand c = hold_course(bb, params);
    if (bb.opponent) c.setpoints.heading = bearing_to(bb.own, bb.opponent->position);
    c.branch = branch;
    return c;
}

using Tree = BehaviorTree<RedPolicy::Context>;

Tree::Registry make_registry()
{
    Tree::Registry r;
    r.conditions["incoming_launch"] = [](const RedPolicy::Context& c) {
        return incoming_launch_detected(c.bb, c.params);
    };
    r.conditions["opponent_in_envelope"] = [](const RedPolicy::Context& c) {
        return opponent_in_envelope(c.bb, c.params);
    };
    r.conditions["own_missile_in_flight"] = [](const RedPolicy::Context& c) {
        return !c.bb.own_missiles_in_flight.empty();
    };
    r.conditions["missile_available"] = [](const RedPolicy::Context& c) { return c.bb.missiles_remaining > 0; };
    r.conditions["aligned"] = [](const RedPolicy::Context& c) { return aligned_with_opponent(c.bb, c.params); };

    r.actions["evade"] = [](RedPolicy::Context& c) {
        c.out = evade_command(c.bb, c.params);
        return BtStatus::Success;
    };
    r.actions["launch"] = [](RedPolicy::Context& c) {
        c.out = toward_opponent(c.bb, c.params, "engage");
        c.out.launch = true;
        return BtStatus::Success;
    };
    r.actions["align"] = [](RedPolicy::Context& c) {
        c.out = toward_opponent(c.bb, c.params, "engage");
        return BtStatus::Success;
    };
    r.actions["crank"] = [](RedPolicy::Context& c) {
        c.out = toward_opponent(c.bb, c.params, "engage");
        // Offset to whichever side the aircraft already points.
        const double side = wrap_pi(c.bb.own.heading - c.out.setpoints.heading) >= 0.0 ? 1.0 : -1.0;
        c.out.setpoints.heading =
            wrap_two_pi(c.out.setpoints.heading + side * deg_to_rad(c.params.crank_angle_deg));
        return BtStatus::Success;
    };
    r.actions["approach"] = [](RedPolicy::Context& c) {
        c.out = approach_command(c.bb, c.params);
        return BtStatus::Success;
    };
    r.actions["hold"] = [](RedPolicy::Context& c) {
        c.out = hold_course(c.bb, c.params);
        c.out.branch = "hold";
        return BtStatus::Success;
    };
    return r;
}

}  // namespace

std::string_view default_red_tree() { return kDefaultTree; }

bool incoming_launch_detected(const Blackboard& bb, const RedPolicyParams& params)
{
    for (const LaunchEvent& e : bb.incoming_launches) {
        const double age = bb.clock - e.time;
        if (age >= 0.0 && age <= params.threat_window) return true;
    }
    return false;
}

bool opponent_in_envelope(const Blackboard& bb, const RedPolicyParams& params)
{
    return bb.opponent && norm(bb.opponent->position - bb.own.position) < params.launch_envelope;
}

double opponent_bearing_error(const Blackboard& bb)
{
    if (!bb.opponent) return 0.0;
    return wrap_pi(bearing_to(bb.own, bb.opponent->position) - bb.own.heading);
}

bool aligned_with_opponent(const Blackboard& bb, const RedPolicyParams& params)
{
    return bb.opponent && std::abs(opponent_bearing_error(bb)) < deg_to_rad(params.alignment_gate_deg);
}

RedCommand evade_command(const Blackboard& bb, const RedPolicyParams& params)
{
    // Most recent launch inside the threat window.
    const LaunchEvent* threat = nullptr;
    for (const LaunchEvent& e : bb.incoming_launches) {
        const double age = bb.clock - e.time;
        if (age < 0.0 || age > params.threat_window) continue;
        if (threat == nullptr || e.time >= threat->time) threat = &e;
    }
    RedCommand c = hold_course(bb, params);
    c.branch = "evade";
    c.setpoints.altitude = params.evade_altitude;
    if (threat != nullptr) c.setpoints.heading = wrap_two_pi(bearing_to(bb.own, threat->position) + kPi);
    return c;
}

RedCommand approach_command(const Blackboard& bb, const RedPolicyParams& params)
{
    return toward_opponent(bb, params, "approach");
}

RedPolicy::RedPolicy(RedPolicyParams params) : params_(std::move(params))
{
    const BtSpec spec = parse_bt(params_.tree.empty() ? default_red_tree() : std::string_view(params_.tree));
    tree_ = std::make_shared<const Tree>(spec, make_registry());
}

RedCommand RedPolicy::tick(const Blackboard& bb) const
{
    Context ctx{bb, params_, hold_course(bb, params_)};
    tree_->tick(ctx);
    return ctx.out;
}

}  // namespace bvr
