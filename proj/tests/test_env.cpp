#include "doctest.h"
#include "bvr/angles.hpp"
#include "bvr/env.hpp"
#include "bvr/policies.hpp"

using namespace bvr;

TEST_CASE("reset is seeded")
{
    Env a(make_config(ScenarioKind::Evade1)), b(make_config(ScenarioKind::Evade1));
    CHECK(a.reset(17) == b.reset(17));
    int differing = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        if (a.reset(s).raw[8] != b.reset(s + 1000).raw[8]) ++differing;
    }
    CHECK(differing == 50);
}

TEST_CASE("dogfight resets are identical")
{
    Env env(make_config(ScenarioKind::Dogfight));
    const Observation o1 = env.reset(1);
    const World w1 = env.world();
    const Observation o2 = env.reset(987654);
    CHECK(o1 == o2);
    CHECK(env.world().aircraft == w1.aircraft);
    CHECK(env.world().aircraft.size() == 2);
    CHECK(env.world().missiles.empty());
}

TEST_CASE("evasion reset launches the threats at t = 0")
{
    Env env(make_config(ScenarioKind::Evade2));
    env.reset(4);
    const World& w = env.world();
    CHECK(w.clock == 0.0);
    CHECK(w.missiles.size() == 2);
    for (const MissileState& m : w.missiles) {
        CHECK(m.target_id == w.agent().id);
        CHECK(m.time_since_launch == 0.0);
        CHECK(m.phase == MissilePhase::Boost);
    }
}

TEST_CASE("altitude below zero is clamped and flagged")
{
    Env env(make_config(ScenarioKind::Evade1));
    env.reset(3);
    const Transition t = env.step({90, -500, 1, false});
    CHECK(t.info.altitude_clamped);
    CHECK(env.world().agent().setpoints.altitude == 0.0);
}

TEST_CASE("dogfight step runs 500 physics ticks")
{
    Env env(make_config(ScenarioKind::Dogfight));
    env.reset(0);
    const Transition t = env.step({0, 10000, 1, false});
    CHECK_FALSE(t.done);
    CHECK(t.info.physics_ticks == 500);
    CHECK(env.world().tick == 500);
    CHECK(env.world().clock == 10.0);
    CHECK(t.reward == 0.0);
}

TEST_CASE("clock is tick times dt; step after done throws")
{
    Env env(make_config(ScenarioKind::Evade1));
    env.reset(8);
    const Policy p = straight_policy();
    std::vector<double> clocks;
    env.set_tick_observer([&](const World& w, std::span<const SimEvent>) {
        CHECK(w.clock == static_cast<double>(w.tick) * 0.02);
        clocks.push_back(w.clock);
    });
    Transition t;
    int steps = 0;
    while (!env.done()) {
        t = env.step(p(env));
        ++steps;
        CHECK(t.done == env.world().terminal);
        if (!t.done) CHECK(t.reward == 0.0);
    }
    CHECK(t.done);
    CHECK(clocks.size() == static_cast<std::size_t>(env.world().tick));
    CHECK_THROWS_WITH_AS(env.step(p(env)), "episode finished", EpisodeFinished);
    CHECK(env.world().cause != TerminalCause::None);
}

TEST_CASE("terminal checks run every physics tick")
{
    // A decision interval far longer than the flyout still stops at the event.
    SimConfig cfg = make_config(ScenarioKind::Evade1);
    cfg.scenario.decision_interval = 400.0;
    Env env(cfg);
    env.reset(2);
    const Transition t = env.step(straight_policy()(env));
    CHECK(t.done);
    CHECK(t.info.physics_ticks < 400 * 50);
    CHECK(env.world().tick == t.info.physics_ticks);
}

TEST_CASE("straight and level is usually hit")
{
    const SimConfig cfg = make_config(ScenarioKind::Evade1);
    const Policy p = straight_policy();
    int hits = 0, expired = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Env env(cfg);
        env.reset(seed);
        while (!env.done()) env.step(p(env));
        if (env.world().cause == TerminalCause::MissileHit) ++hits;
        if (env.world().cause == TerminalCause::MissilesExpired) ++expired;
    }
    CHECK(hits > 50);
    CHECK(hits + expired == 100);
}

TEST_CASE("dogfight launch flag")
{
    SimConfig manual = make_config(ScenarioKind::Dogfight);
    manual.scenario.auto_launch = false;
    Env env(manual);
    env.reset(0);
    // Out-of-envelope shots are allowed; the missile is simply wasted.
    const Transition first = env.step({0, 10000, 1, true});
    CHECK(first.info.launched);
    CHECK(first.info.shots_blue == 1);
    CHECK(env.world().agent().missiles_remaining == 1);
    const Transition none = env.step({0, 10000, 1, false});
    CHECK_FALSE(none.info.launched);
    CHECK(none.info.shots_blue == 1);
    env.step({0, 10000, 1, true});
    CHECK(env.world().agent().missiles_remaining == 0);
    const Transition empty = env.step({0, 10000, 1, true});
    CHECK(empty.info.launch_denied);
    CHECK(empty.info.shots_blue == 2);
}

TEST_CASE("dogfight auto launch fires inside the gates")
{
    Env env(make_config(ScenarioKind::Dogfight));
    env.reset(0);
    Transition t;
    while (!env.done() && t.info.shots_blue == 0) t = env.step({0, 10000, 1, false});
    REQUIRE(t.info.shots_blue == 1);
    const World& w = env.world();
    const MissileState* m = nullptr;
    for (const MissileState& x : w.missiles) {
        if (x.shooter_id == w.agent().id) m = &x;
    }
    REQUIRE(m != nullptr);
    // Fired at a decision boundary while the opponent was inside the envelope.
    CHECK(std::fmod(m->launch_time, 10.0) == 0.0);
    CHECK(m->launch_time > 0.0);
    CHECK(m->launch_position.x > 20000.0);
}

TEST_CASE("dogfight: expired missiles give no reward until the cap")
{
    const SimConfig cfg = make_config(ScenarioKind::Dogfight);
    Env env(cfg);
    env.reset(1);
    const Policy blue = bt_policy(cfg.red);
    Transition t;
    while (!env.done()) {
        t = env.step(blue(env));
        if (!t.done) CHECK(t.reward == 0.0);
    }
    const World& w = env.world();
    // The symmetric start gives a timeout with every missile spent.
    CHECK(w.cause == TerminalCause::Timeout);
    CHECK(t.reward == -1.0);
    CHECK(w.clock == doctest::Approx(960.0));
    CHECK(w.missiles.size() == 4);
    for (const MissileState& m : w.missiles) CHECK(m.outcome == MissileOutcome::Expired);
}

TEST_CASE("space spec")
{
    const auto e1 = space_spec(make_config(ScenarioKind::Evade1));
    CHECK(e1["observation"]["shape"][0] == 9);
    CHECK(e1["observation"]["fields"].size() == 9);
    CHECK(e1["action"]["fields"].size() == 2);
    CHECK(e1["action"]["fields"][0]["name"] == "a_Head");
    SimConfig manual = make_config(ScenarioKind::Dogfight);
    manual.scenario.auto_launch = false;
    manual.scenario.throttle_fixed = false;
    const auto df = space_spec(manual);
    CHECK(df["observation"]["shape"][0] == 11);
    CHECK(df["action"]["fields"].size() == 4);
    CHECK(df["decision_interval"] == 10.0);
}
