#include "doctest.h"
#include "bvr/vec_runner.hpp"

using namespace bvr;

TEST_CASE("parallel step matches the serial reference")
{
    for (ScenarioKind kind : {ScenarioKind::Evade2, ScenarioKind::Dogfight}) {
        const SimConfig cfg = make_config(kind);
        const std::vector<std::uint64_t> seeds{3, 1, 4, 1, 5, 9};
        VecEnv par(cfg, seeds.size()), ser(cfg, seeds.size());
        CHECK(par.reset(seeds) == ser.reset(seeds));
        const Policy pilot = kind == ScenarioKind::Dogfight ? bt_policy(cfg.red) : dive_turn_policy();
        int rounds = 0;
        while (!ser.all_done() && rounds < 200) {
            std::vector<PilotAction> actions;
            for (std::size_t i = 0; i < ser.size(); ++i) actions.push_back(pilot(ser.env(i)));
            const auto a = par.step(actions, 3);
            const auto b = ser.step_serial(actions);
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].observation == b[i].observation);
                CHECK(a[i].reward == b[i].reward);
                CHECK(a[i].done == b[i].done);
                CHECK(par.env(i).world().aircraft == ser.env(i).world().aircraft);
                CHECK(par.env(i).world().missiles == ser.env(i).world().missiles);
            }
            ++rounds;
        }
        CHECK(ser.all_done());
        CHECK(par.all_done());
        // Finished worlds are held, not re-stepped.
        std::vector<PilotAction> idle(ser.size());
        const auto held = par.step(idle);
        for (const Transition& t : held) {
            CHECK(t.done);
            CHECK(t.reward == 0.0);
        }
    }
}

TEST_CASE("batch runs are ordered by seed and independent of worker count")
{
    const SimConfig cfg = make_config(ScenarioKind::Evade1);
    const std::vector<std::uint64_t> seeds{10, 11, 12, 13, 14, 15, 16};
    const PolicyFactory factory = [&](std::uint64_t seed) { return random_policy(seed, cfg.airframe.ceiling); };
    const auto reference = run_batch_serial(factory, cfg, seeds, "random");
    for (int workers : {1, 2, 4}) {
        const auto logs = run_batch(factory, cfg, seeds, "random", workers);
        REQUIRE(logs.size() == seeds.size());
        for (std::size_t i = 0; i < logs.size(); ++i) {
            CHECK(logs[i].header()["seed"] == seeds[i]);
            CHECK(logs[i].lines == reference[i].lines);
        }
    }
}

TEST_CASE("runner argument checks")
{
    const SimConfig cfg = make_config(ScenarioKind::Evade1);
    CHECK_THROWS_AS(VecEnv(cfg, 0), std::invalid_argument);
    VecEnv v(cfg, 2);
    const std::vector<std::uint64_t> one{1};
    CHECK_THROWS_AS(v.reset(one), std::invalid_argument);
    const std::vector<std::uint64_t> two{1, 2};
    v.reset(two);
    const std::vector<PilotAction> three(3);
    CHECK_THROWS_AS(v.step(three), std::invalid_argument);
    CHECK(max_workers() >= 1);
}

TEST_CASE("errors inside parallel episodes reach the caller")
{
    const SimConfig cfg = make_config(ScenarioKind::Evade1);
    const std::vector<std::uint64_t> seeds{1, 2, 3};
    const PolicyFactory bad = [](std::uint64_t seed) -> Policy {
        if (seed == 2) throw std::runtime_error("policy failed");
        return straight_policy();
    };
    CHECK_THROWS_WITH(run_batch(bad, cfg, seeds, "bad", 2), "policy failed");
}
