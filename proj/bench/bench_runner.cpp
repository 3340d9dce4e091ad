// Serial vs OpenMP throughput for the lockstep world runner and the episode batch runner.
//   bvrsim_bench [--worlds K] [--episodes N] [--workers W] [--repeats R]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bvr/policies.hpp"
#include "bvr/scenarios.hpp"
#include "bvr/vec_runner.hpp"

using namespace bvr;

namespace {

template <class F>
double best_of(int repeats, F&& f)
{
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

double lockstep(const SimConfig& cfg, std::size_t k, int workers)
{
    const Policy blue = bt_policy(cfg.red);
    std::vector<std::uint64_t> seeds(k);
    std::iota(seeds.begin(), seeds.end(), 1);
    VecEnv vec(cfg, k);
    vec.reset(seeds);
    std::vector<PilotAction> actions(k);
    while (!vec.all_done()) {
        for (std::size_t i = 0; i < k; ++i) actions[i] = vec.env(i).done() ? PilotAction{} : blue(vec.env(i));
        if (workers == 0) vec.step_serial(actions); else vec.step(actions, workers);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) total += vec.env(i).world().clock;
    return total;
}

void report(const char* name, double serial, double parallel, int workers)
{
    std::printf("%-28s serial %8.3f s   %2d workers %8.3f s   speedup %5.2fx\n", name, serial, workers, parallel,
                serial / parallel);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bvrsim benchmark"};
    std::size_t worlds = 10;
    int episodes = 64, workers = 8, repeats = 3;
    app.add_option("--worlds", worlds, "Lockstep worlds")->check(CLI::PositiveNumber);
    app.add_option("--episodes", episodes, "Batch episodes")->check(CLI::PositiveNumber);
    app.add_option("--workers", workers, "OpenMP workers")->check(CLI::PositiveNumber);
    app.add_option("--repeats", repeats, "Repeats per measurement (best is reported)")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    std::printf("hardware threads %u, OpenMP max workers %d\n", std::thread::hardware_concurrency(), max_workers());

    const SimConfig dogfight = make_config(ScenarioKind::Dogfight);
    double sim_serial = 0, sim_parallel = 0;
    const double t_serial = best_of(repeats, [&] { sim_serial = lockstep(dogfight, worlds, 0); });
    const double t_parallel = best_of(repeats, [&] { sim_parallel = lockstep(dogfight, worlds, workers); });
    report("dogfight lockstep (K worlds)", t_serial, t_parallel, workers);
    std::printf("  K=%zu, %.0f simulated s per run, identical totals: %s\n", worlds, sim_serial,
                sim_serial == sim_parallel ? "yes" : "no");

    const SimConfig evade = make_config(ScenarioKind::Evade1);
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(episodes));
    std::iota(seeds.begin(), seeds.end(), 0);
    const PolicyFactory factory = [](std::uint64_t) { return dive_turn_policy(); };
    std::vector<EpisodeLog> a, b;
    const double b_serial = best_of(repeats, [&] { a = run_batch_serial(factory, evade, seeds, "dive-turn"); });
    const double b_parallel = best_of(repeats, [&] { b = run_batch(factory, evade, seeds, "dive-turn", workers); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].lines == b[i].lines;
    report("evade1 batch (logged)", b_serial, b_parallel, workers);
    std::printf("  %d episodes, logs byte-identical: %s\n", episodes, same ? "yes" : "no");
    return same && sim_serial == sim_parallel ? 0 : 1;
}
