#include "bvr/vec_runner.hpp"

#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bvr {

namespace {

int thread_count(int workers)
{
    return workers > 0 ? workers : max_workers();
}

// Exceptions must not escape an OpenMP region; keep the first by index.
class ErrorSlot {
public:
    explicit ErrorSlot(std::size_t n) : errors_(n) {}
    void set(std::size_t i, std::exception_ptr e) { errors_[i] = std::move(e); }
    void rethrow() const
    {
        for (const auto& e : errors_) {
            if (e) std::rethrow_exception(e);
        }
    }

private:
    std::vector<std::exception_ptr> errors_;
};

}  // namespace

int max_workers()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

VecEnv::VecEnv(const SimConfig& config, std::size_t worlds)
{
    if (worlds == 0) throw std::invalid_argument("vectorized runner needs at least one world");
    envs_.reserve(worlds);
    for (std::size_t i = 0; i < worlds; ++i) envs_.emplace_back(config);
}

std::vector<Observation> VecEnv::reset(std::span<const std::uint64_t> seeds)
{
    if (seeds.size() != envs_.size()) throw std::invalid_argument("one seed per world required");
    std::vector<Observation> out;
    out.reserve(envs_.size());
    for (std::size_t i = 0; i < envs_.size(); ++i) out.push_back(envs_[i].reset(seeds[i]));
    return out;
}

Transition VecEnv::step_one(std::size_t i, const PilotAction& action)
{
    Env& env = envs_[i];
    if (env.done()) {
        Transition t;
        t.observation = env.observation();
        t.reward = 0.0;
        t.done = true;
        t.info.cause = env.world().cause;
        return t;
    }
    return env.step(action);
}

std::vector<Transition> VecEnv::step(std::span<const PilotAction> actions, int workers)
{
    if (actions.size() != envs_.size()) throw std::invalid_argument("one action per world required");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(envs_.size());
    std::vector<Transition> out(envs_.size());
    ErrorSlot errors(envs_.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(workers))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[i] = step_one(static_cast<std::size_t>(i), actions[i]);
        } catch (...) {
            errors.set(static_cast<std::size_t>(i), std::current_exception());
        }
    }
    errors.rethrow();
    return out;
}

std::vector<Transition> VecEnv::step_serial(std::span<const PilotAction> actions)
{
    if (actions.size() != envs_.size()) throw std::invalid_argument("one action per world required");
    std::vector<Transition> out;
    out.reserve(envs_.size());
    for (std::size_t i = 0; i < envs_.size(); ++i) out.push_back(step_one(i, actions[i]));
    return out;
}

bool VecEnv::all_done() const
{
    for (const Env& env : envs_) {
        if (!env.done()) return false;
    }
    return true;
}

std::vector<EpisodeLog> run_batch(const PolicyFactory& make_policy, const SimConfig& config,
                                  std::span<const std::uint64_t> seeds, std::string_view policy_name, int workers)
{
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(seeds.size());
    std::vector<EpisodeLog> logs(seeds.size());
    ErrorSlot errors(seeds.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(workers))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            logs[i] = run_episode(make_policy(seeds[i]), config, seeds[i], policy_name);
        } catch (...) {
            errors.set(static_cast<std::size_t>(i), std::current_exception());
        }
    }
    errors.rethrow();
    return logs;
}

std::vector<EpisodeLog> run_batch_serial(const PolicyFactory& make_policy, const SimConfig& config,
                                         std::span<const std::uint64_t> seeds, std::string_view policy_name)
{
    std::vector<EpisodeLog> logs;
    logs.reserve(seeds.size());
    for (std::uint64_t seed : seeds) logs.push_back(run_episode(make_policy(seed), config, seed, policy_name));
    return logs;
}

}  // namespace bvr
