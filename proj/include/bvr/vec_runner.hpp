#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bvr/env.hpp"
#include "bvr/episode_log.hpp"
#include "bvr/policies.hpp"

namespace bvr {

/// K independent worlds stepped together. step() fans out over OpenMP threads;
/// step_serial() is the single-threaded reference and must give identical results.
/// Worlds that are already done are not stepped again: their slot repeats the
/// final observation with reward 0 and done = true.
class VecEnv {
public:
    VecEnv(const SimConfig& config, std::size_t worlds);

    std::size_t size() const { return envs_.size(); }
    Env& env(std::size_t i) { return envs_[i]; }
    const Env& env(std::size_t i) const { return envs_[i]; }

    std::vector<Observation> reset(std::span<const std::uint64_t> seeds);
    std::vector<Transition> step(std::span<const PilotAction> actions, int workers = 0);
    std::vector<Transition> step_serial(std::span<const PilotAction> actions);

    bool all_done() const;

private:
    Transition step_one(std::size_t i, const PilotAction& action);

    std::vector<Env> envs_;
};

/// Builds the pilot for one episode; called once per seed.
using PolicyFactory = std::function<Policy(std::uint64_t seed)>;

/// Runs one logged episode per seed with up to `workers` OpenMP threads
/// (0 = runtime default). Output is ordered by seed index regardless of scheduling.
std::vector<EpisodeLog> run_batch(const PolicyFactory& make_policy, const SimConfig& config,
                                  std::span<const std::uint64_t> seeds, std::string_view policy_name,
                                  int workers = 0);

std::vector<EpisodeLog> run_batch_serial(const PolicyFactory& make_policy, const SimConfig& config,
                                         std::span<const std::uint64_t> seeds, std::string_view policy_name);

/// Number of OpenMP threads available (1 without OpenMP).
int max_workers();

}  // namespace bvr
