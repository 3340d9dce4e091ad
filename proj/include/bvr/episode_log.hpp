#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bvr/env.hpp"
#include "bvr/policies.hpp"
#include "json.hpp"

namespace bvr {

inline constexpr int kLogFormatVersion = 1;
inline constexpr std::string_view kLogFormat = "bvrsim-episode";

class VersionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// JSON-lines episode record. Line order:
///
///   header      format, versions, seed, policy name, full config
///   tick        one per physics tick, tick 0 = state after reset
///   decision    the action applied at the start of each step (precedes its ticks)
///   step        reward, done and info after each step (follows its ticks)
///   footer      totals and outcome
///   digest      FNV-1a 64 over every preceding byte
///
/// Field order inside each record is fixed; angles are degrees.
struct EpisodeLog {
    std::vector<std::string> lines;

    nlohmann::ordered_json header() const;
    nlohmann::ordered_json footer() const;
    std::string text() const;
    std::size_t tick_count() const;
};

/// Encodes one tick record.
std::string tick_record(const World& world, std::span<const SimEvent> events);

std::string decision_record(std::int64_t tick, const PilotAction& action);

PilotAction parse_action(const nlohmann::ordered_json& action);

/// Streams an Env into an EpisodeLog. Attach before reset.
class EpisodeRecorder {
public:
    EpisodeRecorder(Env& env, std::string policy_name);

    void decision(const PilotAction& action);
    void step(const Transition& transition);
    EpisodeLog finish();

private:
    Env& env_;
    std::string policy_name_;
    std::vector<std::string> lines_;
    double total_reward_ = 0.0;
    std::int64_t steps_ = 0;
    Transition last_;
};

nlohmann::ordered_json make_header(const SimConfig& config, std::uint64_t seed, std::string_view policy_name);

/// Resets, then loops policy/step until done.
EpisodeLog run_episode(const Policy& policy, const SimConfig& config, std::uint64_t seed,
                       std::string_view policy_name = "custom");

void write_log(const EpisodeLog& log, const std::string& path);
EpisodeLog read_log(const std::string& path);
EpisodeLog parse_log(std::string_view text);

/// Rebuilds the SimConfig stored in a header.
SimConfig config_from_header(const nlohmann::ordered_json& header);

struct ReplayReport {
    enum class Status { Identical, Diverged, Corrupt };
    Status status = Status::Identical;
    std::size_t line = 0;                  // 1-based, 0 when identical
    std::optional<std::int64_t> tick;      // physics tick of the first divergence when known
    std::string message;

    bool identical() const { return status == Status::Identical; }
};

std::string_view to_string(ReplayReport::Status status);

/// Re-simulates from the header and the logged decisions and compares every line.
/// Throws VersionMismatch when the log was written by a different format or code version.
ReplayReport replay(const EpisodeLog& log);

/// Per-episode summary row.
struct EpisodeSummary {
    std::uint64_t seed = 0;
    std::string scenario;
    std::string policy;
    std::string outcome;
    double total_reward = 0.0;
    double min_miss_distance_km = 0.0;
    double duration = 0.0;
    std::int64_t ticks = 0;
    int shots_blue = 0;
    int shots_red = 0;
};

EpisodeSummary summarize(const EpisodeLog& log);

}  // namespace bvr
