#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bvr/airframe.hpp"
#include "bvr/missile.hpp"
#include "bvr/red_policy.hpp"

namespace bvr {

inline constexpr int kConfigVersion = 1;
inline constexpr std::string_view kCodeVersion = "bvrsim 1.0.0";

enum class ScenarioKind : std::uint8_t { Evade1, Evade2, Dogfight };

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view name);

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Randomisation ranges for the evasion scenarios. Angles in degrees.
struct InitialConditionRanges {
    double agent_speed_min = 300.0;
    double agent_speed_max = 365.0;
    double launcher_speed_min = 280.0;
    double launcher_speed_max = 320.0;
    double agent_altitude_min = 6000.0;
    double agent_altitude_max = 10000.0;
    double launch_altitude_min = 9000.0;
    double launch_altitude_max = 11000.0;
    double firing_distance_min = 40000.0;
    double firing_distance_max = 80000.0;
    double agent_heading_min_deg = 0.0;
    double agent_heading_max_deg = 360.0;
};

/// Fixed head-on start for the dogfight.
struct DogfightStart {
    double separation = 100000.0;
    double altitude = 10000.0;
    double speed = 300.0;
    int missiles_per_side = 2;
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Evade1;
    double dt = 0.02;
    double decision_interval = 1.0;
    double episode_cap = 960.0;
    bool throttle_fixed = true;
    bool auto_launch = false;
    double blue_launch_envelope = 50000.0;
    double blue_alignment_gate_deg = 10.0;
    std::uint64_t seed = 0;
    InitialConditionRanges ranges;
    DogfightStart dogfight;

    /// Physics ticks per decision.
    int ticks_per_decision() const;
};

struct SimConfig {
    ScenarioConfig scenario;
    AirframeParams airframe;
    MissileParams missile;
    RedPolicyParams red;
};

/// Scenario defaults: 1 s decisions for the evasion scenarios; 10 s decisions and
/// automatic launch for the dogfight.
SimConfig make_config(ScenarioKind kind);

/// Throws ConfigError on violated invariants.
void validate(const SimConfig& config);

using FieldRef =
    std::variant<double*, bool*, int*, std::uint64_t*, std::string*, ScenarioKind*, Integrator*>;

/// Every configurable value with its dotted key, in file order.
std::vector<std::pair<std::string, FieldRef>> config_fields(SimConfig& config);

/// Parses `key = value` lines (`#` comments). Unknown keys are errors. When
/// `kind_override` is set it replaces any `scenario.kind` in the text, and the
/// remaining keys are applied on top of that scenario's defaults.
SimConfig parse_config(std::string_view text, std::optional<ScenarioKind> kind_override = std::nullopt);

SimConfig load_config_file(const std::string& path, std::optional<ScenarioKind> kind_override = std::nullopt);

/// Sets one key from its text value.
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

std::string format_config(const SimConfig& config);

/// Shortest decimal text that round-trips the double exactly.
std::string format_double(double value);

}  // namespace bvr
