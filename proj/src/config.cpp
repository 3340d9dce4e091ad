#include "bvr/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bvr {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text)
{
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("bad value for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("bad boolean for '" + std::string(key) + "': '" + std::string(text) + "'");
}

Integrator parse_integrator(std::string_view text)
{
    if (text == "semi_implicit_euler") return Integrator::SemiImplicitEuler;
    if (text == "rk4") return Integrator::Rk4;
    throw ConfigError("unknown integrator '" + std::string(text) + "'");
}

std::string_view integrator_name(Integrator i)
{
    return i == Integrator::Rk4 ? "rk4" : "semi_implicit_euler";
}

}  // namespace

std::string_view to_string(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::Evade1: return "evade1";
    case ScenarioKind::Evade2: return "evade2";
    case ScenarioKind::Dogfight: return "dogfight";
    }
    return "unknown";
}

ScenarioKind parse_scenario_kind(std::string_view name)
{
    if (name == "evade1") return ScenarioKind::Evade1;
    if (name == "evade2") return ScenarioKind::Evade2;
    if (name == "dogfight") return ScenarioKind::Dogfight;
    throw ConfigError("unknown scenario '" + std::string(name) + "' (expected evade1, evade2 or dogfight)");
}

std::string format_double(double value)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

int ScenarioConfig::ticks_per_decision() const
{
    return static_cast<int>(std::llround(decision_interval / dt));
}

SimConfig make_config(ScenarioKind kind)
{
    SimConfig c;
    c.scenario.kind = kind;
    if (kind == ScenarioKind::Dogfight) {
        c.scenario.decision_interval = 10.0;
        c.scenario.auto_launch = true;
    }
    return c;
}

void validate(const SimConfig& c)
{
    const ScenarioConfig& s = c.scenario;
    if (!(s.dt > 0.0 && s.dt <= 0.1)) throw ConfigError("scenario.dt must be in (0, 0.1]");
    if (!(s.decision_interval > 0.0)) throw ConfigError("scenario.decision_interval must be positive");
    const double ticks = s.decision_interval / s.dt;
    if (std::llround(ticks) < 1 || std::abs(ticks - std::round(ticks)) > 1e-9 * std::max(1.0, ticks)) {
        throw ConfigError("scenario.decision_interval must be a positive multiple of scenario.dt");
    }
    if (!(s.episode_cap > 0.0)) throw ConfigError("scenario.episode_cap must be positive");
    const auto ordered = [](double lo, double hi, const char* name) {
        if (!(lo <= hi)) throw ConfigError(std::string("range ") + name + " has min > max");
    };
    ordered(s.ranges.agent_speed_min, s.ranges.agent_speed_max, "agent_speed");
    ordered(s.ranges.launcher_speed_min, s.ranges.launcher_speed_max, "launcher_speed");
    ordered(s.ranges.agent_altitude_min, s.ranges.agent_altitude_max, "agent_altitude");
    ordered(s.ranges.launch_altitude_min, s.ranges.launch_altitude_max, "launch_altitude");
    ordered(s.ranges.firing_distance_min, s.ranges.firing_distance_max, "firing_distance");
    ordered(s.ranges.agent_heading_min_deg, s.ranges.agent_heading_max_deg, "agent_heading");
    if (s.dogfight.missiles_per_side < 0) throw ConfigError("dogfight.missiles_per_side must be >= 0");
    if (!(c.airframe.mass > 0.0)) throw ConfigError("airframe.mass must be positive");
    if (!(c.airframe.min_speed > 0.0 && c.airframe.min_speed < c.airframe.max_speed)) {
        throw ConfigError("airframe speed envelope is empty");
    }
    if (c.missile.navigation_constant < 3.0 || c.missile.navigation_constant > 5.0) {
        throw ConfigError("missile.navigation_constant must be within [3, 5]");
    }
    if (!(c.airframe.ceiling > 0.0)) throw ConfigError("airframe.ceiling must be positive");
    if (!(c.missile.hit_radius >= 0.0)) throw ConfigError("missile.hit_radius must be >= 0");
    if (!(c.missile.boost_time >= 0.0)) throw ConfigError("missile.boost_time must be >= 0");
    if (!(c.missile.burnout_mass > 0.0 && c.missile.launch_mass >= c.missile.burnout_mass)) {
        throw ConfigError("missile masses must satisfy 0 < burnout_mass <= launch_mass");
    }
    if (!(c.missile.max_lateral_accel > 0.0)) throw ConfigError("missile.max_lateral_accel must be positive");
    if (!(c.red.tick_interval > 0.0)) throw ConfigError("red.tick_interval must be positive");
    if (!c.red.tree.empty()) RedPolicy check(c.red);
}

std::vector<std::pair<std::string, FieldRef>> config_fields(SimConfig& c)
{
    ScenarioConfig& s = c.scenario;
    AirframeParams& a = c.airframe;
    MissileParams& m = c.missile;
    RedPolicyParams& r = c.red;
    return {
        {"scenario.kind", &s.kind},
        {"scenario.seed", &s.seed},
        {"scenario.dt", &s.dt},
        {"scenario.decision_interval", &s.decision_interval},
        {"scenario.episode_cap", &s.episode_cap},
        {"scenario.throttle_fixed", &s.throttle_fixed},
        {"scenario.auto_launch", &s.auto_launch},
        {"scenario.blue_launch_envelope", &s.blue_launch_envelope},
        {"scenario.blue_alignment_gate_deg", &s.blue_alignment_gate_deg},
        {"scenario.agent_speed_min", &s.ranges.agent_speed_min},
        {"scenario.agent_speed_max", &s.ranges.agent_speed_max},
        {"scenario.launcher_speed_min", &s.ranges.launcher_speed_min},
        {"scenario.launcher_speed_max", &s.ranges.launcher_speed_max},
        {"scenario.agent_altitude_min", &s.ranges.agent_altitude_min},
        {"scenario.agent_altitude_max", &s.ranges.agent_altitude_max},
        {"scenario.launch_altitude_min", &s.ranges.launch_altitude_min},
        {"scenario.launch_altitude_max", &s.ranges.launch_altitude_max},
        {"scenario.firing_distance_min", &s.ranges.firing_distance_min},
        {"scenario.firing_distance_max", &s.ranges.firing_distance_max},
        {"scenario.agent_heading_min_deg", &s.ranges.agent_heading_min_deg},
        {"scenario.agent_heading_max_deg", &s.ranges.agent_heading_max_deg},
        {"dogfight.separation", &s.dogfight.separation},
        {"dogfight.altitude", &s.dogfight.altitude},
        {"dogfight.speed", &s.dogfight.speed},
        {"dogfight.missiles_per_side", &s.dogfight.missiles_per_side},
        {"airframe.mass", &a.mass},
        {"airframe.wing_area", &a.wing_area},
        {"airframe.cd0", &a.cd0},
        {"airframe.induced_drag_factor", &a.induced_drag_factor},
        {"airframe.max_thrust_sea_level", &a.max_thrust_sea_level},
        {"airframe.thrust_lapse_exponent", &a.thrust_lapse_exponent},
        {"airframe.throttle_exponent", &a.throttle_exponent},
        {"airframe.min_speed", &a.min_speed},
        {"airframe.max_speed", &a.max_speed},
        {"airframe.ceiling", &a.ceiling},
        {"airframe.max_bank_deg", &a.max_bank_deg},
        {"airframe.max_load_factor", &a.max_load_factor},
        {"airframe.roll_time_constant", &a.roll_time_constant},
        {"airframe.max_roll_rate_deg", &a.max_roll_rate_deg},
        {"airframe.heading_gain", &a.heading_gain},
        {"airframe.altitude_gain", &a.altitude_gain},
        {"airframe.max_climb_rate", &a.max_climb_rate},
        {"airframe.max_descent_rate", &a.max_descent_rate},
        {"airframe.climb_time_constant", &a.climb_time_constant},
        {"airframe.max_vertical_accel", &a.max_vertical_accel},
        {"airframe.max_flight_path_deg", &a.max_flight_path_deg},
        {"airframe.integrator", &a.integrator},
        {"missile.navigation_constant", &m.navigation_constant},
        {"missile.max_lateral_accel", &m.max_lateral_accel},
        {"missile.boost_time", &m.boost_time},
        {"missile.boost_accel", &m.boost_accel},
        {"missile.launch_mass", &m.launch_mass},
        {"missile.burnout_mass", &m.burnout_mass},
        {"missile.drag_area", &m.drag_area},
        {"missile.reference_area", &m.reference_area},
        {"missile.induced_drag_factor", &m.induced_drag_factor},
        {"missile.cruise_altitude", &m.cruise_altitude},
        {"missile.loft_gain", &m.loft_gain},
        {"missile.max_loft_deg", &m.max_loft_deg},
        {"missile.steering_gain", &m.steering_gain},
        {"missile.hit_radius", &m.hit_radius},
        {"missile.giveup_time", &m.giveup_time},
        {"missile.guidance_altitude_window", &m.guidance_altitude_window},
        {"missile.guidance_range", &m.guidance_range},
        {"red.threat_window", &r.threat_window},
        {"red.launch_envelope", &r.launch_envelope},
        {"red.alignment_gate_deg", &r.alignment_gate_deg},
        {"red.evade_altitude", &r.evade_altitude},
        {"red.cruise_altitude", &r.cruise_altitude},
        {"red.crank_angle_deg", &r.crank_angle_deg},
        {"red.tick_interval", &r.tick_interval},
        {"red.tree", &r.tree},
    };
}

void set_config_value(SimConfig& config, std::string_view key, std::string_view value)
{
    for (auto& [name, ref] : config_fields(config)) {
        if (name != key) continue;
        std::visit(
            [&](auto* field) {
                using T = std::remove_pointer_t<decltype(field)>;
                if constexpr (std::is_same_v<T, double> || std::is_same_v<T, int> ||
                              std::is_same_v<T, std::uint64_t>) {
                    *field = parse_number<T>(key, value);
                } else if constexpr (std::is_same_v<T, bool>) {
                    *field = parse_bool(key, value);
                } else if constexpr (std::is_same_v<T, std::string>) {
                    *field = std::string(value);
                } else if constexpr (std::is_same_v<T, ScenarioKind>) {
                    *field = parse_scenario_kind(value);
                } else {
                    *field = parse_integrator(value);
                }
            },
            ref);
        return;
    }
    throw ConfigError("unknown config key '" + std::string(key) + "'");
}

SimConfig parse_config(std::string_view text, std::optional<ScenarioKind> kind_override)
{
    std::vector<std::pair<std::string, std::string>> entries;
    std::optional<ScenarioKind> kind = kind_override;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key == "scenario.kind") {
            if (!kind_override) kind = parse_scenario_kind(value);
            continue;
        }
        entries.emplace_back(std::move(key), std::move(value));
    }

    SimConfig config = make_config(kind.value_or(ScenarioKind::Evade1));
    for (const auto& [key, value] : entries) set_config_value(config, key, value);
    validate(config);
    return config;
}

SimConfig load_config_file(const std::string& path, std::optional<ScenarioKind> kind_override)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), kind_override);
}

std::string format_config(const SimConfig& config)
{
    SimConfig copy = config;
    std::string out = "# bvrsim configuration (SI units, angles in degrees)\n";
    for (auto& [name, ref] : config_fields(copy)) {
        out += name;
        out += " = ";
        std::visit(
            [&](auto* field) {
                using T = std::remove_pointer_t<decltype(field)>;
                if constexpr (std::is_same_v<T, double>) {
                    out += format_double(*field);
                } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
                    out += std::to_string(*field);
                } else if constexpr (std::is_same_v<T, bool>) {
                    out += *field ? "true" : "false";
                } else if constexpr (std::is_same_v<T, std::string>) {
                    out += *field;
                } else if constexpr (std::is_same_v<T, ScenarioKind>) {
                    out += to_string(*field);
                } else {
                    out += integrator_name(*field);
                }
            },
            ref);
        out += '\n';
    }
    return out;
}

}  // namespace bvr
