#include "bvr/episode_log.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bvr/angles.hpp"
#include "bvr/rng.hpp"

namespace bvr {

using json = nlohmann::ordered_json;

namespace {

json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json aircraft_record(const AircraftUnit& u)
{
    json j = json::object();
    j["id"] = u.id;
    j["team"] = to_string(u.team);
    j["alive"] = u.state.alive;
    j["pos"] = vec(u.state.position);
    j["vel"] = vec(u.state.velocity());
    j["speed"] = u.state.speed;
    j["heading"] = rad_to_deg(u.state.heading);
    j["climb_rate"] = u.state.climb_rate;
    j["bank"] = rad_to_deg(u.state.bank);
    j["throttle"] = u.state.throttle;
    j["cmd"] = {{"heading", rad_to_deg(u.setpoints.heading)},
                {"altitude", u.setpoints.altitude},
                {"throttle", u.setpoints.throttle}};
    j["missiles"] = u.missiles_remaining;
    return j;
}

json missile_record(const MissileState& m)
{
    json j = json::object();
    j["id"] = m.id;
    j["shooter"] = m.shooter_id;
    j["target"] = m.target_id;
    j["pos"] = vec(m.position);
    j["vel"] = vec(m.velocity);
    j["phase"] = to_string(m.phase);
    j["outcome"] = to_string(m.outcome);
    j["tau"] = m.time_since_launch;
    j["mass"] = m.mass;
    j["md"] = m.min_distance;
    return j;
}

std::string digest_line(const std::vector<std::string>& lines)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const std::string& line : lines) {
        h = fnv1a64(line, h);
        h = fnv1a64("\n", h);
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016" PRIx64, h);
    json j = json::object();
    j["type"] = "digest";
    j["fnv1a64"] = hex;
    return j.dump();
}

json parse_line(std::string_view line)
{
    return json::parse(line.begin(), line.end());
}

}  // namespace

json EpisodeLog::header() const
{
    if (lines.empty()) throw LogError("empty log");
    return parse_line(lines.front());
}

json EpisodeLog::footer() const
{
    for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
        json j = json::parse(*it, nullptr, false);
        if (!j.is_discarded() && j.value("type", "") == "footer") return j;
    }
    throw LogError("log has no footer");
}

std::string EpisodeLog::text() const
{
    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

std::size_t EpisodeLog::tick_count() const
{
    return static_cast<std::size_t>(
        std::count_if(lines.begin(), lines.end(), [](const std::string& l) { return l.starts_with("{\"type\":\"tick\""); }));
}

std::string tick_record(const World& world, std::span<const SimEvent> events)
{
    json j = json::object();
    j["type"] = "tick";
    j["tick"] = world.tick;
    j["t"] = world.clock;
    json aircraft = json::array();
    for (const AircraftUnit& u : world.aircraft) aircraft.push_back(aircraft_record(u));
    j["aircraft"] = std::move(aircraft);
    json missiles = json::array();
    for (const MissileState& m : world.missiles) missiles.push_back(missile_record(m));
    j["missiles"] = std::move(missiles);
    json ev = json::array();
    for (const SimEvent& e : events) {
        ev.push_back({{"kind", to_string(e.kind)}, {"unit", e.unit}, {"other", e.other}});
    }
    j["events"] = std::move(ev);
    if (world.terminal) j["terminal"] = to_string(world.cause);
    return j.dump();
}

std::string decision_record(std::int64_t tick, const PilotAction& action)
{
    json j = json::object();
    j["type"] = "decision";
    j["tick"] = tick;
    j["action"] = {{"heading", action.heading_deg},
                   {"altitude", action.altitude},
                   {"throttle", action.throttle},
                   {"launch", action.launch}};
    return j.dump();
}

PilotAction parse_action(const json& a)
{
    PilotAction action;
    action.heading_deg = a.at("heading").get<double>();
    action.altitude = a.at("altitude").get<double>();
    action.throttle = a.at("throttle").get<double>();
    action.launch = a.at("launch").get<bool>();
    return action;
}

json make_header(const SimConfig& config, std::uint64_t seed, std::string_view policy_name)
{
    json cfg = json::object();
    SimConfig copy = config;
    for (auto& [name, ref] : config_fields(copy)) {
        std::visit(
            [&](auto* field) {
                using T = std::remove_pointer_t<decltype(field)>;
                if constexpr (std::is_same_v<T, ScenarioKind>) {
                    cfg[name] = to_string(*field);
                } else if constexpr (std::is_same_v<T, Integrator>) {
                    cfg[name] = *field == Integrator::Rk4 ? "rk4" : "semi_implicit_euler";
                } else {
                    cfg[name] = *field;
                }
            },
            ref);
    }
    json j = json::object();
    j["type"] = "header";
    j["format"] = kLogFormat;
    j["format_version"] = kLogFormatVersion;
    j["code_version"] = kCodeVersion;
    j["config_version"] = kConfigVersion;
    j["rng"] = CounterRng::kAlgorithm;
    j["scenario"] = to_string(config.scenario.kind);
    j["seed"] = seed;
    j["policy"] = policy_name;
    j["config"] = std::move(cfg);
    return j;
}

SimConfig config_from_header(const json& header)
{
    const json& cfg = header.at("config");
    const ScenarioKind kind = parse_scenario_kind(cfg.at("scenario.kind").get<std::string>());
    SimConfig config = make_config(kind);
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        if (it.key() == "scenario.kind") continue;
        const json& v = it.value();
        std::string text;
        if (v.is_string()) {
            text = v.get<std::string>();
        } else if (v.is_boolean()) {
            text = v.get<bool>() ? "true" : "false";
        } else if (v.is_number_float()) {
            text = format_double(v.get<double>());
        } else if (v.is_number_unsigned()) {
            text = std::to_string(v.get<std::uint64_t>());
        } else if (v.is_number_integer()) {
            text = std::to_string(v.get<std::int64_t>());
        } else {
            throw ConfigError("config value for '" + it.key() + "' has an unsupported type");
        }
        set_config_value(config, it.key(), text);
    }
    validate(config);
    return config;
}

EpisodeRecorder::EpisodeRecorder(Env& env, std::string policy_name) : env_(env), policy_name_(std::move(policy_name))
{
    env_.set_tick_observer([this](const World& world, std::span<const SimEvent> events) {
        if (lines_.empty()) lines_.push_back(make_header(env_.config(), env_.seed(), policy_name_).dump());
        lines_.push_back(tick_record(world, events));
    });
}

void EpisodeRecorder::decision(const PilotAction& action)
{
    lines_.push_back(decision_record(env_.world().tick, action));
}

void EpisodeRecorder::step(const Transition& t)
{
    json j = json::object();
    j["type"] = "step";
    j["tick"] = env_.world().tick;
    j["reward"] = t.reward;
    j["done"] = t.done;
    j["info"] = to_json(t.info);
    lines_.push_back(j.dump());
    total_reward_ += t.reward;
    ++steps_;
    last_ = t;
}

EpisodeLog EpisodeRecorder::finish()
{
    env_.set_tick_observer({});
    const World& w = env_.world();
    json f = json::object();
    f["type"] = "footer";
    f["steps"] = steps_;
    f["ticks"] = w.tick;
    f["duration"] = w.clock;
    f["done"] = w.terminal;
    f["outcome"] = to_string(w.cause);
    f["total_reward"] = total_reward_;
    f["final_reward"] = last_.reward;
    json mds = json::array();
    for (const MissileState& m : w.missiles) mds.push_back(m.min_distance);
    f["miss_distances"] = std::move(mds);
    f["threat_miss_distances"] = threat_miss_distances(w);
    f["shots_blue"] = w.shots_fired(Team::Blue);
    f["shots_red"] = w.shots_fired(Team::Red);
    lines_.push_back(f.dump());
    lines_.push_back(digest_line(lines_));

    EpisodeLog log;
    log.lines = std::move(lines_);
    lines_.clear();
    return log;
}

EpisodeLog run_episode(const Policy& policy, const SimConfig& config, std::uint64_t seed, std::string_view policy_name)
{
    Env env(config);
    EpisodeRecorder recorder(env, std::string(policy_name));
    env.reset(seed);
    while (!env.done()) {
        const PilotAction action = policy(env);
        recorder.decision(action);
        recorder.step(env.step(action));
    }
    return recorder.finish();
}

void write_log(const EpisodeLog& log, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LogError("cannot write log '" + path + "'");
    for (const std::string& line : log.lines) out << line << '\n';
    if (!out) throw LogError("failed writing log '" + path + "'");
}

EpisodeLog parse_log(std::string_view text)
{
    EpisodeLog log;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        log.lines.emplace_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    return log;
}

EpisodeLog read_log(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LogError("cannot open log '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_log(buffer.str());
}

std::string_view to_string(ReplayReport::Status status)
{
    switch (status) {
    case ReplayReport::Status::Identical: return "identical";
    case ReplayReport::Status::Diverged: return "diverged";
    case ReplayReport::Status::Corrupt: return "corrupt";
    }
    return "unknown";
}

ReplayReport replay(const EpisodeLog& log)
{
    const auto corrupt = [](std::size_t line, std::string message) {
        ReplayReport r;
        r.status = ReplayReport::Status::Corrupt;
        r.line = line;
        r.message = std::move(message);
        return r;
    };

    if (log.lines.empty()) return corrupt(1, "empty log");
    const json header = json::parse(log.lines.front(), nullptr, false);
    if (header.is_discarded() || !header.is_object() || header.value("type", "") != "header") {
        return corrupt(1, "unreadable header");
    }
    if (header.value("format", "") != kLogFormat || header.value("format_version", -1) != kLogFormatVersion ||
        header.value("config_version", -1) != kConfigVersion) {
        throw VersionMismatch("log format/config version does not match this build");
    }
    if (header.value("code_version", "") != kCodeVersion) {
        throw VersionMismatch("log written by '" + header.value("code_version", std::string("?")) +
                              "', this is '" + std::string(kCodeVersion) + "'");
    }

    SimConfig config;
    std::uint64_t seed = 0;
    std::string policy_name;
    try {
        config = config_from_header(header);
        seed = header.at("seed").get<std::uint64_t>();
        policy_name = header.at("policy").get<std::string>();
    } catch (const std::exception& e) {
        return corrupt(1, std::string("bad header: ") + e.what());
    }

    // Logged decisions, in order, drive the re-simulation.
    std::vector<PilotAction> actions;
    for (std::size_t i = 1; i < log.lines.size(); ++i) {
        if (!log.lines[i].starts_with("{\"type\":\"decision\"")) continue;
        const json d = json::parse(log.lines[i], nullptr, false);
        try {
            if (d.is_discarded()) throw LogError("unparseable");
            actions.push_back(parse_action(d.at("action")));
        } catch (const std::exception& e) {
            return corrupt(i + 1, std::string("bad decision record: ") + e.what());
        }
    }

    EpisodeLog fresh;
    try {
        Env env(config);
        EpisodeRecorder recorder(env, policy_name);
        env.reset(seed);
        for (const PilotAction& action : actions) {
            if (env.done()) break;
            recorder.decision(action);
            recorder.step(env.step(action));
        }
        fresh = recorder.finish();
    } catch (const std::exception& e) {
        return corrupt(0, std::string("re-simulation failed: ") + e.what());
    }

    const std::size_t n = std::max(fresh.lines.size(), log.lines.size());
    for (std::size_t i = 0; i < n; ++i) {
        const bool have_old = i < log.lines.size();
        const bool have_new = i < fresh.lines.size();
        if (have_old && have_new && log.lines[i] == fresh.lines[i]) continue;

        ReplayReport r;
        r.status = ReplayReport::Status::Diverged;
        r.line = i + 1;
        const std::string& probe = have_new ? fresh.lines[i] : log.lines[i];
        const json j = json::parse(probe, nullptr, false);
        if (!j.is_discarded() && j.contains("tick")) r.tick = j["tick"].get<std::int64_t>();
        r.message = !have_old   ? "log ends early"
                    : !have_new ? "log has extra records"
                                : "record differs from re-simulation";
        return r;
    }
    return {};
}

EpisodeSummary summarize(const EpisodeLog& log)
{
    const json h = log.header();
    const json f = log.footer();
    EpisodeSummary s;
    s.seed = h.at("seed").get<std::uint64_t>();
    s.scenario = h.at("scenario").get<std::string>();
    s.policy = h.at("policy").get<std::string>();
    s.outcome = f.at("outcome").get<std::string>();
    s.total_reward = f.at("total_reward").get<double>();
    const auto mds = f.at("threat_miss_distances").get<std::vector<double>>();
    s.min_miss_distance_km = mds.empty() ? 0.0 : *std::min_element(mds.begin(), mds.end()) / 1000.0;
    s.duration = f.at("duration").get<double>();
    s.ticks = f.at("ticks").get<std::int64_t>();
    s.shots_blue = f.at("shots_blue").get<int>();
    s.shots_red = f.at("shots_red").get<int>();
    return s;
}

}  // namespace bvr
