#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "bvr/episode_log.hpp"
#include "bvr/export.hpp"
#include "bvr/vec_runner.hpp"

namespace bvr::cli {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kScenarios = {"evade1", "evade2", "dogfight"};
const std::vector<std::string> kPolicies = {"straight", "dive-turn", "bt", "random", "external"};

struct RunOptions {
    std::string scenario = "evade1";
    std::string policy = "straight";
    std::uint64_t seed = 0;
    int episodes = 1;
    int workers = 0;
    std::string out = ".";
    std::string config;
    std::string actions;
    std::vector<std::string> sets;
    double dive_altitude = DiveTurnParams{}.dive_altitude;
    double turn_delay = DiveTurnParams{}.turn_delay;
};

std::vector<PilotAction> read_actions(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open actions file '" + path + "'");
    std::vector<PilotAction> actions;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        const auto j = nlohmann::ordered_json::parse(line);
        actions.push_back(parse_action(j.contains("action") ? j.at("action") : j));
    }
    return actions;
}

// Replays a fixed action list, then holds the last setpoints.
Policy external_policy(std::shared_ptr<const std::vector<PilotAction>> actions)
{
    auto next = std::make_shared<std::size_t>(0);
    auto hold = straight_policy();
    return [actions, next, hold](const Env& env) {
        if (*next < actions->size()) return (*actions)[(*next)++];
        return hold(env);
    };
}

PolicyFactory make_factory(const RunOptions& o, const SimConfig& config)
{
    if (o.policy == "straight") return [](std::uint64_t) { return straight_policy(); };
    if (o.policy == "dive-turn") {
        const DiveTurnParams p{o.dive_altitude, o.turn_delay};
        return [p](std::uint64_t) { return dive_turn_policy(p); };
    }
    if (o.policy == "bt") {
        const RedPolicyParams red = config.red;
        return [red](std::uint64_t) { return bt_policy(red); };
    }
    if (o.policy == "random") {
        const double ceiling = config.airframe.ceiling;
        return [ceiling](std::uint64_t seed) { return random_policy(seed, ceiling); };
    }
    if (o.actions.empty()) throw CLI::ValidationError("--policy external requires --actions FILE");
    auto actions = std::make_shared<const std::vector<PilotAction>>(read_actions(o.actions));
    return [actions](std::uint64_t) { return external_policy(actions); };
}

SimConfig build_config(const RunOptions& o)
{
    const ScenarioKind kind = parse_scenario_kind(o.scenario);
    SimConfig config = o.config.empty() ? make_config(kind) : load_config_file(o.config, kind);
    for (const std::string& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        set_config_value(config, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
    }
    validate(config);
    return config;
}

int cmd_run(const RunOptions& o, std::ostream& out)
{
    const SimConfig config = build_config(o);
    const PolicyFactory factory = make_factory(o, config);

    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(o.episodes));
    std::iota(seeds.begin(), seeds.end(), o.seed);
    const std::vector<EpisodeLog> logs = run_batch(factory, config, seeds, o.policy, o.workers);

    fs::create_directories(o.out);
    const std::string summary_path = (fs::path(o.out) / "summary.csv").string();
    std::ofstream summary(summary_path);
    if (!summary) throw std::runtime_error("cannot write '" + summary_path + "'");
    summary << "episode,seed,scenario,policy,outcome,total_reward,min_md_km,duration_s,ticks,shots_blue,shots_red,log\n";

    double md_sum = 0.0;
    double reward_sum = 0.0;
    std::map<std::string, int> outcomes;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        std::ostringstream name;
        name << "episode_" << std::setw(4) << std::setfill('0') << i << "_seed" << seeds[i] << ".jsonl";
        write_log(logs[i], (fs::path(o.out) / name.str()).string());
        const EpisodeSummary s = summarize(logs[i]);
        summary << i << ',' << s.seed << ',' << s.scenario << ',' << s.policy << ',' << s.outcome << ','
                << format_double(s.total_reward) << ',' << format_double(s.min_miss_distance_km) << ','
                << format_double(s.duration) << ',' << s.ticks << ',' << s.shots_blue << ',' << s.shots_red << ','
                << name.str() << '\n';
        md_sum += s.min_miss_distance_km;
        reward_sum += s.total_reward;
        ++outcomes[s.outcome];
    }
    if (!summary) throw std::runtime_error("failed writing '" + summary_path + "'");

    const double n = static_cast<double>(logs.size());
    out << "episodes " << logs.size() << "  mean_reward " << format_double(reward_sum / n);
    if (config.scenario.kind != ScenarioKind::Dogfight) out << "  mean_md_km " << format_double(md_sum / n);
    out << '\n';
    for (const auto& [outcome, count] : outcomes) out << "  " << outcome << ' ' << count << '\n';
    out << "summary " << summary_path << '\n';
    return kOk;
}

int cmd_replay(const std::string& path, std::ostream& out)
{
    const ReplayReport r = replay(read_log(path));
    if (r.identical()) {
        out << "identical\n";
        return kOk;
    }
    out << to_string(r.status) << " at line " << r.line;
    if (r.tick) out << " (tick " << *r.tick << ')';
    out << ": " << r.message << '\n';
    return kDivergence;
}

int cmd_export(const std::string& path, const std::string& kind, const std::string& dir, std::ostream& out)
{
    const EpisodeLog log = read_log(path);
    std::vector<std::string> written = write_export(log, dir, fs::path(path).stem().string());
    if (kind != "all") {
        std::vector<std::string> kept;
        for (const std::string& p : written) {
            if (fs::path(p).stem().string().find("_" + kind) != std::string::npos) {
                kept.push_back(p);
            } else {
                fs::remove(p);
            }
        }
        written = std::move(kept);
    }
    for (const std::string& p : written) out << p << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Beyond-visual-range air combat simulator", "bvrsim"};
    app.require_subcommand(1);

    RunOptions ro;
    CLI::App* run_cmd = app.add_subcommand("run", "Run episodes and write logs plus summary.csv");
    run_cmd->add_option("--scenario", ro.scenario, "evade1 | evade2 | dogfight")->check(CLI::IsMember(kScenarios));
    run_cmd->add_option("--policy", ro.policy, "straight | dive-turn | bt | random | external")
        ->check(CLI::IsMember(kPolicies));
    run_cmd->add_option("--seed", ro.seed, "First seed; episode i uses seed + i");
    run_cmd->add_option("--episodes", ro.episodes, "Number of episodes")->check(CLI::PositiveNumber);
    run_cmd->add_option("--workers", ro.workers, "Parallel workers (0 = all available)")->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--out", ro.out, "Output directory");
    run_cmd->add_option("--config", ro.config, "Config file (key = value)")->check(CLI::ExistingFile);
    run_cmd->add_option("--set", ro.sets, "Override one config key, key=value (repeatable, wins over --config)");
    run_cmd->add_option("--actions", ro.actions, "Action file for --policy external (one JSON action per line)");
    run_cmd->add_option("--dive-altitude", ro.dive_altitude, "dive-turn: target altitude, m");
    run_cmd->add_option("--turn-delay", ro.turn_delay, "dive-turn: seconds before the turn starts");

    std::string replay_path;
    CLI::App* replay_cmd = app.add_subcommand("replay", "Re-simulate a log and compare it record by record");
    replay_cmd->add_option("log", replay_path, "Episode log")->required()->check(CLI::ExistingFile);

    std::string export_path;
    std::string export_kind = "all";
    std::string export_dir = ".";
    CLI::App* export_cmd = app.add_subcommand("export", "Write per-unit column files for plotting");
    export_cmd->add_option("log", export_path, "Episode log")->required()->check(CLI::ExistingFile);
    export_cmd->add_option("--kind", export_kind, "all | aircraft | missile")
        ->check(CLI::IsMember({"all", "aircraft", "missile"}));
    export_cmd->add_option("--out", export_dir, "Output directory");

    std::string spaces_scenario = "evade1";
    std::string spaces_config;
    CLI::App* spaces_cmd = app.add_subcommand("spaces", "Print the observation/action space spec as JSON");
    spaces_cmd->add_option("--scenario", spaces_scenario)->check(CLI::IsMember(kScenarios));
    spaces_cmd->add_option("--config", spaces_config)->check(CLI::ExistingFile);

    std::string config_scenario = "evade1";
    CLI::App* config_cmd = app.add_subcommand("config", "Print the default config for a scenario");
    config_cmd->add_option("--scenario", config_scenario)->check(CLI::IsMember(kScenarios));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*run_cmd) return cmd_run(ro, out);
        if (*replay_cmd) return cmd_replay(replay_path, out);
        if (*export_cmd) return cmd_export(export_path, export_kind, export_dir, out);
        if (*spaces_cmd) {
            const ScenarioKind kind = parse_scenario_kind(spaces_scenario);
            const SimConfig config = spaces_config.empty() ? make_config(kind) : load_config_file(spaces_config, kind);
            out << space_spec(config).dump(2) << '\n';
            return kOk;
        }
        if (*config_cmd) {
            out << format_config(make_config(parse_scenario_kind(config_scenario)));
            return kOk;
        }
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const VersionMismatch& e) {
        err << "version mismatch: " << e.what() << '\n';
        return kRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}

}  // namespace bvr::cli
