#include "bvr/export.hpp"

#include <filesystem>
#include <fstream>
#include <map>

#include "bvr/angles.hpp"
#include "bvr/atmosphere.hpp"

namespace bvr {

using json = nlohmann::ordered_json;

namespace {

Vec3 vec(const json& a) { return {a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>()}; }

struct Track {
    UnitSeries series;
    bool closed = false;
};

}  // namespace

std::vector<UnitSeries> export_series(const EpisodeLog& log)
{
    std::map<std::pair<int, UnitId>, Track> tracks;  // key: (0 aircraft / 1 missile, id)
    std::size_t ticks = 0;

    for (const std::string& line : log.lines) {
        if (!line.starts_with("{\"type\":\"tick\"")) continue;
        const json rec = json::parse(line);
        ++ticks;
        const double t = rec.at("t").get<double>();

        std::map<UnitId, Vec3> positions;
        std::map<UnitId, std::string> teams;
        for (const json& a : rec.at("aircraft")) {
            positions[a.at("id").get<UnitId>()] = vec(a.at("pos"));
            teams[a.at("id").get<UnitId>()] = a.at("team").get<std::string>();
        }

        for (const json& a : rec.at("aircraft")) {
            const UnitId id = a.at("id").get<UnitId>();
            Track& track = tracks[{0, id}];
            if (track.closed) continue;
            track.series.kind = "aircraft";
            track.series.id = id;
            track.series.label = teams[id];
            const Vec3 p = vec(a.at("pos"));
            const double speed = a.at("speed").get<double>();
            double range = 0.0;
            for (const auto& [other, q] : positions) {
                if (teams[other] == teams[id]) continue;
                const double r = norm(q - p);
                if (range == 0.0 || r < range) range = r;
            }
            track.series.rows.push_back({t, -p.z, speed, mach(speed, -p.z), a.at("heading").get<double>(), range});
            if (!a.at("alive").get<bool>()) track.closed = true;
        }

        for (const json& m : rec.at("missiles")) {
            const UnitId id = m.at("id").get<UnitId>();
            Track& track = tracks[{1, id}];
            if (track.closed) continue;
            const UnitId target = m.at("target").get<UnitId>();
            track.series.kind = "missile";
            track.series.id = id;
            track.series.label = std::to_string(m.at("shooter").get<UnitId>()) + "->" + std::to_string(target);
            const Vec3 p = vec(m.at("pos"));
            const Vec3 v = vec(m.at("vel"));
            const double speed = norm(v);
            const auto tp = positions.find(target);
            const double range = tp == positions.end() ? 0.0 : norm(tp->second - p);
            track.series.rows.push_back(
                {t, -p.z, speed, mach(speed, -p.z), rad_to_deg(wrap_two_pi(compass_bearing(v.x, v.y))), range});
            if (m.at("outcome").get<std::string>() != "active") track.closed = true;
        }
    }
    if (ticks == 0) throw LogError("no ticks");

    std::vector<UnitSeries> out;
    for (auto& [key, track] : tracks) out.push_back(std::move(track.series));
    return out;
}

std::vector<std::string> write_export(const EpisodeLog& log, const std::string& dir, const std::string& stem)
{
    const std::vector<UnitSeries> series = export_series(log);
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    for (const UnitSeries& s : series) {
        const std::string path =
            (std::filesystem::path(dir) / (stem + "_" + s.kind + std::to_string(s.id) + ".dat")).string();
        std::ofstream out(path);
        if (!out) throw LogError("cannot write '" + path + "'");
        out << "# " << s.kind << ' ' << s.id << ' ' << s.label << '\n' << '#';
        for (std::string_view c : kExportColumns) out << ' ' << c;
        out << '\n';
        for (const auto& row : s.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << format_double(row[i]);
            out << '\n';
        }
        if (!out) throw LogError("failed writing '" + path + "'");
        paths.push_back(path);
    }
    return paths;
}

}  // namespace bvr
