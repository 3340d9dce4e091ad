#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "bvr/episode_log.hpp"

namespace bvr {

/// Column schema of every exported file, in order. Units: s, m, m/s, -, deg, m.
/// `range` is the distance to the unit's opponent (aircraft) or target (missile).
inline constexpr std::array<std::string_view, 6> kExportColumns = {"t", "altitude", "speed", "mach", "heading_deg", "range"};

struct UnitSeries {
    std::string kind;  // "aircraft" or "missile"
    UnitId id = 0;
    std::string label; // team for aircraft, "<shooter>-><target>" for missiles
    std::vector<std::array<double, kExportColumns.size()>> rows;
};

/// One series per unit, rows in tick order. A unit's rows stop after the tick it
/// dies or its missile terminates. Throws LogError("no ticks") when the log has none.
std::vector<UnitSeries> export_series(const EpisodeLog& log);

/// Writes `<dir>/<stem>_<kind><id>.dat` whitespace-separated files with a `#`
/// header line naming the columns. Returns the paths written.
std::vector<std::string> write_export(const EpisodeLog& log, const std::string& dir, const std::string& stem);

}  // namespace bvr
