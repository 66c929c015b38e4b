#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace esscirc {

enum class AngleUnit { degrees, radians };

struct AngleDataset {
    std::string name;
    std::vector<double> angles;  // wrapped into [-pi, pi)
    std::string source;          // originating file
    std::string transform;       // human-readable record of what was applied
};

/// Reads whitespace- or comma-separated angles (one or several per line),
/// converts degrees to radians when requested, applies the shift, and wraps
/// into [-pi, pi). The default shift is -pi for degree input (the usual
/// recentering for compass data) and 0 for radians. Parse failures report
/// the offending line number.
AngleDataset ingest(const std::filesystem::path& path, AngleUnit unit,
                    std::optional<double> shift = std::nullopt);

}  // namespace esscirc
