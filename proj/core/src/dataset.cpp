#include "esscirc/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "esscirc/angles.hpp"

namespace esscirc {

AngleDataset ingest(const std::filesystem::path& path, AngleUnit unit,
                    std::optional<double> shift) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest: cannot open " + path.string());

    const double applied_shift = shift.value_or(unit == AngleUnit::degrees ? -kPi : 0.0);

    AngleDataset ds;
    ds.name = path.stem().string();
    ds.source = path.string();

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            double value = 0.0;
            const char* begin = tok.data();
            const char* end = begin + tok.size();
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc() || ptr != end)
                throw std::runtime_error("ingest: " + path.string() + ": line " +
                                         std::to_string(lineno) + ": not a number: '" + tok + "'");
            if (unit == AngleUnit::degrees) value *= kPi / 180.0;
            ds.angles.push_back(wrap_pi(value + applied_shift));
        }
    }
    if (ds.angles.empty()) throw std::runtime_error("ingest: " + path.string() + ": empty file");

    std::ostringstream note;
    note << (unit == AngleUnit::degrees ? "degrees->radians" : "radians");
    note << ", shift " << applied_shift << ", wrapped to [-pi, pi)";
    ds.transform = note.str();
    return ds;
}

}  // namespace esscirc
