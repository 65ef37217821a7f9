#pragma once

#include "geolex/date.hpp"
#include "geolex/mobility.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace geolex {

struct SeriesPoint {
    Date date;
    double value = 0.0;
};

// Per-day values, sorted by date, one point per date.
using Series = std::vector<SeriesPoint>;

// country -> series, the shape of the date,country,value CSVs.
using CountryValues = std::map<std::string, Series>;

Series slice(const Series& s, Date from, Date to); // [from, to)

CountryValues read_series_csv(const std::filesystem::path& path);
std::string series_csv_text(const CountryValues& values);

// Extracts one measure from the per-day country aggregation.
enum class Measure { Inside, Inward, Outward, Overall };
Measure parse_measure(const std::string& name);
CountryValues measure_series(const CountrySeries& series, Measure measure);

struct PercentPoint {
    Date date;
    double value = 0.0;   // raw trips
    double percent = 0.0; // percent of baseline
};

// country -> (date, value, percent), the date,country,value,percent CSVs.
using PercentTable = std::map<std::string, std::vector<PercentPoint>>;

PercentTable read_percent_csv(const std::filesystem::path& path);
std::string percent_csv_text(const PercentTable& table);

// date,country,percent: the pre-downloaded external mobility report shape.
CountryValues read_external_csv(const std::filesystem::path& path);

} // namespace geolex
