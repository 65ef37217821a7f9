#include "geolex/series.hpp"

#include "geolex/errors.hpp"
#include "geolex/io_util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace geolex {

namespace {

std::vector<std::string> split_csv_row(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

Date parse_date_or_throw(const std::string& text, const std::filesystem::path& path)
{
    auto d = Date::parse(text);
    if (!d)
        throw IoError("bad date '" + text + "' in " + path.string());
    return *d;
}

double parse_double_or_throw(const std::string& text, const std::filesystem::path& path)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size())
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw IoError("bad number '" + text + "' in " + path.string());
    }
}

void sort_series(Series& s)
{
    std::sort(s.begin(), s.end(),
              [](const SeriesPoint& a, const SeriesPoint& b) { return a.date < b.date; });
}

} // namespace

Series slice(const Series& s, Date from, Date to)
{
    Series out;
    for (const auto& p : s)
        if (p.date >= from && p.date < to)
            out.push_back(p);
    return out;
}

CountryValues read_series_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open series file " + path.string());

    CountryValues out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            continue;
        }
        if (line.empty())
            continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 3)
            throw IoError("expected date,country,value row in " + path.string() + ": " + line);
        out[fields[1]].push_back(
            {parse_date_or_throw(fields[0], path), parse_double_or_throw(fields[2], path)});
    }
    for (auto& [country, series] : out)
        sort_series(series);
    return out;
}

std::string series_csv_text(const CountryValues& values)
{
    // Rows ordered by (date, country) so output bytes are reproducible.
    std::map<std::pair<std::int32_t, std::string>, double> rows;
    for (const auto& [country, series] : values)
        for (const auto& p : series)
            rows[{p.date.serial(), country}] = p.value;

    std::string out = "date,country,value\n";
    for (const auto& [key, value] : rows) {
        out += Date::from_serial(key.first).to_string();
        out += ',';
        out += key.second;
        out += ',';
        out += format_double(value);
        out += '\n';
    }
    return out;
}

Measure parse_measure(const std::string& name)
{
    if (name == "inside")
        return Measure::Inside;
    if (name == "inward")
        return Measure::Inward;
    if (name == "outward")
        return Measure::Outward;
    if (name == "overall")
        return Measure::Overall;
    throw DataError("unknown measure: " + name + " (expected inside|inward|outward|overall)");
}

CountryValues measure_series(const CountrySeries& series, Measure measure)
{
    CountryValues out;
    for (const auto& [date, by_country] : series) {
        for (const auto& [country, m] : by_country) {
            std::int64_t v = 0;
            switch (measure) {
            case Measure::Inside:
                v = m.inside;
                break;
            case Measure::Inward:
                v = m.inward;
                break;
            case Measure::Outward:
                v = m.outward;
                break;
            case Measure::Overall:
                v = m.overall();
                break;
            }
            out[country].push_back({date, static_cast<double>(v)});
        }
    }
    return out;
}

PercentTable read_percent_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open percent file " + path.string());

    PercentTable out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            continue;
        }
        if (line.empty())
            continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 4)
            throw IoError("expected date,country,value,percent row in " + path.string() + ": "
                          + line);
        out[fields[1]].push_back({parse_date_or_throw(fields[0], path),
                                  parse_double_or_throw(fields[2], path),
                                  parse_double_or_throw(fields[3], path)});
    }
    for (auto& [country, rows] : out)
        std::sort(rows.begin(), rows.end(),
                  [](const PercentPoint& a, const PercentPoint& b) { return a.date < b.date; });
    return out;
}

std::string percent_csv_text(const PercentTable& table)
{
    std::map<std::pair<std::int32_t, std::string>, PercentPoint> rows;
    for (const auto& [country, points] : table)
        for (const auto& p : points)
            rows[{p.date.serial(), country}] = p;

    std::string out = "date,country,value,percent\n";
    for (const auto& [key, p] : rows) {
        out += Date::from_serial(key.first).to_string();
        out += ',';
        out += key.second;
        out += ',';
        out += format_double(p.value);
        out += ',';
        out += format_double(p.percent);
        out += '\n';
    }
    return out;
}

CountryValues read_external_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open external mobility file " + path.string());

    CountryValues out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            continue;
        }
        if (line.empty())
            continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 3)
            throw IoError("expected date,country,percent row in " + path.string() + ": " + line);
        out[fields[1]].push_back(
            {parse_date_or_throw(fields[0], path), parse_double_or_throw(fields[2], path)});
    }
    for (auto& [country, series] : out)
        sort_series(series);
    return out;
}

} // namespace geolex
