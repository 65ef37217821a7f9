#include "geolex/date.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace geolex {

namespace {

// Civil-from-days / days-from-civil, Howard Hinnant's algorithms.
std::int32_t days_from_civil(int y, int m, int d)
{
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u
                         + static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<std::int32_t>(doe) - 719468;
}

void civil_from_days(std::int32_t z, int& y, int& m, int& d)
{
    z += 719468;
    const int era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int yy = static_cast<int>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = yy + (m <= 2);
}

bool parse_int(std::string_view s, int& out)
{
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace

bool is_valid_ymd(int year, int month, int day)
{
    if (month < 1 || month > 12 || day < 1)
        return false;
    static constexpr std::array<int, 12> days_in = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int dim = days_in[static_cast<std::size_t>(month - 1)];
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2 && leap)
        dim = 29;
    return day <= dim;
}

Date::Date(int year, int month, int day)
    : serial_(days_from_civil(year, month, day))
{
}

Date Date::from_serial(std::int32_t days_since_epoch)
{
    Date d;
    d.serial_ = days_since_epoch;
    return d;
}

std::optional<Date> Date::parse(std::string_view text)
{
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        return std::nullopt;
    int y = 0, m = 0, d = 0;
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m)
        || !parse_int(text.substr(8, 2), d))
        return std::nullopt;
    if (!is_valid_ymd(y, m, d))
        return std::nullopt;
    return Date(y, m, d);
}

int Date::year() const
{
    int y, m, d;
    civil_from_days(serial_, y, m, d);
    return y;
}

int Date::month() const
{
    int y, m, d;
    civil_from_days(serial_, y, m, d);
    return m;
}

int Date::day() const
{
    int y, m, d;
    civil_from_days(serial_, y, m, d);
    return d;
}

int Date::weekday() const
{
    // 1970-01-01 was a Thursday (weekday 3).
    std::int32_t w = (serial_ + 3) % 7;
    if (w < 0)
        w += 7;
    return static_cast<int>(w);
}

Date::IsoWeek Date::iso_week() const
{
    // ISO week 1 is the week containing January 4th; weeks start on Monday.
    const Date monday = *this - weekday();
    const Date thursday = monday + 3;
    const int iso_year = thursday.year();
    const Date jan4(iso_year, 1, 4);
    const Date week1_monday = jan4 - jan4.weekday();
    const int week = (monday - week1_monday) / 7 + 1;
    return {iso_year, week};
}

std::string Date::to_string() const
{
    int y, m, d;
    civil_from_days(serial_, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

} // namespace geolex
