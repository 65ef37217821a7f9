#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace geolex {

// UTC calendar date. Stored as days since 1970-01-01 so that arithmetic,
// weekday and ISO-week computations are locale-free and deterministic.
class Date {
public:
    Date() = default;
    Date(int year, int month, int day);

    static Date from_serial(std::int32_t days_since_epoch);

    // "YYYY-MM-DD"; rejects malformed strings and impossible dates.
    static std::optional<Date> parse(std::string_view text);

    int year() const;
    int month() const;
    int day() const;

    std::int32_t serial() const { return serial_; }

    // 0 = Monday ... 6 = Sunday.
    int weekday() const;

    // ISO-8601 week date (week 1 contains January 4th).
    struct IsoWeek {
        int year;
        int week;
    };
    IsoWeek iso_week() const;

    std::string to_string() const;

    Date operator+(int days) const { return from_serial(serial_ + days); }
    Date operator-(int days) const { return from_serial(serial_ - days); }
    int operator-(const Date& other) const { return serial_ - other.serial_; }

    auto operator<=>(const Date&) const = default;

private:
    std::int32_t serial_ = 0;
};

// True when (year, month, day) names a real calendar date.
bool is_valid_ymd(int year, int month, int day);

} // namespace geolex
