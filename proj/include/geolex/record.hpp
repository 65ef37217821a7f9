#pragma once

#include "geolex/date.hpp"
#include "geolex/geo.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace geolex {

// One tweet-shaped input event, after validation and normalization.
struct MessageRecord {
    std::string user_id;
    std::int64_t timestamp = 0; // seconds since the Unix epoch, UTC
    std::string text;
    std::string lang;                   // lowercase [a-z]{2}
    std::optional<std::string> country; // uppercase [A-Z]{2}
    std::optional<GeoShape> geometry;

    Date day() const;
};

enum class ParseErrorKind {
    MalformedJson,
    MissingField,
    InvalidCoordinate,
    InvalidTimestamp,
    InvalidValue,
};

struct ParseError {
    ParseErrorKind kind;
    std::string field; // offending field, empty for MalformedJson

    std::string to_string() const;
};

using ParseResult = std::variant<MessageRecord, ParseError>;

// Parses one NDJSON line. Field names: user_id, timestamp (ISO-8601, Z or
// numeric offset), text, lang, country (optional), geo (optional, either
// {"point":[lat,lon]} or {"bbox":[min_lon,min_lat,max_lon,max_lat]}).
// A "v" schema-version field is accepted and ignored.
ParseResult parse_record(std::string_view line);

// Canonical single-line JSON used for store partitions; parse_record of the
// output reproduces the record exactly.
std::string serialize_record(const MessageRecord& rec);

// Seconds since epoch -> "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(std::int64_t seconds);

} // namespace geolex
