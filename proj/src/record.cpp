#include "geolex/record.hpp"

#include <json.hpp>

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace geolex {

namespace {

using nlohmann::json;

bool parse_fixed_int(std::string_view s, int& out)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

// ISO-8601 with seconds resolution: YYYY-MM-DDTHH:MM:SS followed by 'Z' or
// a +HH:MM / -HH:MM offset. Returns UTC seconds since epoch.
std::optional<std::int64_t> parse_timestamp(std::string_view s)
{
    if (s.size() < 20)
        return std::nullopt;
    if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':'
        || s[16] != ':')
        return std::nullopt;

    int y, mo, d, h, mi, sec;
    if (!parse_fixed_int(s.substr(0, 4), y) || !parse_fixed_int(s.substr(5, 2), mo)
        || !parse_fixed_int(s.substr(8, 2), d) || !parse_fixed_int(s.substr(11, 2), h)
        || !parse_fixed_int(s.substr(14, 2), mi) || !parse_fixed_int(s.substr(17, 2), sec))
        return std::nullopt;
    if (!is_valid_ymd(y, mo, d) || h > 23 || mi > 59 || sec > 60)
        return std::nullopt;

    std::string_view rest = s.substr(19);
    std::int64_t offset = 0;
    if (rest == "Z") {
        // UTC
    } else if (rest.size() == 6 && (rest[0] == '+' || rest[0] == '-') && rest[3] == ':') {
        int oh, om;
        if (!parse_fixed_int(rest.substr(1, 2), oh) || !parse_fixed_int(rest.substr(4, 2), om))
            return std::nullopt;
        if (oh > 23 || om > 59)
            return std::nullopt;
        offset = static_cast<std::int64_t>(oh) * 3600 + om * 60;
        if (rest[0] == '-')
            offset = -offset;
    } else {
        return std::nullopt;
    }

    const std::int64_t days = Date(y, mo, d).serial();
    return days * 86400 + h * 3600 + mi * 60 + sec - offset;
}

bool valid_lang(const std::string& s)
{
    return s.size() == 2 && s[0] >= 'a' && s[0] <= 'z' && s[1] >= 'a' && s[1] <= 'z';
}

bool valid_country(const std::string& s)
{
    return s.size() == 2 && s[0] >= 'A' && s[0] <= 'Z' && s[1] >= 'A' && s[1] <= 'Z';
}

ParseError err(ParseErrorKind kind, std::string field = {})
{
    return ParseError{kind, std::move(field)};
}

} // namespace

Date MessageRecord::day() const
{
    std::int64_t days = timestamp / 86400;
    if (timestamp < 0 && timestamp % 86400 != 0)
        --days;
    return Date::from_serial(static_cast<std::int32_t>(days));
}

std::string ParseError::to_string() const
{
    switch (kind) {
    case ParseErrorKind::MalformedJson:
        return "malformed json";
    case ParseErrorKind::MissingField:
        return "missing field: " + field;
    case ParseErrorKind::InvalidCoordinate:
        return "invalid coordinate: " + field;
    case ParseErrorKind::InvalidTimestamp:
        return "invalid timestamp: " + field;
    case ParseErrorKind::InvalidValue:
        return "invalid value: " + field;
    }
    return "unknown error";
}

ParseResult parse_record(std::string_view line)
{
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        return err(ParseErrorKind::MalformedJson);

    MessageRecord rec;

    for (const char* name : {"user_id", "timestamp", "text", "lang"})
        if (!doc.contains(name))
            return err(ParseErrorKind::MissingField, name);

    if (!doc["user_id"].is_string() || doc["user_id"].get_ref<const std::string&>().empty())
        return err(ParseErrorKind::InvalidValue, "user_id");
    rec.user_id = doc["user_id"].get<std::string>();

    if (!doc["timestamp"].is_string())
        return err(ParseErrorKind::InvalidTimestamp, "timestamp");
    auto ts = parse_timestamp(doc["timestamp"].get_ref<const std::string&>());
    if (!ts)
        return err(ParseErrorKind::InvalidTimestamp, "timestamp");
    rec.timestamp = *ts;

    if (!doc["text"].is_string())
        return err(ParseErrorKind::InvalidValue, "text");
    rec.text = doc["text"].get<std::string>();

    if (!doc["lang"].is_string())
        return err(ParseErrorKind::InvalidValue, "lang");
    rec.lang = doc["lang"].get<std::string>();
    for (char& c : rec.lang)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!valid_lang(rec.lang))
        return err(ParseErrorKind::InvalidValue, "lang");

    if (doc.contains("country") && !doc["country"].is_null()) {
        if (!doc["country"].is_string())
            return err(ParseErrorKind::InvalidValue, "country");
        std::string c = doc["country"].get<std::string>();
        for (char& ch : c)
            ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (!valid_country(c))
            return err(ParseErrorKind::InvalidValue, "country");
        rec.country = std::move(c);
    }

    if (doc.contains("geo") && !doc["geo"].is_null()) {
        const json& geo = doc["geo"];
        if (!geo.is_object())
            return err(ParseErrorKind::InvalidCoordinate, "geo");
        const bool has_point = geo.contains("point");
        const bool has_bbox = geo.contains("bbox");
        if (has_point == has_bbox)
            return err(ParseErrorKind::InvalidCoordinate, "geo");
        if (has_point) {
            const json& p = geo["point"];
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                return err(ParseErrorKind::InvalidCoordinate, "geo.point");
            Point pt{p[0].get<double>(), p[1].get<double>()};
            if (!valid_lat(pt.lat) || !valid_lon(pt.lon))
                return err(ParseErrorKind::InvalidCoordinate, "geo.point");
            rec.geometry = pt;
        } else {
            const json& b = geo["bbox"];
            if (!b.is_array() || b.size() != 4)
                return err(ParseErrorKind::InvalidCoordinate, "geo.bbox");
            for (int i = 0; i < 4; ++i)
                if (!b[static_cast<std::size_t>(i)].is_number())
                    return err(ParseErrorKind::InvalidCoordinate, "geo.bbox");
            BBox box{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                     b[3].get<double>()};
            if (!valid_shape(box))
                return err(ParseErrorKind::InvalidCoordinate, "geo.bbox");
            rec.geometry = box;
        }
    }

    return rec;
}

std::string format_timestamp(std::int64_t seconds)
{
    std::int64_t days = seconds / 86400;
    std::int64_t rem = seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    const Date d = Date::from_serial(static_cast<std::int32_t>(days));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02dZ", d.to_string().c_str(),
                  static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

std::string serialize_record(const MessageRecord& rec)
{
    nlohmann::ordered_json doc;
    doc["user_id"] = rec.user_id;
    doc["timestamp"] = format_timestamp(rec.timestamp);
    doc["text"] = rec.text;
    doc["lang"] = rec.lang;
    if (rec.country)
        doc["country"] = *rec.country;
    if (rec.geometry) {
        if (const auto* p = std::get_if<Point>(&*rec.geometry)) {
            doc["geo"]["point"] = {p->lat, p->lon};
        } else {
            const BBox& b = std::get<BBox>(*rec.geometry);
            doc["geo"]["bbox"] = {b.min_lon, b.min_lat, b.max_lon, b.max_lat};
        }
    }
    return doc.dump();
}

} // namespace geolex
