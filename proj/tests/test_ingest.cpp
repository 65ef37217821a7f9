#include "geolex/io_util.hpp"
#include "geolex/record.hpp"
#include "geolex/store.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace geolex;
using namespace geolex::test;

namespace {

MessageRecord ok(const ParseResult& r)
{
    REQUIRE(std::holds_alternative<MessageRecord>(r));
    return std::get<MessageRecord>(r);
}

ParseError bad(const ParseResult& r)
{
    REQUIRE(std::holds_alternative<ParseError>(r));
    return std::get<ParseError>(r);
}

} // namespace

TEST_CASE("parse_record maps fields, point is [lat, lon]")
{
    const auto rec = ok(parse_record(
        R"({"user_id":"u1","timestamp":"2020-02-14T10:00:00Z","text":"hi","lang":"en","country":"US","geo":{"point":[40.0,-74.0]}})"));
    CHECK(rec.user_id == "u1");
    CHECK(rec.text == "hi");
    CHECK(rec.lang == "en");
    CHECK(rec.country == "US");
    REQUIRE(rec.geometry.has_value());
    const auto& p = std::get<Point>(*rec.geometry);
    CHECK(p.lat == 40.0);
    CHECK(p.lon == -74.0);
    CHECK(rec.day().to_string() == "2020-02-14");
}

TEST_CASE("parse_record optional fields absent")
{
    const auto rec = ok(parse_record(
        R"({"user_id":"u1","timestamp":"2020-02-14T10:00:00Z","text":"hi","lang":"en"})"));
    CHECK(!rec.country.has_value());
    CHECK(!rec.geometry.has_value());
}

TEST_CASE("parse_record error cases identify the field")
{
    CHECK(bad(parse_record(R"({"user_id":"u1","timestamp":"bad","text":"hi","lang":"en"})")).kind
          == ParseErrorKind::InvalidTimestamp);
    CHECK(bad(parse_record("{not json")).kind == ParseErrorKind::MalformedJson);

    const auto missing =
        bad(parse_record(R"({"timestamp":"2020-02-14T10:00:00Z","text":"hi","lang":"en"})"));
    CHECK(missing.kind == ParseErrorKind::MissingField);
    CHECK(missing.field == "user_id");

    const auto coord = bad(parse_record(
        R"({"user_id":"u","timestamp":"2020-02-14T10:00:00Z","text":"x","lang":"en","geo":{"point":[91.0,0.0]}})"));
    CHECK(coord.kind == ParseErrorKind::InvalidCoordinate);
    CHECK(coord.field == "geo.point");

    // bbox with min > max
    CHECK(bad(parse_record(
                  R"({"user_id":"u","timestamp":"2020-02-14T10:00:00Z","text":"x","lang":"en","geo":{"bbox":[1.0,1.0,0.0,2.0]}})"))
              .kind
          == ParseErrorKind::InvalidCoordinate);
}

TEST_CASE("parse_record normalizes case and accepts offsets and v field")
{
    const auto rec = ok(parse_record(
        R"({"v":1,"user_id":"u","timestamp":"2020-02-14T10:00:00+02:00","text":"x","lang":"ES","country":"mx"})"));
    CHECK(rec.lang == "es");
    CHECK(rec.country == "MX");
    CHECK(format_timestamp(rec.timestamp) == "2020-02-14T08:00:00Z");
}

TEST_CASE("serialize then parse reproduces the record")
{
    const auto roundtrip = [](const MessageRecord& rec) {
        const auto again = ok(parse_record(serialize_record(rec)));
        CHECK(again.user_id == rec.user_id);
        CHECK(again.timestamp == rec.timestamp);
        CHECK(again.text == rec.text);
        CHECK(again.lang == rec.lang);
        CHECK(again.country == rec.country);
        CHECK(again.geometry == rec.geometry);
    };
    roundtrip(make_record("u1", ts_at(Date(2020, 2, 14), 10), "héllo 😀", "es", "MX",
                          GeoShape{Point{19.43, -99.13}}));
    roundtrip(make_record("u2", ts_at(Date(2019, 12, 31), 23, 59, 59), "plain"));
    roundtrip(make_record("u3", ts_at(Date(2021, 1, 1)), "box", "en", "US",
                          GeoShape{BBox{-74.1, 40.0, -73.9, 40.2}}));
}

TEST_CASE("partition places records by UTC day and duplicates into any")
{
    TempDir tmp("store");
    Store store(tmp.path() / "store");

    std::ostringstream input;
    input << serialize_record(make_record("u1", ts_at(Date(2020, 2, 14), 23, 59, 59), "a", "es",
                                          "MX"))
          << "\n";
    input << serialize_record(make_record("u2", ts_at(Date(2020, 2, 15), 0, 0, 0), "b", "es"))
          << "\n";
    input << serialize_record(make_record("u3", ts_at(Date(2020, 2, 15), 12), "c", "es", "MX"))
          << "\n";
    std::istringstream in(input.str());
    const auto summary = store.ingest(in);

    CHECK(summary.ingested == 3);
    CHECK(summary.rejected == 0);

    // UTC day boundary: 23:59:59 and 00:00:00 land on different days.
    CHECK(store.message_count("es", Date(2020, 2, 14)) == 1);
    CHECK(store.message_count("es", Date(2020, 2, 15)) == 2);

    // country record lands in its country file and in any
    CHECK(store.read("es", Date(2020, 2, 14), "MX").size() == 1);
    CHECK(store.read("es", Date(2020, 2, 14), kAnyCountry).size() == 1);
    // country-less record only in any
    CHECK(store.read("es", Date(2020, 2, 15), kAnyCountry).size() == 2);
    CHECK(store.read("es", Date(2020, 2, 15), "MX").size() == 1);

    CHECK(store.langs() == std::vector<std::string>{"es"});
    CHECK(store.countries("es", Date(2020, 2, 15)) == std::vector<std::string>{"MX"});

    CHECK(summary.partitions_touched == 4);
    CHECK(summary.per_partition.at("es/2020-02-14/any") == 1);
    CHECK(summary.per_partition.at("es/2020-02-14/MX") == 1);
    CHECK(summary.per_partition.at("es/2020-02-15/any") == 2);
    CHECK(summary.per_partition.at("es/2020-02-15/MX") == 1);
}

TEST_CASE("ingest conservation: ingested + rejected = lines")
{
    TempDir tmp("store");
    Store store(tmp.path() / "store");
    std::istringstream in(
        R"({"user_id":"u1","timestamp":"2020-02-14T10:00:00Z","text":"hi","lang":"en"}
{"user_id":"u2","timestamp":"nope","text":"hi","lang":"en"}
not json at all
{"user_id":"u3","timestamp":"2020-02-14T11:00:00Z","text":"ok","lang":"en"}
)");
    std::size_t errors = 0;
    const auto summary = store.ingest(in, [&](std::size_t, const ParseError&) { ++errors; });
    CHECK(summary.ingested == 2);
    CHECK(summary.rejected == 2);
    CHECK(errors == 2);
    CHECK(store.message_count("en", Date(2020, 2, 14)) == 2);
}

TEST_CASE("appends survive handle eviction across many partitions")
{
    // More partitions than the store keeps open at once: every append must
    // land even after its file handle was closed and reopened.
    TempDir tmp("evict");
    Store store(tmp.path() / "store");
    const Date d0(2020, 1, 1);
    const int days = 100; // 100 any + 100 country files = 200 handles

    for (int round = 0; round < 3; ++round)
        for (int d = 0; d < days; ++d)
            store.append(make_record("u", ts_at(d0 + d, 8 + round), "msg", "es", "MX"));
    store.flush();

    for (int d = 0; d < days; ++d) {
        CHECK(store.message_count("es", d0 + d) == 3);
        CHECK(store.read("es", d0 + d, "MX").size() == 3);
    }
}

TEST_CASE("re-ingesting the same input into a fresh store is byte-identical")
{
    const std::string input =
        R"({"user_id":"u1","timestamp":"2020-02-14T10:00:00Z","text":"hola","lang":"es","country":"MX","geo":{"bbox":[-99.1,19.3,-99.0,19.5]}}
{"user_id":"u2","timestamp":"2020-02-14T11:00:00Z","text":"adiós","lang":"es"}
{"user_id":"u1","timestamp":"2020-02-15T09:00:00Z","text":"otra","lang":"es","country":"MX"}
)";
    TempDir tmp("idem");
    const auto run = [&](const std::string& name) {
        Store store(tmp.path() / name);
        std::istringstream in(input);
        store.ingest(in);
        std::map<std::string, std::string> files;
        for (const auto& entry :
             std::filesystem::recursive_directory_iterator(tmp.path() / name))
            if (entry.is_regular_file())
                files[std::filesystem::relative(entry.path(), tmp.path() / name).string()] =
                    read_file(entry.path());
        return files;
    };
    CHECK(run("a") == run("b"));
}
