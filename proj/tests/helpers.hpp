#pragma once

#include "geolex/record.hpp"
#include "geolex/store.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace geolex::test {

// Unique scratch directory, removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        static std::mt19937_64 rng(std::random_device{}());
        path_ = std::filesystem::temp_directory_path()
                / ("geolex_" + tag + "_" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline MessageRecord make_record(std::string user, std::int64_t ts, std::string text,
                                 std::string lang = "es",
                                 std::optional<std::string> country = std::nullopt,
                                 std::optional<GeoShape> geo = std::nullopt)
{
    MessageRecord rec;
    rec.user_id = std::move(user);
    rec.timestamp = ts;
    rec.text = std::move(text);
    rec.lang = std::move(lang);
    rec.country = std::move(country);
    rec.geometry = std::move(geo);
    return rec;
}

inline std::int64_t ts_at(Date day, int hh = 12, int mm = 0, int ss = 0)
{
    return static_cast<std::int64_t>(day.serial()) * 86400 + hh * 3600 + mm * 60 + ss;
}

} // namespace geolex::test
