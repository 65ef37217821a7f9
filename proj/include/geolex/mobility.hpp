#pragma once

#include "geolex/date.hpp"
#include "geolex/geo.hpp"
#include "geolex/record.hpp"
#include "geolex/store.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace geolex {

inline constexpr const char* kUnknownCountry = "??";
inline constexpr double kTripMinMeters = 100.0;

struct Landmark {
    std::int32_t id = 0;
    BBox bbox;
    Point centroid;
    std::string country = kUnknownCountry; // majority vote of contributing records
    std::int64_t support = 0;
};

// Immutable set of frequency-filtered bounding boxes. Ids are dense and
// assigned in (support desc, bbox asc) order so rebuilds are reproducible.
// Nearest lookups run over a 1-degree grid with ring expansion; ties go to
// the lowest id, matching a linear scan exactly.
class LandmarkSet {
public:
    LandmarkSet() = default;
    explicit LandmarkSet(std::vector<Landmark> landmarks);

    std::size_t size() const { return landmarks_.size(); }
    bool empty() const { return landmarks_.empty(); }
    const Landmark& at(std::int32_t id) const { return landmarks_[static_cast<std::size_t>(id)]; }
    const std::vector<Landmark>& all() const { return landmarks_; }

    std::optional<std::int32_t> exact_match(const BBox& bbox) const;

    // Nearest centroid by haversine distance; throws EmptyLandmarkSet.
    std::int32_t nearest(const Point& p) const;

private:
    std::vector<Landmark> landmarks_;
    std::map<BBox, std::int32_t> exact_;
    std::unordered_map<std::int32_t, std::vector<std::int32_t>> grid_;
};

// Keeps a bounding box iff it appears in strictly more records than 1% of
// the days collected for its (majority) country. Point-only records vote
// for no candidate box but do count toward days collected.
LandmarkSet build_landmarks(const Store& store, const std::vector<std::string>& langs = {});

struct LandmarkAssignment {
    std::int32_t id = 0;
    Point position; // exact point when available, else the query bbox centroid
};

LandmarkAssignment assign_landmark(const MessageRecord& rec, const LandmarkSet& set);

struct Trip {
    Date day;
    std::int32_t origin = 0;
    std::int32_t dest = 0;
};

// Consecutive same-day messages of one user more than 100 m apart, in
// timestamp order (input order breaks ties). Records must carry geometry.
std::vector<Trip> detect_trips(std::span<const MessageRecord> user_day_records,
                               const LandmarkSet& set);

struct ODMatrix {
    Date day;
    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> trips;

    std::int64_t total() const;
};

ODMatrix od_matrix(Date day, std::span<const Trip> trips);

// Full per-day pass over the store: group geotagged records by user,
// detect trips, accumulate the OD matrix.
ODMatrix day_od(const Store& store, Date date, const LandmarkSet& set,
                const std::vector<std::string>& langs = {});

struct MobilityMeasures {
    std::int64_t inside = 0;
    std::int64_t inward = 0;
    std::int64_t outward = 0;

    std::int64_t overall() const { return inside + inward + outward; }
};

using CountrySeries = std::map<Date, std::map<std::string, MobilityMeasures>>;

CountrySeries country_series(std::span<const ODMatrix> ods, const LandmarkSet& set);

// Binary landmark file (fixed little-endian layout) plus the CSV mirror.
void write_landmarks_bin(const LandmarkSet& set, const std::filesystem::path& path);
LandmarkSet read_landmarks_bin(const std::filesystem::path& path);
void write_landmarks_csv(const LandmarkSet& set, const std::filesystem::path& path);

void write_od_csv(const ODMatrix& od, const std::filesystem::path& path);
ODMatrix read_od_csv(const std::filesystem::path& path, Date day);

} // namespace geolex
