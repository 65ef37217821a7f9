#pragma once

#include <compare>
#include <optional>
#include <variant>

namespace geolex {

inline constexpr double kEarthRadiusMeters = 6'371'000.0;

struct Point {
    double lat = 0.0;
    double lon = 0.0;

    auto operator<=>(const Point&) const = default;
};

struct BBox {
    double min_lon = 0.0;
    double min_lat = 0.0;
    double max_lon = 0.0;
    double max_lat = 0.0;

    Point centroid() const { return {(min_lat + max_lat) / 2.0, (min_lon + max_lon) / 2.0}; }

    auto operator<=>(const BBox&) const = default;
};

using GeoShape = std::variant<Point, BBox>;

inline bool valid_lat(double lat) { return lat >= -90.0 && lat <= 90.0; }
inline bool valid_lon(double lon) { return lon >= -180.0 && lon <= 180.0; }

inline bool valid_shape(const BBox& b)
{
    return valid_lat(b.min_lat) && valid_lat(b.max_lat) && valid_lon(b.min_lon)
           && valid_lon(b.max_lon) && b.min_lat <= b.max_lat && b.min_lon <= b.max_lon;
}

inline Point shape_position(const GeoShape& g)
{
    if (const auto* p = std::get_if<Point>(&g))
        return *p;
    return std::get<BBox>(g).centroid();
}

// Great-circle distance in meters on a sphere of radius 6,371,000 m.
double haversine(const Point& a, const Point& b);

} // namespace geolex
