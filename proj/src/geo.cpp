#include "geolex/geo.hpp"

#include <algorithm>
#include <cmath>

namespace geolex {

double haversine(const Point& a, const Point& b)
{
    constexpr double deg = 3.14159265358979323846 / 180.0;
    const double phi1 = a.lat * deg;
    const double phi2 = b.lat * deg;
    const double dphi = (b.lat - a.lat) * deg;
    const double dlam = (b.lon - a.lon) * deg;

    const double sp = std::sin(dphi / 2.0);
    const double sl = std::sin(dlam / 2.0);
    const double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
    return 2.0 * kEarthRadiusMeters * std::asin(std::min(1.0, std::sqrt(h)));
}

} // namespace geolex
