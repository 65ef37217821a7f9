#include "geolex/synth.hpp"

#include "geolex/errors.hpp"
#include "geolex/geo.hpp"
#include "geolex/rng.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace geolex {

namespace {

constexpr int kGridSide = 6;
constexpr int kNumSites = kGridSide * kGridSide;
constexpr double kLat0 = 19.0;
constexpr double kLon0 = -99.0;
constexpr double kSiteStep = 0.05; // ~5.5 km
constexpr double kHalfLat = 0.002; // bbox half extents, diagonal < 1 km
constexpr double kHalfLon = 0.003;

BBox site_bbox(int site)
{
    const int row = site / kGridSide;
    const int col = site % kGridSide;
    const double lat = kLat0 + row * kSiteStep;
    const double lon = kLon0 + col * kSiteStep;
    return {lon - kHalfLon, lat - kHalfLat, lon + kHalfLon, lat + kHalfLat};
}

const std::array<const char*, 24> kWords = {
    "hola",   "buenos", "días",   "trabajo", "casa",  "hoy",    "mañana", "café",
    "feliz",  "gracias", "mucho",  "tráfico", "lluvia", "sol",    "vamos",  "ciudad",
    "amigos", "familia", "comida", "noche",   "semana", "siempre", "nunca",  "bien",
};

const std::array<const char*, 6> kExtras = {
    "😀", "👍🏽", "#lunes", "@amiga", "https://t.co/abc123", "México!",
};

std::string make_text(Rng& rng)
{
    std::string text;
    const int words = 2 + static_cast<int>(rng.bounded(5));
    for (int i = 0; i < words; ++i) {
        if (i > 0)
            text += ' ';
        text += kWords[rng.bounded(kWords.size())];
    }
    if (rng.next_double() < 0.3) {
        text += ' ';
        text += kExtras[rng.bounded(kExtras.size())];
    }
    return text;
}

std::string json_escape(const std::string& s)
{
    // Generator text has no quotes or control characters; pass through.
    return s;
}

std::string fmt_coord(double v)
{
    // Limited-precision generator coordinates round-trip via %.6f exactly
    // enough for byte-stable output.
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string record_line(const std::string& user, Date day, int hh, int mm, int ss,
                        const std::string& text, const char* country, const BBox* bbox,
                        const Point* point)
{
    std::string line = "{\"user_id\":\"" + user + "\",\"timestamp\":\"" + day.to_string() + "T";
    char t[16];
    std::snprintf(t, sizeof(t), "%02d:%02d:%02d", hh, mm, ss);
    line += t;
    line += "Z\",\"text\":\"" + json_escape(text) + "\",\"lang\":\"es\"";
    if (country)
        line += std::string(",\"country\":\"") + country + "\"";
    if (bbox) {
        line += ",\"geo\":{\"bbox\":[" + fmt_coord(bbox->min_lon) + "," + fmt_coord(bbox->min_lat)
                + "," + fmt_coord(bbox->max_lon) + "," + fmt_coord(bbox->max_lat) + "]}";
    } else if (point) {
        line += ",\"geo\":{\"point\":[" + fmt_coord(point->lat) + "," + fmt_coord(point->lon)
                + "]}";
    }
    line += "}";
    return line;
}

} // namespace

int synth_trips_per_user(int weekday)
{
    return weekday <= 4 ? 2 : 1;
}

void synth(const SynthConfig& config, const std::function<void(const std::string&)>& sink)
{
    if (config.profile != "commuters" && config.profile != "static"
        && config.profile != "mixed-drop")
        throw DataError("unknown synth profile: " + config.profile);

    const bool moving = config.profile != "static";
    const bool dropping = config.profile == "mixed-drop";
    const int active_after_drop = static_cast<int>(std::lround(
        config.n_users * (100.0 - config.drop_percent) / 100.0));

    Rng rng(config.seed);

    std::vector<int> home(static_cast<std::size_t>(config.n_users));
    std::vector<int> work(static_cast<std::size_t>(config.n_users));
    for (int u = 0; u < config.n_users; ++u) {
        home[static_cast<std::size_t>(u)] = u % kNumSites;
        work[static_cast<std::size_t>(u)] = (u + 7 + u % 5) % kNumSites;
    }

    for (int d = 0; d < config.n_days; ++d) {
        const Date day = config.start + d;
        const int wd = day.weekday();
        for (int u = 0; u < config.n_users; ++u) {
            const std::string user = "u" + std::to_string(u);
            const BBox hb = site_bbox(home[static_cast<std::size_t>(u)]);
            const BBox wb = site_bbox(work[static_cast<std::size_t>(u)]);
            const bool travels =
                moving && !(dropping && d >= config.drop_at_day && u >= active_after_drop);

            if (config.profile == "static") {
                // One anchored bbox post, then jittered points well inside
                // the 100 m radius.
                sink(record_line(user, day, 9, 0, u % 60, make_text(rng), "MX", &hb, nullptr));
                for (int k = 0; k < 2; ++k) {
                    const Point c = hb.centroid();
                    Point p{c.lat + rng.uniform(-0.0002, 0.0002),
                            c.lon + rng.uniform(-0.0002, 0.0002)};
                    sink(record_line(user, day, 12 + 3 * k, 0, u % 60, make_text(rng), "MX",
                                     nullptr, &p));
                }
                continue;
            }

            const BBox& away = travels ? wb : hb;
            if (wd <= 4) {
                sink(record_line(user, day, 8, 0, u % 60, make_text(rng), "MX", &hb, nullptr));
                sink(record_line(user, day, 12, 0, u % 60, make_text(rng), "MX", &away, nullptr));
                if (rng.next_double() < 0.2) {
                    const Point c = away.centroid();
                    sink(record_line(user, day, 12, 30, u % 60, make_text(rng), "MX", nullptr,
                                     &c));
                }
                sink(record_line(user, day, 18, 0, u % 60, make_text(rng), "MX", &hb, nullptr));
            } else {
                sink(record_line(user, day, 9 + (wd == 6), 0, u % 60, make_text(rng), "MX", &hb,
                                 nullptr));
                sink(record_line(user, day, 13 + (wd == 6), 0, u % 60, make_text(rng), "MX",
                                 &away, nullptr));
            }

            if (rng.next_double() < 0.1) {
                // Occasional message without geometry or country.
                const bool with_country = rng.next_double() < 0.5;
                sink(record_line(user, day, 20, 0, u % 60, make_text(rng),
                                 with_country ? "MX" : nullptr, nullptr, nullptr));
            }
        }
    }
}

} // namespace geolex
