#include "geolex/mobility.hpp"

#include "geolex/errors.hpp"
#include "geolex/io_util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace geolex {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegMeters = kEarthRadiusMeters * kPi / 180.0; // one degree of latitude

int lat_cell(double lat) { return std::clamp(static_cast<int>(std::floor(lat + 90.0)), 0, 179); }

int lon_cell(double lon)
{
    int c = static_cast<int>(std::floor(lon + 180.0));
    c %= 360;
    if (c < 0)
        c += 360;
    return c;
}

std::int32_t cell_key(int ilat, int ilon) { return static_cast<std::int32_t>(ilat * 360 + ilon); }

// Lower bound on the distance from `query` to anything in ring >= r of its
// grid cell. Cells r apart in latitude are at least (r-1) degrees of arc
// away; cells r apart in longitude shrink with latitude, degrading to zero
// toward the poles (where the scan legitimately widens).
double ring_lower_bound(const Point& query, int r)
{
    if (r <= 1)
        return 0.0;
    const double lat_bound = (r - 1) * kDegMeters;

    const double abs_lat = std::abs(query.lat);
    const double band = std::min(90.0, abs_lat + r);
    const double cos_q = std::cos(query.lat * kPi / 180.0);
    const double cos_band = std::max(0.0, std::cos(band * kPi / 180.0));
    const double s = std::sqrt(std::max(0.0, cos_q * cos_band))
                     * std::sin((r - 1) * kPi / 360.0);
    const double lon_bound = 2.0 * kEarthRadiusMeters * std::asin(std::min(1.0, s));

    return std::min(lat_bound, lon_bound);
}

} // namespace

LandmarkSet::LandmarkSet(std::vector<Landmark> landmarks)
    : landmarks_(std::move(landmarks))
{
    for (std::size_t i = 0; i < landmarks_.size(); ++i) {
        landmarks_[i].id = static_cast<std::int32_t>(i);
        landmarks_[i].centroid = landmarks_[i].bbox.centroid();
        exact_.emplace(landmarks_[i].bbox, landmarks_[i].id);
        const Point c = landmarks_[i].centroid;
        grid_[cell_key(lat_cell(c.lat), lon_cell(c.lon))].push_back(landmarks_[i].id);
    }
}

std::optional<std::int32_t> LandmarkSet::exact_match(const BBox& bbox) const
{
    auto it = exact_.find(bbox);
    if (it == exact_.end())
        return std::nullopt;
    return it->second;
}

std::int32_t LandmarkSet::nearest(const Point& p) const
{
    if (landmarks_.empty())
        throw EmptyLandmarkSet();

    const int qlat = lat_cell(p.lat);
    const int qlon = lon_cell(p.lon);
    const auto wrap = [](int ilon) { return ((ilon % 360) + 360) % 360; };

    double best_dist = std::numeric_limits<double>::infinity();
    std::int32_t best_id = -1;

    auto visit = [&](int ilat, int ilon) {
        auto it = grid_.find(cell_key(ilat, ilon));
        if (it == grid_.end())
            return;
        for (std::int32_t id : it->second) {
            const double d = haversine(p, landmarks_[static_cast<std::size_t>(id)].centroid);
            if (d < best_dist || (d == best_dist && id < best_id)) {
                best_dist = d;
                best_id = id;
            }
        }
    };

    // Grow rings while the bound can still rule rings out. Queries far from
    // every landmark (or near a pole, where the longitude bound collapses)
    // drop to a plain scan instead of walking empty cells.
    constexpr int kMaxRing = 8;
    for (int r = 0; r <= kMaxRing; ++r) {
        if (best_id >= 0 && best_dist <= ring_lower_bound(p, r))
            return best_id;
        if (r == 0) {
            visit(qlat, qlon);
            continue;
        }
        for (int dlon = -r; dlon <= r; ++dlon)
            for (const int ilat : {qlat - r, qlat + r})
                if (ilat >= 0 && ilat <= 179)
                    visit(ilat, wrap(qlon + dlon));
        for (int dlat = -r + 1; dlat <= r - 1; ++dlat) {
            const int ilat = qlat + dlat;
            if (ilat < 0 || ilat > 179)
                continue;
            visit(ilat, wrap(qlon - r));
            visit(ilat, wrap(qlon + r));
        }
    }
    if (best_id >= 0 && best_dist <= ring_lower_bound(p, kMaxRing + 1))
        return best_id;

    for (const auto& lm : landmarks_) {
        const double d = haversine(p, lm.centroid);
        if (d < best_dist || (d == best_dist && lm.id < best_id)) {
            best_dist = d;
            best_id = lm.id;
        }
    }
    return best_id;
}

LandmarkSet build_landmarks(const Store& store, const std::vector<std::string>& langs)
{
    struct Candidate {
        std::int64_t support = 0;
        std::map<std::string, std::int64_t> country_votes;
    };
    std::map<BBox, Candidate> candidates;
    std::map<std::string, std::set<std::int32_t>> days_collected;
    bool any_geotagged = false;

    auto scan = [&](const MessageRecord& rec) {
        if (!rec.geometry)
            return;
        any_geotagged = true;
        const std::string country = rec.country ? *rec.country : kUnknownCountry;
        days_collected[country].insert(rec.day().serial());
        if (const auto* bbox = std::get_if<BBox>(&*rec.geometry)) {
            Candidate& c = candidates[*bbox];
            ++c.support;
            if (rec.country)
                ++c.country_votes[*rec.country];
        }
    };
    if (langs.empty())
        store.for_each_record(scan);
    else
        store.for_each_record(langs, scan);

    if (!any_geotagged)
        throw NoGeotaggedData();

    std::vector<Landmark> kept;
    for (const auto& [bbox, cand] : candidates) {
        std::string majority = kUnknownCountry;
        std::int64_t best_votes = 0;
        for (const auto& [country, votes] : cand.country_votes) {
            if (votes > best_votes) { // map order makes ties lexicographic
                best_votes = votes;
                majority = country;
            }
        }
        const auto days = static_cast<std::int64_t>(days_collected[majority].size());
        if (cand.support * 100 > days) { // strictly more than 1% of days
            Landmark lm;
            lm.bbox = bbox;
            lm.country = majority;
            lm.support = cand.support;
            kept.push_back(std::move(lm));
        }
    }

    std::sort(kept.begin(), kept.end(), [](const Landmark& a, const Landmark& b) {
        if (a.support != b.support)
            return a.support > b.support;
        return a.bbox < b.bbox;
    });
    return LandmarkSet(std::move(kept));
}

LandmarkAssignment assign_landmark(const MessageRecord& rec, const LandmarkSet& set)
{
    if (!rec.geometry)
        throw DataError("assign_landmark needs a geotagged record");
    if (set.empty())
        throw EmptyLandmarkSet();

    if (const auto* bbox = std::get_if<BBox>(&*rec.geometry)) {
        const Point centroid = bbox->centroid();
        if (auto id = set.exact_match(*bbox))
            return {*id, centroid};
        return {set.nearest(centroid), centroid};
    }
    const Point p = std::get<Point>(*rec.geometry);
    return {set.nearest(p), p};
}

std::vector<Trip> detect_trips(std::span<const MessageRecord> user_day_records,
                               const LandmarkSet& set)
{
    std::vector<Trip> trips;
    if (user_day_records.size() < 2)
        return trips;

    std::vector<std::size_t> order(user_day_records.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return user_day_records[a].timestamp < user_day_records[b].timestamp;
    });

    std::vector<LandmarkAssignment> assigned;
    assigned.reserve(order.size());
    for (std::size_t i : order)
        assigned.push_back(assign_landmark(user_day_records[i], set));

    const Date day = user_day_records[order.front()].day();
    for (std::size_t i = 0; i + 1 < assigned.size(); ++i) {
        if (haversine(assigned[i].position, assigned[i + 1].position) > kTripMinMeters)
            trips.push_back({day, assigned[i].id, assigned[i + 1].id});
    }
    return trips;
}

std::int64_t ODMatrix::total() const
{
    std::int64_t n = 0;
    for (const auto& [key, count] : trips)
        n += count;
    return n;
}

ODMatrix od_matrix(Date day, std::span<const Trip> trips)
{
    ODMatrix od;
    od.day = day;
    for (const auto& t : trips)
        ++od.trips[{t.origin, t.dest}];
    return od;
}

ODMatrix day_od(const Store& store, Date date, const LandmarkSet& set,
                const std::vector<std::string>& langs)
{
    const std::vector<std::string> use_langs = langs.empty() ? store.langs() : langs;

    // Group the day's geotagged records by user, preserving read order so
    // that equal timestamps resolve deterministically.
    std::map<std::string, std::vector<MessageRecord>> by_user;
    for (const auto& lang : use_langs)
        for (auto& rec : store.read(lang, date, kAnyCountry))
            if (rec.geometry)
                by_user[rec.user_id].push_back(std::move(rec));

    std::vector<Trip> all_trips;
    for (const auto& [user, records] : by_user) {
        auto trips = detect_trips(records, set);
        all_trips.insert(all_trips.end(), trips.begin(), trips.end());
    }
    return od_matrix(date, all_trips);
}

CountrySeries country_series(std::span<const ODMatrix> ods, const LandmarkSet& set)
{
    CountrySeries series;
    for (const auto& od : ods) {
        auto& day_map = series[od.day];
        for (const auto& [pair, count] : od.trips) {
            const std::string& oc = set.at(pair.first).country;
            const std::string& dc = set.at(pair.second).country;
            if (oc == dc) {
                day_map[oc].inside += count;
            } else {
                day_map[oc].outward += count;
                day_map[dc].inward += count;
            }
        }
    }
    return series;
}

namespace {

void put_u64(std::string& out, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double d)
{
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    put_u64(out, bits);
}

std::uint64_t get_u64(const std::string& in, std::size_t& pos)
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos++])) << (8 * i);
    return v;
}

double get_f64(const std::string& in, std::size_t& pos)
{
    const std::uint64_t bits = get_u64(in, pos);
    double d;
    std::memcpy(&d, &bits, sizeof(d));
    return d;
}

constexpr char kLandmarkMagic[8] = {'G', 'L', 'X', 'L', 'M', 'K', '0', '1'};

} // namespace

void write_landmarks_bin(const LandmarkSet& set, const std::filesystem::path& path)
{
    std::string out;
    out.append(kLandmarkMagic, sizeof(kLandmarkMagic));
    put_u64(out, set.size());
    for (const auto& lm : set.all()) {
        put_f64(out, lm.bbox.min_lon);
        put_f64(out, lm.bbox.min_lat);
        put_f64(out, lm.bbox.max_lon);
        put_f64(out, lm.bbox.max_lat);
        out.push_back(lm.country.size() > 0 ? lm.country[0] : '?');
        out.push_back(lm.country.size() > 1 ? lm.country[1] : '?');
        put_u64(out, static_cast<std::uint64_t>(lm.support));
    }
    atomic_write_file(path, out);
}

LandmarkSet read_landmarks_bin(const std::filesystem::path& path)
{
    const std::string in = read_file(path);
    if (in.size() < sizeof(kLandmarkMagic) + 8
        || std::memcmp(in.data(), kLandmarkMagic, sizeof(kLandmarkMagic)) != 0)
        throw IoError("not a landmark file: " + path.string());
    std::size_t pos = sizeof(kLandmarkMagic);
    const std::uint64_t n = get_u64(in, pos);
    if (in.size() != sizeof(kLandmarkMagic) + 8 + n * (4 * 8 + 2 + 8))
        throw IoError("truncated landmark file: " + path.string());

    std::vector<Landmark> landmarks;
    landmarks.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        Landmark lm;
        lm.bbox.min_lon = get_f64(in, pos);
        lm.bbox.min_lat = get_f64(in, pos);
        lm.bbox.max_lon = get_f64(in, pos);
        lm.bbox.max_lat = get_f64(in, pos);
        lm.country.assign({in[pos], in[pos + 1]});
        pos += 2;
        lm.support = static_cast<std::int64_t>(get_u64(in, pos));
        landmarks.push_back(std::move(lm));
    }
    return LandmarkSet(std::move(landmarks));
}

void write_landmarks_csv(const LandmarkSet& set, const std::filesystem::path& path)
{
    std::string out =
        "id,min_lon,min_lat,max_lon,max_lat,centroid_lat,centroid_lon,country,support\n";
    for (const auto& lm : set.all()) {
        out += std::to_string(lm.id);
        out += ',';
        out += format_double(lm.bbox.min_lon);
        out += ',';
        out += format_double(lm.bbox.min_lat);
        out += ',';
        out += format_double(lm.bbox.max_lon);
        out += ',';
        out += format_double(lm.bbox.max_lat);
        out += ',';
        out += format_double(lm.centroid.lat);
        out += ',';
        out += format_double(lm.centroid.lon);
        out += ',';
        out += lm.country;
        out += ',';
        out += std::to_string(lm.support);
        out += '\n';
    }
    atomic_write_file(path, out);
}

void write_od_csv(const ODMatrix& od, const std::filesystem::path& path)
{
    std::string out = "date,origin,dest,count\n";
    const std::string day = od.day.to_string();
    for (const auto& [pair, count] : od.trips) {
        out += day;
        out += ',';
        out += std::to_string(pair.first);
        out += ',';
        out += std::to_string(pair.second);
        out += ',';
        out += std::to_string(count);
        out += '\n';
    }
    atomic_write_file(path, out);
}

ODMatrix read_od_csv(const std::filesystem::path& path, Date day)
{
    ODMatrix od;
    od.day = day;
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open od file " + path.string());
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false; // header
            continue;
        }
        if (line.empty())
            continue;
        std::istringstream ss(line);
        std::string date_s, origin_s, dest_s, count_s;
        if (!std::getline(ss, date_s, ',') || !std::getline(ss, origin_s, ',')
            || !std::getline(ss, dest_s, ',') || !std::getline(ss, count_s))
            throw IoError("bad od row in " + path.string() + ": " + line);
        od.trips[{std::stoi(origin_s), std::stoi(dest_s)}] += std::stoll(count_s);
    }
    return od;
}

} // namespace geolex
