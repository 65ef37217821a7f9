// Acceptance suite: one pass/fail line per criterion. Run with no arguments
// for all criteria, or with a criterion number to run just one.

#include "geolex/baseline.hpp"
#include "geolex/errors.hpp"
#include "geolex/io_util.hpp"
#include "geolex/mobility.hpp"
#include "geolex/pca.hpp"
#include "geolex/rng.hpp"
#include "geolex/series.hpp"
#include "geolex/store.hpp"
#include "geolex/synth.hpp"
#include "geolex/textproc.hpp"
#include "geolex/vocabulary.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace geolex;

namespace {

namespace fs = std::filesystem;

struct Failure {
    std::string what;
};

void expect(bool ok, const std::string& what)
{
    if (!ok)
        throw Failure{what};
}

class Scratch {
public:
    Scratch()
    {
        static std::mt19937_64 rng(std::random_device{}());
        path_ = fs::temp_directory_path() / ("geolex_acc_" + std::to_string(rng()));
        fs::create_directories(path_);
    }
    ~Scratch()
    {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

MessageRecord record_at(std::string user, Date day, int sec_of_day, GeoShape geo)
{
    MessageRecord rec;
    rec.user_id = std::move(user);
    rec.timestamp = static_cast<std::int64_t>(day.serial()) * 86400 + sec_of_day;
    rec.text = "x";
    rec.lang = "es";
    rec.country = "MX";
    rec.geometry = std::move(geo);
    return rec;
}

// ---------------------------------------------------------------- C1

// Naive reference: per user, insertion-sort by (timestamp, input order),
// assign landmarks by linear scan, walk consecutive pairs.
std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t>
oracle_od(const std::vector<MessageRecord>& records, Date day, const LandmarkSet& set)
{
    struct Entry {
        std::int64_t ts;
        std::size_t idx;
        Point pos;
        std::int32_t lm;
    };
    std::map<std::string, std::vector<Entry>> by_user;

    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (!rec.geometry || rec.day() != day)
            continue;

        Point pos{};
        std::int32_t lm = -1;
        if (const auto* bbox = std::get_if<BBox>(&*rec.geometry)) {
            pos = bbox->centroid();
            for (const auto& cand : set.all())
                if (cand.bbox == *bbox) {
                    lm = cand.id;
                    break;
                }
        } else {
            pos = std::get<Point>(*rec.geometry);
        }
        if (lm < 0) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& cand : set.all()) {
                const double d = haversine(pos, cand.centroid);
                if (d < best) {
                    best = d;
                    lm = cand.id;
                }
            }
        }

        auto& list = by_user[rec.user_id];
        Entry e{rec.timestamp, i, pos, lm};
        std::size_t at = list.size();
        list.push_back(e);
        while (at > 0
               && (list[at - 1].ts > e.ts || (list[at - 1].ts == e.ts && list[at - 1].idx > e.idx))) {
            list[at] = list[at - 1];
            --at;
        }
        list[at] = e;
    }

    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> od;
    for (const auto& [user, entries] : by_user)
        for (std::size_t i = 0; i + 1 < entries.size(); ++i)
            if (haversine(entries[i].pos, entries[i + 1].pos) > 100.0)
                ++od[{entries[i].lm, entries[i + 1].lm}];
    return od;
}

void criterion_1()
{
    const auto t0 = std::chrono::steady_clock::now();
    const Date day0(2020, 6, 1);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(1000 + seed);

        std::vector<BBox> sites;
        const int n_sites = 8 + static_cast<int>(rng.bounded(12));
        for (int s = 0; s < n_sites; ++s) {
            const double lat = 19.0 + rng.uniform(0, 0.5);
            const double lon = -99.0 + rng.uniform(0, 0.5);
            sites.push_back({lon - 0.002, lat - 0.002, lon + 0.002, lat + 0.002});
        }
        std::vector<Landmark> lms;
        for (std::size_t s = 0; s < sites.size(); ++s) {
            Landmark lm;
            lm.bbox = sites[s];
            lm.support = 100;
            lms.push_back(lm);
        }
        const LandmarkSet set(std::move(lms));

        const int n_users = 1 + static_cast<int>(rng.bounded(50));
        const int n_records = 100 + static_cast<int>(rng.bounded(901));
        std::vector<MessageRecord> records;
        for (int i = 0; i < n_records; ++i) {
            const Date day = day0 + static_cast<int>(rng.bounded(3));
            const int sec = static_cast<int>(rng.bounded(86400));
            const std::string user = "u" + std::to_string(rng.bounded(
                                              static_cast<std::uint64_t>(n_users)));
            MessageRecord rec;
            const double roll = rng.next_double();
            if (roll < 0.05) {
                rec = record_at(user, day, sec, GeoShape{Point{0, 0}});
                rec.geometry.reset(); // occasionally no geometry at all
            } else if (roll < 0.65) {
                rec = record_at(user, day, sec, GeoShape{sites[rng.bounded(sites.size())]});
            } else if (roll < 0.85) {
                // unknown bbox near a site
                const Point c = sites[rng.bounded(sites.size())].centroid();
                const double lat = c.lat + rng.uniform(-0.01, 0.01);
                const double lon = c.lon + rng.uniform(-0.01, 0.01);
                rec = record_at(user, day, sec,
                                GeoShape{BBox{lon - 0.001, lat - 0.001, lon + 0.001, lat + 0.001}});
            } else {
                const Point c = sites[rng.bounded(sites.size())].centroid();
                rec = record_at(user, day, sec,
                                GeoShape{Point{c.lat + rng.uniform(-0.02, 0.02),
                                               c.lon + rng.uniform(-0.02, 0.02)}});
            }
            records.push_back(std::move(rec));
        }

        Scratch scratch;
        Store store(scratch.path() / "store");
        for (const auto& rec : records)
            store.append(rec);
        store.flush();

        for (int d = 0; d < 3; ++d) {
            const Date day = day0 + d;
            const ODMatrix pipeline = day_od(store, day, set);
            const auto reference = oracle_od(records, day, set);
            expect(pipeline.trips == reference,
                   "seed " + std::to_string(seed) + " day " + day.to_string()
                       + ": pipeline od != naive reference");
        }
    }

    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    expect(elapsed.count() < 10.0,
           "50 datasets took " + std::to_string(elapsed.count()) + "s (limit 10s)");
}

// ---------------------------------------------------------------- C2

void criterion_2()
{
    const std::vector<std::string> pool = {"casa", "sol",  "luna", "mar",  "rio",
                                           "flor", "pan",  "luz",  "paz",  "rey"};
    const Date day(2020, 2, 14);
    TokenizerConfig config; // words, bigrams and q-grams all on

    const auto brute_force = [&](const std::vector<MessageRecord>& msgs,
                                 std::int64_t day_total) {
        std::map<Token, std::int64_t> counts;
        for (const auto& rec : msgs)
            for (const auto& [token, count] : tokenize(rec.text, config))
                counts[token] += count;
        const std::int64_t threshold =
            std::max<std::int64_t>(1, (day_total + 9'999) / 10'000);
        std::map<Token, std::int64_t> kept;
        for (const auto& [token, count] : counts)
            if (count >= threshold)
                kept.emplace(token, count);
        return kept;
    };

    const auto run_corpus = [&](const std::vector<MessageRecord>& msgs) {
        const auto total = static_cast<std::int64_t>(msgs.size());
        const Vocabulary voc = build_day(msgs, {{day}, "es", kAnyCountry}, config, total);
        expect(voc.counts == brute_force(msgs, total), "build_day != brute force");
    };

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(7000 + seed);
        const auto n = 100 + rng.bounded(9'901); // up to 10,000
        std::vector<MessageRecord> msgs;
        for (std::uint64_t i = 0; i < n; ++i) {
            std::string text = pool[rng.bounded(pool.size())];
            const auto extra = rng.bounded(3);
            for (std::uint64_t w = 0; w < extra; ++w)
                text += " " + pool[rng.bounded(pool.size())];
            MessageRecord rec;
            rec.user_id = "u";
            rec.timestamp = static_cast<std::int64_t>(day.serial()) * 86400;
            rec.text = std::move(text);
            rec.lang = "es";
            msgs.push_back(std::move(rec));
        }
        run_corpus(msgs);
    }

    // ceil boundary: a one-off token survives thresholds 1 (N=9999, 10000)
    // and dies at 2 (N=10001)
    for (const std::int64_t n : {9'999, 10'000, 10'001}) {
        std::vector<MessageRecord> msgs;
        for (std::int64_t i = 0; i < n - 1; ++i) {
            MessageRecord rec;
            rec.user_id = "u";
            rec.timestamp = static_cast<std::int64_t>(day.serial()) * 86400;
            rec.text = "aa";
            rec.lang = "es";
            msgs.push_back(std::move(rec));
        }
        MessageRecord unique;
        unique.user_id = "u";
        unique.timestamp = static_cast<std::int64_t>(day.serial()) * 86400;
        unique.text = "zz";
        unique.lang = "es";
        msgs.push_back(std::move(unique));

        run_corpus(msgs);
        const Vocabulary voc = build_day(msgs, {{day}, "es", kAnyCountry}, config, n);
        const bool has_unique = voc.counts.count(Token::word("zz")) > 0;
        expect(has_unique == (n <= 10'000),
               "N=" + std::to_string(n) + ": unexpected threshold behavior");
        expect(voc.counts.count(Token::word("aa")) == 1,
               "N=" + std::to_string(n) + ": frequent token lost");
    }
}

// ---------------------------------------------------------------- C3

void criterion_3()
{
    // Invert haversine by bisection: find the latitude offset whose distance
    // from the origin evaluates to exactly 100.0 (double).
    const auto dist = [](double dlat) { return haversine({0, 0}, {dlat, 0}); };
    const auto bisect = [&](double target) {
        double lo = 0.0, hi = 0.01;
        for (int i = 0; i < 200; ++i) { // collapses to adjacent doubles
            const double mid = (lo + hi) / 2.0;
            if (dist(mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        return std::make_pair(lo, hi);
    };

    auto [below, at_or_above] = bisect(100.0);
    double at100 = below;
    bool exact = false;
    for (int i = 0; i < 4000 && !exact; ++i) { // the hit sits within a few ulps
        if (dist(at100) == 100.0)
            exact = true;
        else
            at100 = std::nextafter(at100, 1.0);
    }
    expect(exact, "could not construct an exact 100.000 m pair");

    double above = at_or_above;
    while (dist(above) <= 100.0)
        above = std::nextafter(above, 1.0);
    expect(dist(above) > 100.0, "could not construct a >100 m pair");

    std::vector<Landmark> lms(1);
    lms[0].bbox = {-0.002, -0.002, 0.002, 0.002};
    lms[0].support = 10;
    const LandmarkSet set(std::move(lms));
    const Date day(2020, 6, 1);

    const auto trips_for = [&](double dlat) {
        const std::vector<MessageRecord> recs = {
            record_at("u", day, 9 * 3600, GeoShape{Point{0, 0}}),
            record_at("u", day, 10 * 3600, GeoShape{Point{dlat, 0}}),
        };
        return detect_trips(recs, set).size();
    };

    expect(trips_for(at100) == 0, "pair at exactly 100.000 m produced a trip");
    expect(trips_for(above) == 1, "pair just above 100 m produced no trip");

    // a pair 100.1 m apart must register
    const double at_100_1 = bisect(100.1).second;
    expect(dist(at_100_1) >= 100.1, "bisection missed the 100.1 m target");
    expect(trips_for(at_100_1) == 1, "pair at 100.1 m produced no trip");
}

// ---------------------------------------------------------------- C4

void criterion_4()
{
    Rng rng(424242);
    const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f", "g", "h",
                                           "i", "j", "k", "l", "m", "n", "o", "p"};

    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + rng.bounded(8);
        std::vector<Vocabulary> vocabs;
        for (std::size_t v = 0; v < n; ++v) {
            Vocabulary voc;
            voc.scope.lang = "es";
            voc.scope.country = "C" + std::to_string(v);
            for (const auto& w : pool)
                if (rng.next_double() < 0.5)
                    voc.counts.emplace(Token::word(w), 1 + static_cast<std::int64_t>(
                                                               rng.bounded(9)));
            if (voc.counts.empty())
                voc.counts.emplace(Token::word("z"), 1);
            vocabs.push_back(std::move(voc));
        }

        const SimilarityMatrix m = similarity_matrix(vocabs);
        for (std::size_t i = 0; i < n; ++i) {
            expect(std::abs(m.at(i, i) - 1.0) <= 1e-12, "diagonal not 1");
            for (std::size_t j = 0; j < n; ++j) {
                expect(std::abs(m.at(i, j) - m.at(j, i)) <= 1e-12, "matrix not symmetric");
                expect(m.at(i, j) >= 0.0 && m.at(i, j) <= 1.0, "score out of [0,1]");
            }
        }
    }

    // dense eigensolver oracle (power iteration + deflation, test-local)
    {
        Rng mrng(777);
        Matrix rows(4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            rows.at(i, i) = 1.0;
            for (std::size_t j = i + 1; j < 4; ++j) {
                const double v = mrng.next_double();
                rows.at(i, j) = v;
                rows.at(j, i) = v;
            }
        }

        std::vector<double> mean(4, 0.0);
        for (std::size_t f = 0; f < 4; ++f) {
            for (std::size_t i = 0; i < 4; ++i)
                mean[f] += rows.at(i, f);
            mean[f] /= 4.0;
        }
        std::vector<std::vector<double>> cov(4, std::vector<double>(4, 0.0));
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) {
                for (std::size_t i = 0; i < 4; ++i)
                    cov[a][b] += (rows.at(i, a) - mean[a]) * (rows.at(i, b) - mean[b]);
                cov[a][b] /= 3.0;
            }

        auto power_top = [&](std::vector<std::vector<double>>& sym) {
            std::vector<double> v = {1, 0.5, -0.25, 0.8};
            double lambda = 0.0;
            for (int it = 0; it < 50000; ++it) {
                std::vector<double> w(4, 0.0);
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t j = 0; j < 4; ++j)
                        w[i] += sym[i][j] * v[j];
                double norm = 0.0;
                for (double x : w)
                    norm += x * x;
                norm = std::sqrt(norm);
                if (norm == 0.0)
                    break;
                for (auto& x : w)
                    x /= norm;
                v = w;
                lambda = 0.0;
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t j = 0; j < 4; ++j)
                        lambda += v[i] * sym[i][j] * v[j];
            }
            return std::make_pair(lambda, v);
        };

        const PcaResult r = pca_project(rows, 2);
        auto work = cov;
        for (int comp = 0; comp < 2; ++comp) {
            auto [lambda, vec] = power_top(work);
            expect(std::abs(lambda - r.eigenvalues[static_cast<std::size_t>(comp)]) <= 1e-8,
                   "eigenvalue differs from the oracle");
            std::vector<double> proj(4, 0.0);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t f = 0; f < 4; ++f)
                    proj[i] += (rows.at(i, f) - mean[f]) * vec[f];
            double dot = 0.0;
            for (std::size_t i = 0; i < 4; ++i)
                dot += proj[i] * r.coords.at(i, static_cast<std::size_t>(comp));
            const double sign = dot >= 0 ? 1.0 : -1.0;
            for (std::size_t i = 0; i < 4; ++i)
                expect(std::abs(sign * proj[i] - r.coords.at(i, static_cast<std::size_t>(comp)))
                           <= 1e-8,
                       "projection differs from the oracle");
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    work[i][j] -= lambda * vec[i] * vec[j];
        }
    }

    // collinear input: second component identically zero
    {
        Matrix rows(3, 2);
        rows.at(0, 0) = 1;
        rows.at(0, 1) = 2;
        rows.at(1, 0) = 2;
        rows.at(1, 1) = 4;
        rows.at(2, 0) = 3;
        rows.at(2, 1) = 6;
        const PcaResult r = pca_project(rows, 2);
        for (std::size_t i = 0; i < 3; ++i)
            expect(std::abs(r.coords.at(i, 1)) <= 1e-10, "collinear second component not zero");
    }
}

// ---------------------------------------------------------------- C5

void criterion_5()
{
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(31000 + seed);
        const int k_true = 2 + static_cast<int>(seed % 3);

        // centers 250 apart, within-cluster spread +-5: separation is more
        // than 10x the spread
        std::vector<double> values;
        for (int c = 0; c < k_true; ++c)
            for (int i = 0; i < 30; ++i)
                values.push_back(250.0 * c + rng.uniform(-5.0, 5.0));

        const Baseline b = cluster_baseline(values, 2, 7, 555 + seed);
        if (b.selected_k == k_true)
            ++hits;
    }
    expect(hits >= 95, "k recovered in only " + std::to_string(hits) + "/100 runs");
}

// ---------------------------------------------------------------- C6

void criterion_6()
{
    SynthConfig config;
    config.profile = "mixed-drop";
    config.n_users = 50;
    config.n_days = 119; // 13 weeks of baseline + 4 weeks after the drop
    config.seed = 2021;
    config.drop_percent = 60.0;
    config.drop_at_day = 91;

    std::string buffer;
    synth(config, [&](const std::string& line) {
        buffer += line;
        buffer += '\n';
    });

    Scratch scratch;
    Store store(scratch.path() / "store");
    std::istringstream in(buffer);
    const auto summary = store.ingest(in);
    expect(summary.rejected == 0, "synthetic stream rejected records");

    const LandmarkSet set = build_landmarks(store);
    std::vector<ODMatrix> ods;
    for (int d = 0; d < config.n_days; ++d)
        ods.push_back(day_od(store, config.start + d, set));

    const CountryValues values = measure_series(country_series(ods, set), Measure::Overall);
    const Series& mx = values.at("MX");
    expect(static_cast<int>(mx.size()) == config.n_days, "missing days in the series");

    const Date drop_date = config.start + config.drop_at_day;
    const Baseline base = weekday_baseline(mx, drop_date, 13);
    Series after;
    for (const auto& p : mx)
        if (p.date >= drop_date)
            after.push_back(p);
    const PercentSeries pct = percent(after, base);

    expect(pct.points.size() == 28, "expected 4 analyzed weeks");
    for (const auto& p : pct.points)
        expect(std::abs(p.value - (-60.0)) <= 1.0,
               p.date.to_string() + ": percent " + std::to_string(p.value)
                   + " not within -60 +- 1");
}

// ---------------------------------------------------------------- C7

void criterion_7()
{
    // 13 weeks of baseline: weekdays 100, weekend 40. Analysis month: same
    // pattern, but two holiday Mondays behave like Sundays (40).
    const Date monday(2020, 1, 6);
    Series series;
    for (int d = 0; d < 91 + 28; ++d) {
        const Date date = monday + d;
        double v = date.weekday() <= 4 ? 100.0 : 40.0;
        if (d == 91 + 7 || d == 91 + 21) // holiday Mondays
            v = 40.0;
        series.push_back({date, v});
    }
    const Date start = monday + 91;

    const Baseline weekday = weekday_baseline(series, start, 13);
    const Baseline cluster = cluster_baseline_for(series, start, 13, 2, 7, 42);

    Series analyzed;
    for (const auto& p : series)
        if (p.date >= start)
            analyzed.push_back(p);

    const PercentSeries wd = percent(analyzed, weekday);
    const PercentSeries km = percent(analyzed, cluster);

    int checked = 0;
    for (std::size_t i = 0; i < analyzed.size(); ++i) {
        const Date date = analyzed[i].date;
        const bool holiday_monday = analyzed[i].value == 40.0 && date.weekday() == 0;
        if (holiday_monday) {
            ++checked;
            // weekday method: spuriously negative against the Monday median
            expect(wd.points[i].value < -30.0,
                   date.to_string() + ": weekday percent not spuriously negative, got "
                       + std::to_string(wd.points[i].value));
            // k-means: the day sits on the weekend centroid, so ~0%
            expect(std::abs(km.points[i].value) < 5.0,
                   date.to_string() + ": k-means percent not near zero, got "
                       + std::to_string(km.points[i].value));
        } else {
            expect(std::abs(km.points[i].value) < 5.0, "normal day far from its centroid");
            expect(std::abs(wd.points[i].value) < 1e-9, "normal day nonzero weekday percent");
        }
    }
    expect(checked == 2, "expected exactly 2 holiday Mondays");
}

// ---------------------------------------------------------------- C8

void criterion_8()
{
    const Date d0(2020, 1, 6);
    const auto mk = [&](const std::vector<double>& v) {
        Series s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s.push_back({d0 + static_cast<int>(i), v[i]});
        return s;
    };

    const Series a = mk({3, 1, 4, 1, 5, 9, 2, 6});
    Series neg = a, affine = a;
    for (auto& p : neg)
        p.value = -p.value;
    for (auto& p : affine)
        p.value = 4.25 * p.value - 11.0;

    expect(std::abs(pearson(a, a) - 1.0) <= 1e-12, "pearson(a,a) != 1");
    expect(std::abs(pearson(a, neg) + 1.0) <= 1e-12, "pearson(a,-a) != -1");
    expect(std::abs(pearson(a, affine) - 1.0) <= 1e-12, "pearson not affine invariant");

    Series neg_affine = neg;
    for (auto& p : neg_affine)
        p.value = 0.5 * p.value + 100.0;
    expect(std::abs(pearson(a, neg_affine) + 1.0) <= 1e-12,
           "pearson not affine invariant under negative pairing");

    // moving average: first element is itself; each prefix below the window
    // length averages everything seen so far
    const Series two = mk({0, 7});
    const Series ma2 = moving_average(two, 7);
    expect(ma2[0].value == 0.0 && ma2[1].value == 3.5, "[0,7] -> [0, 3.5] failed");

    const Series ramp = mk({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    const Series ma = moving_average(ramp, 7);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        double sum = 0.0;
        int n = 0;
        for (std::size_t j = (i >= 6 ? i - 6 : 0); j <= i; ++j) {
            sum += ramp[j].value;
            ++n;
        }
        expect(std::abs(ma[i].value - sum / n) <= 1e-15, "min_periods=1 semantics violated");
    }
}

// ---------------------------------------------------------------- C9

const char* cli_path()
{
    return GEOLEX_CLI_PATH;
}

int run_cli(const std::string& args, const fs::path& cwd)
{
    const std::string cmd =
        "cd '" + cwd.string() + "' && '" + cli_path() + "' " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> tree_bytes(const fs::path& root)
{
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            files[fs::relative(entry.path(), root).string()] = read_file(entry.path());
    return files;
}

void criterion_9()
{
    Scratch scratch;

    // determinism: the full CLI pipeline twice under the same seed
    for (const char* run : {"a", "b"}) {
        const fs::path dir = scratch.path() / run;
        fs::create_directories(dir);
        expect(run_cli("synth --profile mixed-drop --users 20 --days 105 --seed 11 "
                       "--drop 60 --at day91 --out synth.ndjson",
                       dir)
                   == 0,
               "synth failed");
        expect(run_cli("ingest --input synth.ndjson --store store", dir) == 0, "ingest failed");
        expect(run_cli("mobility build-landmarks --store store --out landmarks.bin", dir) == 0,
               "build-landmarks failed");
        expect(run_cli("mobility trips --store store --landmarks landmarks.bin "
                       "--dates 2020-01-06..2020-04-19 --out od",
                       dir)
                   == 0,
               "trips failed");
        expect(run_cli("mobility series --od od --landmarks landmarks.bin --countries MX "
                       "--measure overall --format csv --out series.csv",
                       dir)
                   == 0,
               "series failed");
        expect(run_cli("baseline --series series.csv --method weekday --weeks 13 "
                       "--start 2020-04-06 --out percent.csv",
                       dir)
                   == 0,
               "baseline failed");
        expect(run_cli("vocab --store store --date 2020-01-06 --lang es --country MX "
                       "--drop-qgrams --out voc.json",
                       dir)
                   == 0,
               "vocab failed");
    }
    expect(tree_bytes(scratch.path() / "a") == tree_bytes(scratch.path() / "b"),
           "same-seed pipeline runs are not byte-identical");

    // throughput: a million records through ingest + tokenize + aggregate,
    // single-threaded
    SynthConfig big;
    big.profile = "commuters";
    big.n_users = 3700;
    big.n_days = 95;
    big.seed = 99;

    std::string buffer;
    buffer.reserve(200u << 20);
    std::int64_t lines = 0;
    const auto t0 = std::chrono::steady_clock::now();
    synth(big, [&](const std::string& line) {
        buffer += line;
        buffer += '\n';
        ++lines;
    });
    expect(lines >= 1'000'000, "generator produced only " + std::to_string(lines) + " records");

    Store store(scratch.path() / "big_store");
    std::istringstream in(buffer);
    const auto summary = store.ingest(in);
    expect(summary.ingested == lines, "ingest lost records");

    TokenizerConfig config;
    std::int64_t vocab_tokens = 0;
    for (const Date date : store.dates("es")) {
        const auto records = store.read("es", date, kAnyCountry);
        const Vocabulary voc = build_day(records, {{date}, "es", kAnyCountry}, config,
                                         store.message_count("es", date));
        vocab_tokens += static_cast<std::int64_t>(voc.counts.size());
    }
    expect(vocab_tokens > 0, "no tokens aggregated");

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "  (ingest+tokenize+aggregate of " << lines << " records took " << elapsed
              << "s)\n";
    expect(elapsed < 300.0,
           "throughput " + std::to_string(elapsed) + "s exceeds the 5 minute bound");
}

struct Criterion {
    int number;
    const char* name;
    std::function<void()> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "trip oracle equivalence over 50 seeded datasets", criterion_1},
    {2, "vocabulary threshold exactness vs brute force", criterion_2},
    {3, "100 m strictness at the boundary", criterion_3},
    {4, "jaccard matrix properties and pca oracle", criterion_4},
    {5, "silhouette k selection on planted mixtures", criterion_5},
    {6, "percent-change recovery of an injected -60% drop", criterion_6},
    {7, "weekday vs k-means divergence on holiday Mondays", criterion_7},
    {8, "pearson and moving-average contracts", criterion_8},
    {9, "determinism and throughput", criterion_9},
};

} // namespace

int main(int argc, char** argv)
{
    int only = 0;
    if (argc > 1)
        only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& criterion : kCriteria) {
        if (only != 0 && criterion.number != only)
            continue;
        try {
            criterion.run();
            std::cout << "[PASS] C" << criterion.number << ": " << criterion.name << "\n";
        } catch (const Failure& f) {
            ++failures;
            std::cout << "[FAIL] C" << criterion.number << ": " << criterion.name << ": "
                      << f.what << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "[FAIL] C" << criterion.number << ": " << criterion.name
                      << ": unexpected error: " << e.what() << "\n";
        }
    }
    return failures == 0 ? 0 : 1;
}
