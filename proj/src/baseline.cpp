#include "geolex/baseline.hpp"

#include "geolex/errors.hpp"
#include "geolex/io_util.hpp"
#include "geolex/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace geolex {

namespace {

double lower_median(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

int nearest_centroid(double v, const std::vector<double>& centroids)
{
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(centroids.size()); ++i) {
        const double d = std::abs(v - centroids[static_cast<std::size_t>(i)]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

} // namespace

Baseline weekday_baseline(const Series& series, Date window_end, int weeks)
{
    const Date window_start = window_end - weeks * 7;
    std::array<std::vector<double>, 7> buckets;
    for (const auto& p : series)
        if (p.date >= window_start && p.date < window_end)
            buckets[static_cast<std::size_t>(p.date.weekday())].push_back(p.value);

    Baseline b;
    b.method = Baseline::Method::Weekday;
    b.window_start = window_start;
    b.window_end = window_end;
    for (int w = 0; w < 7; ++w) {
        if (buckets[static_cast<std::size_t>(w)].empty())
            throw InsufficientBaselineData(w);
        b.weekday_medians[static_cast<std::size_t>(w)] =
            lower_median(buckets[static_cast<std::size_t>(w)]);
    }
    return b;
}

KMeansResult kmeans_1d(std::span<const double> values, int k, std::uint64_t seed, int restarts,
                       int max_iters, double tol)
{
    const std::size_t n = values.size();
    if (k < 1 || n < static_cast<std::size_t>(k))
        throw DataError("kmeans: k=" + std::to_string(k) + " with n=" + std::to_string(n));

    Rng rng(seed);
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < restarts; ++restart) {
        // k-means++ seeding.
        std::vector<double> centroids;
        centroids.push_back(values[rng.bounded(n)]);
        std::vector<double> dist2(n);
        while (static_cast<int>(centroids.size()) < k) {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double d = std::numeric_limits<double>::infinity();
                for (double c : centroids)
                    d = std::min(d, (values[i] - c) * (values[i] - c));
                dist2[i] = d;
                total += d;
            }
            if (total <= 0.0) {
                centroids.push_back(values[rng.bounded(n)]);
                continue;
            }
            const double t = rng.next_double() * total;
            double acc = 0.0;
            std::size_t pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += dist2[i];
                if (acc >= t) {
                    pick = i;
                    break;
                }
            }
            centroids.push_back(values[pick]);
        }

        std::vector<int> assignment(n, 0);
        std::vector<double> history;
        for (int iter = 0; iter < max_iters; ++iter) {
            double inertia = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                assignment[i] = nearest_centroid(values[i], centroids);
                const double d = values[i] - centroids[static_cast<std::size_t>(assignment[i])];
                inertia += d * d;
            }
            history.push_back(inertia);

            std::vector<double> sums(static_cast<std::size_t>(k), 0.0);
            std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
            for (std::size_t i = 0; i < n; ++i) {
                sums[static_cast<std::size_t>(assignment[i])] += values[i];
                ++sizes[static_cast<std::size_t>(assignment[i])];
            }

            double shift = 0.0;
            for (int c = 0; c < k; ++c) {
                const auto uc = static_cast<std::size_t>(c);
                if (sizes[uc] == 0) {
                    // Re-seed an empty cluster at the point farthest from
                    // its centroid.
                    std::size_t far_i = 0;
                    double far_d = -1.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        const double d =
                            std::abs(values[i] - centroids[static_cast<std::size_t>(assignment[i])]);
                        if (d > far_d) {
                            far_d = d;
                            far_i = i;
                        }
                    }
                    shift += std::abs(centroids[uc] - values[far_i]);
                    centroids[uc] = values[far_i];
                    continue;
                }
                const double next = sums[uc] / static_cast<double>(sizes[uc]);
                shift += std::abs(next - centroids[uc]);
                centroids[uc] = next;
            }
            if (shift <= tol)
                break;
        }

        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            assignment[i] = nearest_centroid(values[i], centroids);
            const double d = values[i] - centroids[static_cast<std::size_t>(assignment[i])];
            inertia += d * d;
        }
        history.push_back(inertia);

        if (inertia < best.inertia) {
            best.centroids = centroids;
            best.assignment = assignment;
            best.inertia = inertia;
            best.inertia_history = history;
        }
    }
    return best;
}

double silhouette_1d(std::span<const double> values, std::span<const int> assignment, int k)
{
    const std::size_t n = values.size();
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
    for (int a : assignment)
        ++sizes[static_cast<std::size_t>(a)];
    int non_empty = 0;
    for (std::int64_t s : sizes)
        if (s > 0)
            ++non_empty;
    if (non_empty < 2)
        throw SingleCluster();

    double total = 0.0;
    std::vector<double> sum_to(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(sum_to.begin(), sum_to.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            sum_to[static_cast<std::size_t>(assignment[j])] += std::abs(values[i] - values[j]);

        const auto own = static_cast<std::size_t>(assignment[i]);
        if (sizes[own] <= 1)
            continue; // singleton contributes 0

        const double a = sum_to[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < sum_to.size(); ++c) {
            if (c == own || sizes[c] == 0)
                continue;
            b = std::min(b, sum_to[c] / static_cast<double>(sizes[c]));
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

Baseline cluster_baseline(std::span<const double> window_values, int k_min, int k_max,
                          std::uint64_t seed)
{
    if (window_values.size() < 8)
        throw TooFewPoints(window_values.size());

    const std::set<double> distinct(window_values.begin(), window_values.end());

    Baseline b;
    b.method = Baseline::Method::Cluster;

    if (distinct.size() < 2) {
        b.centroids = {window_values.front()};
        b.degenerate = true;
        b.selected_k = 1;
        return b;
    }

    double best_score = -std::numeric_limits<double>::infinity();
    KMeansResult best_model;
    int best_k = 0;
    for (int k = k_min; k <= k_max; ++k) {
        if (static_cast<std::size_t>(k) > distinct.size())
            break;
        KMeansResult model = kmeans_1d(window_values, k, seed);
        const double score = silhouette_1d(window_values, model.assignment, k);
        if (score > best_score) {
            best_score = score;
            best_model = std::move(model);
            best_k = k;
        }
    }
    if (best_k == 0)
        throw DataError("cluster baseline: no fittable k in range");

    b.centroids = best_model.centroids;
    std::sort(b.centroids.begin(), b.centroids.end());
    b.selected_k = best_k;
    return b;
}

Baseline cluster_baseline_for(const Series& series, Date window_end, int weeks, int k_min,
                              int k_max, std::uint64_t seed)
{
    const Date window_start = window_end - weeks * 7;
    std::vector<double> values;
    for (const auto& p : series)
        if (p.date >= window_start && p.date < window_end)
            values.push_back(p.value);
    Baseline b = cluster_baseline(values, k_min, k_max, seed);
    b.window_start = window_start;
    b.window_end = window_end;
    return b;
}

PercentSeries percent(const Series& series, const Baseline& baseline)
{
    PercentSeries out;
    out.points.reserve(series.size());
    for (const auto& p : series) {
        double b;
        if (baseline.method == Baseline::Method::Weekday) {
            b = baseline.weekday_medians[static_cast<std::size_t>(p.date.weekday())];
        } else {
            if (baseline.centroids.empty())
                throw ZeroBaseline();
            b = baseline.centroids[static_cast<std::size_t>(
                nearest_centroid(p.value, baseline.centroids))];
        }
        if (b == 0.0)
            throw ZeroBaseline();
        out.points.push_back({p.date, 100.0 * (p.value - b) / b});
    }
    return out;
}

Series moving_average(const Series& series, int window)
{
    if (window < 1)
        throw DataError("moving average window must be >= 1");
    Series out;
    out.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::size_t lo = i + 1 >= static_cast<std::size_t>(window)
                                   ? i + 1 - static_cast<std::size_t>(window)
                                   : 0;
        double sum = 0.0;
        for (std::size_t j = lo; j <= i; ++j)
            sum += series[j].value;
        out.push_back({series[i].date, sum / static_cast<double>(i - lo + 1)});
    }
    return out;
}

double pearson(const Series& a, const Series& b)
{
    std::vector<double> xs, ys;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].date < b[j].date) {
            ++i;
        } else if (b[j].date < a[i].date) {
            ++j;
        } else {
            xs.push_back(a[i].value);
            ys.push_back(b[j].value);
            ++i;
            ++j;
        }
    }
    if (xs.size() < 2)
        throw LengthMismatch(xs.size());

    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
        mx += xs[t];
        my += ys[t];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
        const double dx = xs[t] - mx;
        const double dy = ys[t] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw ConstantSeries();
    return sxy / std::sqrt(sxx * syy);
}

Heatmap weekly_heatmap(const PercentTable& table, std::size_t top_n)
{
    // Rank countries by total travels, descending; ties alphabetical.
    std::vector<std::pair<std::string, double>> totals;
    for (const auto& [country, points] : table) {
        double total = 0.0;
        for (const auto& p : points)
            total += p.value;
        totals.emplace_back(country, total);
    }
    std::sort(totals.begin(), totals.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    if (totals.size() > top_n)
        totals.resize(top_n);

    Heatmap h;
    for (const auto& [country, total] : totals)
        h.countries.push_back(country);

    std::set<std::pair<int, int>> weeks;
    for (const auto& country : h.countries)
        for (const auto& p : table.at(country))
            weeks.insert({p.date.iso_week().year, p.date.iso_week().week});

    std::map<std::pair<int, int>, std::size_t> week_index;
    for (const auto& [year, week] : weeks) {
        week_index[{year, week}] = h.week_labels.size();
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-W%02d", year, week);
        h.week_labels.emplace_back(buf);
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    h.cells.assign(h.week_labels.size(), std::vector<double>(h.countries.size(), nan));
    std::vector<std::vector<std::pair<double, int>>> acc(
        h.week_labels.size(), std::vector<std::pair<double, int>>(h.countries.size(), {0.0, 0}));

    for (std::size_t c = 0; c < h.countries.size(); ++c) {
        for (const auto& p : table.at(h.countries[c])) {
            const auto w = week_index.at({p.date.iso_week().year, p.date.iso_week().week});
            acc[w][c].first += p.percent;
            acc[w][c].second += 1;
        }
    }
    for (std::size_t w = 0; w < acc.size(); ++w)
        for (std::size_t c = 0; c < acc[w].size(); ++c)
            if (acc[w][c].second > 0)
                h.cells[w][c] = acc[w][c].first / acc[w][c].second;
    return h;
}

std::string heatmap_csv_text(const Heatmap& h)
{
    std::string out = "week";
    for (const auto& country : h.countries) {
        out += ',';
        out += country;
    }
    out += '\n';
    for (std::size_t w = 0; w < h.week_labels.size(); ++w) {
        out += h.week_labels[w];
        for (std::size_t c = 0; c < h.countries.size(); ++c) {
            out += ',';
            if (!std::isnan(h.cells[w][c]))
                out += format_double(h.cells[w][c]);
        }
        out += '\n';
    }
    return out;
}

} // namespace geolex
