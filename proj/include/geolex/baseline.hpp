#pragma once

#include "geolex/series.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace geolex {

// Reference mobility level: either one median per weekday or the centroids
// of a k-means model with silhouette-selected k.
struct Baseline {
    enum class Method { Weekday, Cluster };

    Method method = Method::Weekday;
    std::array<double, 7> weekday_medians{}; // Monday first
    std::vector<double> centroids;           // ascending
    Date window_start;
    Date window_end; // exclusive
    bool degenerate = false;
    int selected_k = 0;
};

// Lower median (no interpolation) of each weekday over the `weeks` weeks
// before window_end. Missing days are tolerated as long as every weekday
// keeps at least one sample.
Baseline weekday_baseline(const Series& series, Date window_end, int weeks = 13);

struct KMeansResult {
    std::vector<double> centroids;
    std::vector<int> assignment;
    double inertia = 0.0;
    std::vector<double> inertia_history; // after each Lloyd assignment step
};

// 1-D k-means: k-means++ init, Lloyd iterations to convergence, best of
// `restarts` seeded runs by inertia.
KMeansResult kmeans_1d(std::span<const double> values, int k, std::uint64_t seed,
                       int restarts = 10, int max_iters = 100, double tol = 1e-9);

// Mean silhouette with |a-b| distances; singletons score 0 and a 0/0
// cohesion-separation pair scores 0.
double silhouette_1d(std::span<const double> values, std::span<const int> assignment, int k);

// Fits k-means for every k in [k_min, k_max] and keeps the k with the best
// mean silhouette (smallest k wins ties). Identical values degrade to a
// single-centroid baseline flagged degenerate.
Baseline cluster_baseline(std::span<const double> window_values, int k_min = 2, int k_max = 7,
                          std::uint64_t seed = 42);

Baseline cluster_baseline_for(const Series& series, Date window_end, int weeks = 13,
                              int k_min = 2, int k_max = 7, std::uint64_t seed = 42);

// 100 * (v - b) / b with b the weekday median or the closest centroid.
struct PercentSeries {
    Series points; // value = signed percent
};

PercentSeries percent(const Series& series, const Baseline& baseline);

// Trailing mean over up to `window` points including the current one
// (min_periods = 1: the first element is itself).
Series moving_average(const Series& series, int window = 7);

// Sample Pearson correlation after an inner join on dates.
double pearson(const Series& a, const Series& b);

struct Heatmap {
    std::vector<std::string> week_labels; // "2020-W12"
    std::vector<std::string> countries;   // ordered by total travels, descending
    std::vector<std::vector<double>> cells; // [week][country], NaN when absent
};

// Mean percent per ISO week per country, top `top_n` countries by total
// travels.
Heatmap weekly_heatmap(const PercentTable& table, std::size_t top_n);

std::string heatmap_csv_text(const Heatmap& h);

} // namespace geolex
