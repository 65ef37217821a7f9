#include "geolex/baseline.hpp"
#include "geolex/errors.hpp"
#include "geolex/io_util.hpp"
#include "geolex/mobility.hpp"
#include "geolex/pca.hpp"
#include "geolex/rng.hpp"
#include "geolex/series.hpp"
#include "geolex/store.hpp"
#include "geolex/synth.hpp"
#include "geolex/vocabulary.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace {

using namespace geolex;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitIo = 4;

geolex::Date parse_date_flag(const std::string& text)
{
    auto d = Date::parse(text);
    if (!d)
        throw DataError("bad date: " + text + " (expected YYYY-MM-DD)");
    return *d;
}

// "<date>" or "<from>..<to>" (inclusive).
std::vector<Date> parse_date_range(const std::string& text)
{
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        return {parse_date_flag(text)};
    const Date from = parse_date_flag(text.substr(0, sep));
    const Date to = parse_date_flag(text.substr(sep + 2));
    if (to < from)
        throw DataError("empty date range: " + text);
    std::vector<Date> out;
    for (Date d = from; d <= to; d = d + 1)
        out.push_back(d);
    return out;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

void write_output(const std::string& path, const std::string& content)
{
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    atomic_write_file(path, content);
}

void log_config(const std::string& line)
{
    std::cerr << "config: " << line << "\n";
}

// Dates selected by a --date flag: single date, inclusive range or a seeded
// sample of the store's available dates ("sample:N:seed").
std::vector<Date> resolve_dates(const std::string& expr, const Store& store,
                                const std::string& lang)
{
    if (expr.rfind("sample:", 0) == 0) {
        const auto rest = expr.substr(7);
        const auto sep = rest.find(':');
        if (sep == std::string::npos)
            throw DataError("bad sample expression: " + expr + " (expected sample:N:seed)");
        const int n = std::stoi(rest.substr(0, sep));
        const auto seed = static_cast<std::uint64_t>(std::stoull(rest.substr(sep + 1)));
        auto available = store.dates(lang);
        if (available.empty())
            throw DataError("store has no dates for lang " + lang);
        if (static_cast<std::size_t>(n) >= available.size())
            return available;
        Rng rng(seed);
        for (int i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(i)
                           + rng.bounded(available.size() - static_cast<std::size_t>(i));
            std::swap(available[static_cast<std::size_t>(i)], available[j]);
        }
        available.resize(static_cast<std::size_t>(n));
        std::sort(available.begin(), available.end());
        return available;
    }
    return parse_date_range(expr);
}

// Deterministic parallel map: results land in input order regardless of
// scheduling.
template <typename Item, typename Fn>
void parallel_for(const std::vector<Item>& items, int jobs, Fn fn)
{
    if (jobs < 1)
        jobs = 1;
    if (jobs == 1 || items.size() <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i)
            fn(i, items[i]);
        return;
    }
    std::mutex mu;
    std::size_t next = 0;
    std::exception_ptr error;
    auto worker = [&] {
        while (true) {
            std::size_t i;
            {
                std::lock_guard lock(mu);
                if (next >= items.size() || error)
                    return;
                i = next++;
            }
            try {
                fn(i, items[i]);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error)
                    error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(jobs, static_cast<int>(items.size()));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

int default_jobs()
{
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

TokenizerConfig load_tokenizer_config(const std::string& path)
{
    if (path.empty())
        return {};
    return TokenizerConfig::from_json_text(read_file(path));
}

// ---- subcommand bodies ----

int run_ingest(const std::string& input, const std::string& store_dir)
{
    log_config("subcommand=ingest input=" + input + " store=" + store_dir);
    Store store{store_dir};

    std::int64_t reported = 0;
    auto on_error = [&reported](std::size_t line_no, const ParseError& e) {
        if (++reported <= 20)
            std::cerr << "skip line " << line_no << ": " << e.to_string() << "\n";
        else if (reported == 21)
            std::cerr << "(further skipped lines suppressed)\n";
    };

    Store::IngestSummary summary;
    if (input == "-") {
        summary = store.ingest(std::cin, on_error);
    } else {
        std::ifstream in(input, std::ios::binary);
        if (!in)
            throw IoError("cannot open input " + input);
        summary = store.ingest(in, on_error);
    }
    std::cerr << "ingested=" << summary.ingested << " rejected=" << summary.rejected << "\n";
    return 0;
}

int run_vocab(const std::string& store_dir, const std::string& date_spec,
              const std::string& lang, const std::string& country, bool drop_qgrams,
              bool drop_emojis, bool drop_common, bool drop_prior_years,
              std::int64_t common_sample, double common_rate, std::uint64_t seed,
              const std::string& tokenizer_config, int years_back, int jobs,
              const std::string& out)
{
    log_config("subcommand=vocab store=" + store_dir + " date=" + date_spec + " lang=" + lang
               + " country=" + country + " seed=" + std::to_string(seed)
               + " jobs=" + std::to_string(jobs));
    Store store{store_dir};
    const TokenizerConfig config = load_tokenizer_config(tokenizer_config);
    const std::vector<Date> dates = resolve_dates(date_spec, store, lang);

    // Day partitions build independently; the merge order is fixed by the
    // slot index, so the result does not depend on scheduling.
    std::vector<Vocabulary> per_day(dates.size());
    parallel_for(dates, jobs, [&](std::size_t i, Date d) {
        const auto records = store.read(lang, d, country);
        per_day[i] =
            build_day(records, {{d}, lang, country}, config, store.message_count(lang, d));
    });
    Vocabulary voc = merge(per_day);

    if (drop_qgrams)
        voc = remove_qgrams(voc);
    if (drop_emojis)
        voc = remove_emojis(voc);
    if (drop_common) {
        std::vector<std::string> corpus;
        for (Date d : store.dates(lang))
            for (const auto& rec : store.read(lang, d, kAnyCountry))
                corpus.push_back(rec.text);
        auto result = common_words(corpus, common_sample, common_rate, seed, config);
        if (result.fell_back)
            std::cerr << "warning: corpus smaller than requested sample, used all "
                      << result.sampled << " messages\n";
        voc = remove(voc, result.tokens);
    }
    if (drop_prior_years) {
        if (dates.size() != 1)
            throw DataError("--drop-prior-years needs a single --date");
        auto result = day_words(store, dates.front(), lang, country, config, years_back);
        if (result.years_used == 0)
            std::cerr << "warning: no prior years in store; nothing removed\n";
        voc = remove(voc, result.tokens);
    }

    write_output(out, voc.to_json_text() + "\n");
    return 0;
}

int run_similarity(const std::string& store_dir, const std::string& lang,
                   const std::string& countries_flag, const std::string& from,
                   const std::string& to, int sample_days, std::uint64_t seed, int jobs,
                   const std::string& out, std::string matrix_out)
{
    log_config("subcommand=similarity store=" + store_dir + " lang=" + lang + " countries="
               + countries_flag + " sample_days=" + std::to_string(sample_days)
               + " seed=" + std::to_string(seed));
    Store store{store_dir};
    const std::vector<std::string> countries = split_list(countries_flag);
    if (countries.size() < 2)
        throw DataError("similarity needs at least 2 countries");

    std::vector<Date> available = store.dates(lang);
    if (!from.empty()) {
        const Date lo = parse_date_flag(from);
        std::erase_if(available, [&](Date d) { return d < lo; });
    }
    if (!to.empty()) {
        const Date hi = parse_date_flag(to);
        std::erase_if(available, [&](Date d) { return d > hi; });
    }
    if (available.empty())
        throw DataError("no store dates for lang " + lang + " in the requested window");

    std::vector<Date> dates = available;
    if (static_cast<std::size_t>(sample_days) < available.size()) {
        Rng rng(seed);
        for (int i = 0; i < sample_days; ++i) {
            const auto j = static_cast<std::size_t>(i)
                           + rng.bounded(available.size() - static_cast<std::size_t>(i));
            std::swap(available[static_cast<std::size_t>(i)], available[j]);
        }
        dates.assign(available.begin(), available.begin() + sample_days);
        std::sort(dates.begin(), dates.end());
    }

    std::vector<Vocabulary> vocabs(countries.size());
    parallel_for(countries, jobs, [&](std::size_t i, const std::string& country) {
        TokenizerConfig config; // words + bigrams + q-grams; q-grams dropped below
        Vocabulary v = build_over_dates(store, dates, lang, country, config);
        vocabs[i] = remove_emojis(remove_qgrams(v));
    });

    const SimilarityMatrix matrix = similarity_matrix(vocabs);
    const PcaResult pca = pca_project(to_matrix(matrix), 2);
    if (pca.degenerate)
        std::cerr << "warning: similarity matrix has rank < 2; second component is degenerate\n";

    std::string coords = "country,x,y\n";
    for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
        coords += matrix.labels[i];
        coords += ',';
        coords += format_double(pca.coords.at(i, 0));
        coords += ',';
        coords += format_double(pca.coords.at(i, 1));
        coords += '\n';
    }
    write_output(out, coords);

    if (matrix_out.empty() && out != "-") {
        matrix_out = out;
        const auto dot = matrix_out.rfind('.');
        matrix_out = (dot == std::string::npos ? matrix_out : matrix_out.substr(0, dot))
                     + "_matrix.csv";
    }
    if (!matrix_out.empty()) {
        std::string mtext = "country";
        for (const auto& label : matrix.labels) {
            mtext += ',';
            mtext += label;
        }
        mtext += '\n';
        for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
            mtext += matrix.labels[i];
            for (std::size_t j = 0; j < matrix.labels.size(); ++j) {
                mtext += ',';
                mtext += format_double(matrix.at(i, j));
            }
            mtext += '\n';
        }
        write_output(matrix_out, mtext);
    }
    return 0;
}

int run_build_landmarks(const std::string& store_dir, const std::string& langs_flag,
                        const std::string& out)
{
    log_config("subcommand=mobility.build-landmarks store=" + store_dir + " out=" + out);
    Store store{store_dir};
    const LandmarkSet set = build_landmarks(store, split_list(langs_flag));
    write_landmarks_bin(set, out);

    std::filesystem::path csv = out;
    csv.replace_extension(".csv");
    write_landmarks_csv(set, csv);
    std::cerr << "landmarks=" << set.size() << "\n";
    return 0;
}

int run_trips(const std::string& store_dir, const std::string& landmarks_path,
              const std::string& dates_spec, int jobs, const std::string& langs_flag,
              const std::string& out_dir)
{
    log_config("subcommand=mobility.trips store=" + store_dir + " landmarks=" + landmarks_path
               + " dates=" + dates_spec + " jobs=" + std::to_string(jobs));
    Store store{store_dir};
    const LandmarkSet set = read_landmarks_bin(landmarks_path);
    const std::vector<Date> dates = parse_date_range(dates_spec);
    const std::vector<std::string> langs = split_list(langs_flag);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create " + out_dir + ": " + ec.message());

    parallel_for(dates, jobs, [&](std::size_t, Date date) {
        const ODMatrix od = day_od(store, date, set, langs);
        write_od_csv(od, std::filesystem::path(out_dir) / (date.to_string() + ".csv"));
    });
    return 0;
}

int run_series(const std::string& od_dir, const std::string& landmarks_path,
               const std::string& countries_flag, const std::string& measure_name,
               const std::string& format, const std::string& out)
{
    log_config("subcommand=mobility.series od=" + od_dir + " measure=" + measure_name);
    if (format != "csv")
        throw DataError("unsupported format: " + format);
    const LandmarkSet set = read_landmarks_bin(landmarks_path);

    std::vector<ODMatrix> ods;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(od_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        auto day = Date::parse(file.stem().string());
        if (!day)
            continue;
        ods.push_back(read_od_csv(file, *day));
    }
    if (ods.empty())
        throw DataError("no od files in " + od_dir);

    CountryValues values = measure_series(country_series(ods, set), parse_measure(measure_name));

    // Requested countries appear on every date, zero-filled; otherwise only
    // countries with any trips show up.
    const std::vector<std::string> wanted = split_list(countries_flag);
    if (!wanted.empty()) {
        CountryValues filtered;
        for (const auto& country : wanted) {
            Series s;
            const auto it = values.find(country);
            for (const auto& od : ods) {
                double v = 0.0;
                if (it != values.end())
                    for (const auto& p : it->second)
                        if (p.date == od.day)
                            v = p.value;
                s.push_back({od.day, v});
            }
            filtered[country] = std::move(s);
        }
        values = std::move(filtered);
    }
    write_output(out, series_csv_text(values));
    return 0;
}

int run_baseline(const std::string& series_path, const std::string& method, int weeks, int k_min,
                 int k_max, std::uint64_t seed, const std::string& start_flag,
                 const std::string& out)
{
    log_config("subcommand=baseline series=" + series_path + " method=" + method
               + " weeks=" + std::to_string(weeks) + " seed=" + std::to_string(seed)
               + " start=" + start_flag);
    if (method != "weekday" && method != "kmeans")
        throw DataError("unknown baseline method: " + method + " (expected weekday|kmeans)");
    const Date start = parse_date_flag(start_flag);
    const CountryValues all = read_series_csv(series_path);

    PercentTable table;
    for (const auto& [country, series] : all) {
        const Baseline baseline =
            method == "weekday"
                ? weekday_baseline(series, start, weeks)
                : cluster_baseline_for(series, start, weeks, k_min, k_max, seed);
        Series analyzed;
        for (const auto& p : series)
            if (p.date >= start)
                analyzed.push_back(p);
        const PercentSeries pct = percent(analyzed, baseline);
        auto& rows = table[country];
        for (std::size_t i = 0; i < analyzed.size(); ++i)
            rows.push_back({analyzed[i].date, analyzed[i].value, pct.points[i].value});
    }
    write_output(out, percent_csv_text(table));
    return 0;
}

int run_compare(const std::string& ours_path, const std::string& ref_path,
                const std::string& out)
{
    log_config("subcommand=compare ours=" + ours_path + " ref=" + ref_path);
    const PercentTable ours = read_percent_csv(ours_path);
    const CountryValues ref = read_external_csv(ref_path);

    std::string text = "country,pearson,median_travels\n";
    for (const auto& [country, rows] : ours) {
        const auto it = ref.find(country);
        if (it == ref.end())
            continue;
        Series our_pct;
        std::vector<double> travels;
        for (const auto& p : rows) {
            our_pct.push_back({p.date, p.percent});
            travels.push_back(p.value);
        }
        const double r = pearson(moving_average(our_pct, 7), moving_average(it->second, 7));
        std::sort(travels.begin(), travels.end());
        const double median = travels[(travels.size() - 1) / 2];
        text += country;
        text += ',';
        text += format_double(r);
        text += ',';
        text += format_double(median);
        text += '\n';
    }
    write_output(out, text);
    return 0;
}

int run_heatmap(const std::string& percent_dir, int top, const std::string& out)
{
    log_config("subcommand=heatmap percent=" + percent_dir + " top=" + std::to_string(top));
    PercentTable merged;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(percent_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw DataError("no percent files in " + percent_dir);
    for (const auto& file : files)
        for (auto& [country, rows] : read_percent_csv(file)) {
            auto& dst = merged[country];
            dst.insert(dst.end(), rows.begin(), rows.end());
        }
    for (auto& [country, rows] : merged)
        std::sort(rows.begin(), rows.end(),
                  [](const PercentPoint& a, const PercentPoint& b) { return a.date < b.date; });

    write_output(out, heatmap_csv_text(weekly_heatmap(merged, static_cast<std::size_t>(top))));
    return 0;
}

int run_synth(const std::string& profile, int users, int days, std::uint64_t seed,
              const std::string& start_flag, double drop, const std::string& at,
              const std::string& out)
{
    SynthConfig config;
    config.profile = profile;
    config.n_users = users;
    config.n_days = days;
    config.seed = seed;
    config.start = parse_date_flag(start_flag);
    config.drop_percent = drop;
    if (at.rfind("day", 0) == 0)
        config.drop_at_day = std::stoi(at.substr(3));
    else
        config.drop_at_day = parse_date_flag(at) - config.start;

    log_config("subcommand=synth profile=" + profile + " users=" + std::to_string(users)
               + " days=" + std::to_string(days) + " seed=" + std::to_string(seed)
               + " start=" + start_flag + " drop=" + format_double(drop)
               + " at=day" + std::to_string(config.drop_at_day));

    if (out == "-") {
        synth(config, [](const std::string& line) { std::cout << line << '\n'; });
        std::cout.flush();
    } else {
        std::string buffer;
        synth(config, [&](const std::string& line) {
            buffer += line;
            buffer += '\n';
        });
        atomic_write_file(out, buffer);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"geolex: per-day token vocabularies, landmark mobility and"
                 " percent-of-baseline analytics over tweet-shaped NDJSON streams"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Partition NDJSON records into a day store");
    std::string in_input, in_store;
    ingest->add_option("--input", in_input, "NDJSON file or - for stdin")->required();
    ingest->add_option("--store", in_store, "store directory")->required();

    // vocab
    auto* vocab = app.add_subcommand("vocab", "Build a token->count vocabulary");
    std::string v_store, v_date, v_lang, v_country = kAnyCountry, v_out = "-", v_tokcfg;
    bool v_drop_q = false, v_drop_e = false, v_drop_c = false, v_drop_p = false;
    std::int64_t v_common_sample = kDefaultCommonSampleSize;
    double v_common_rate = kDefaultCommonRate;
    std::uint64_t v_seed = 42;
    int v_years_back = 0;
    int v_jobs = default_jobs();
    vocab->add_option("--store", v_store)->required();
    vocab->add_option("--date", v_date, "date, from..to, or sample:N:seed")->required();
    vocab->add_option("--lang", v_lang)->required();
    vocab->add_option("--country", v_country, "ISO code or 'any'");
    vocab->add_flag("--drop-qgrams", v_drop_q, "remove q-gram tokens");
    vocab->add_flag("--drop-emojis", v_drop_e, "remove emoji tokens");
    vocab->add_flag("--drop-common", v_drop_c, "remove frequent tokens (sampled corpus)");
    vocab->add_flag("--drop-prior-years", v_drop_p,
                    "remove tokens seen on this month/day in previous years");
    vocab->add_option("--common-sample", v_common_sample, "messages to sample for --drop-common");
    vocab->add_option("--common-rate", v_common_rate, "document-frequency rate for --drop-common");
    vocab->add_option("--years-back", v_years_back, "limit --drop-prior-years (0 = all)");
    vocab->add_option("--seed", v_seed);
    vocab->add_option("--jobs", v_jobs);
    vocab->add_option("--tokenizer-config", v_tokcfg, "JSON tokenizer config file");
    vocab->add_option("--out", v_out)->required();

    // similarity
    auto* similarity = app.add_subcommand("similarity",
                                          "Jaccard matrix and 2-D projection across countries");
    std::string s_store, s_lang = "es", s_countries, s_from, s_to, s_out, s_matrix_out;
    int s_sample_days = 180, s_jobs = default_jobs();
    std::uint64_t s_seed = 42;
    similarity->add_option("--store", s_store)->required();
    similarity->add_option("--lang", s_lang);
    similarity->add_option("--countries", s_countries, "comma-separated ISO codes")->required();
    similarity->add_option("--from", s_from, "first candidate date");
    similarity->add_option("--to", s_to, "last candidate date");
    similarity->add_option("--sample-days", s_sample_days);
    similarity->add_option("--seed", s_seed);
    similarity->add_option("--jobs", s_jobs);
    similarity->add_option("--out", s_out, "coordinates CSV")->required();
    similarity->add_option("--matrix-out", s_matrix_out, "similarity matrix CSV");

    // mobility
    auto* mobility = app.add_subcommand("mobility", "Landmarks, trips and mobility series");
    mobility->require_subcommand(1);

    auto* lm = mobility->add_subcommand("build-landmarks",
                                        "Frequency-filtered bounding-box landmarks");
    std::string lm_store, lm_langs, lm_out;
    lm->add_option("--store", lm_store)->required();
    lm->add_option("--langs", lm_langs, "restrict to these langs (default: all)");
    lm->add_option("--out", lm_out, "landmarks.bin (a .csv mirror is written too)")->required();

    auto* trips = mobility->add_subcommand("trips", "Per-day origin-destination counts");
    std::string tr_store, tr_landmarks, tr_dates, tr_langs, tr_out;
    int tr_jobs = default_jobs();
    trips->add_option("--store", tr_store)->required();
    trips->add_option("--landmarks", tr_landmarks)->required();
    trips->add_option("--dates", tr_dates, "date or from..to")->required();
    trips->add_option("--langs", tr_langs);
    trips->add_option("--jobs", tr_jobs);
    trips->add_option("--out", tr_out, "output directory, one CSV per day")->required();

    auto* series = mobility->add_subcommand("series", "Country mobility series from OD files");
    std::string se_od, se_landmarks, se_countries, se_measure = "overall", se_format = "csv",
                se_out = "-";
    series->add_option("--od", se_od, "directory of per-day OD CSVs")->required();
    series->add_option("--landmarks", se_landmarks)->required();
    series->add_option("--countries", se_countries, "filter, comma-separated");
    series->add_option("--measure", se_measure, "inside|inward|outward|overall");
    series->add_option("--format", se_format);
    series->add_option("--out", se_out);

    // baseline
    auto* baseline = app.add_subcommand("baseline", "Percent-of-baseline series");
    std::string b_series, b_method = "weekday", b_start, b_out;
    int b_weeks = 13, b_kmin = 2, b_kmax = 7;
    std::uint64_t b_seed = 42;
    baseline->add_option("--series", b_series, "date,country,value CSV")->required();
    baseline->add_option("--method", b_method, "weekday|kmeans");
    baseline->add_option("--weeks", b_weeks, "baseline window length");
    baseline->add_option("--k-min", b_kmin);
    baseline->add_option("--k-max", b_kmax);
    baseline->add_option("--seed", b_seed);
    baseline->add_option("--start", b_start, "first analyzed date; window ends here")->required();
    baseline->add_option("--out", b_out)->required();

    // compare
    auto* compare = app.add_subcommand("compare",
                                       "Pearson correlation against an external percent series");
    std::string c_ours, c_ref, c_out;
    compare->add_option("--ours", c_ours, "percent CSV from the baseline step")->required();
    compare->add_option("--ref", c_ref, "external date,country,percent CSV")->required();
    compare->add_option("--out", c_out)->required();

    // heatmap
    auto* heatmap = app.add_subcommand("heatmap", "Weekly mean percent per country");
    std::string h_percent, h_out;
    int h_top = 30;
    heatmap->add_option("--percent", h_percent, "directory of percent CSVs")->required();
    heatmap->add_option("--top", h_top, "keep the top N countries by travels");
    heatmap->add_option("--out", h_out)->required();

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Deterministic synthetic NDJSON stream");
    std::string sy_profile = "commuters", sy_start = "2020-01-06", sy_at = "day40",
                sy_out = "-";
    int sy_users = 50, sy_days = 30;
    std::uint64_t sy_seed = 42;
    double sy_drop = 60.0;
    synth_cmd->add_option("--profile", sy_profile, "commuters|static|mixed-drop");
    synth_cmd->add_option("--users", sy_users);
    synth_cmd->add_option("--days", sy_days);
    synth_cmd->add_option("--seed", sy_seed);
    synth_cmd->add_option("--start", sy_start, "first generated date");
    synth_cmd->add_option("--drop", sy_drop, "mobility collapse percentage (mixed-drop)");
    synth_cmd->add_option("--at", sy_at, "collapse start: dayN or a date");
    synth_cmd->add_option("--out", sy_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: kind=usage message=\"" << e.what() << "\"\n";
        return kExitUsage;
    }

    try {
        if (*ingest)
            return run_ingest(in_input, in_store);
        if (*vocab)
            return run_vocab(v_store, v_date, v_lang, v_country, v_drop_q, v_drop_e, v_drop_c,
                             v_drop_p, v_common_sample, v_common_rate, v_seed, v_tokcfg,
                             v_years_back, v_jobs, v_out);
        if (*similarity)
            return run_similarity(s_store, s_lang, s_countries, s_from, s_to, s_sample_days,
                                  s_seed, s_jobs, s_out, s_matrix_out);
        if (*lm)
            return run_build_landmarks(lm_store, lm_langs, lm_out);
        if (*trips)
            return run_trips(tr_store, tr_landmarks, tr_dates, tr_jobs, tr_langs, tr_out);
        if (*series)
            return run_series(se_od, se_landmarks, se_countries, se_measure, se_format, se_out);
        if (*baseline)
            return run_baseline(b_series, b_method, b_weeks, b_kmin, b_kmax, b_seed, b_start,
                                b_out);
        if (*compare)
            return run_compare(c_ours, c_ref, c_out);
        if (*heatmap)
            return run_heatmap(h_percent, h_top, h_out);
        if (*synth_cmd)
            return run_synth(sy_profile, sy_users, sy_days, sy_seed, sy_start, sy_drop, sy_at,
                             sy_out);
    } catch (const IoError& e) {
        std::cerr << "error: kind=io message=\"" << e.what() << "\"\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: kind=io message=\"" << e.what() << "\"\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: kind=data message=\"" << e.what() << "\"\n";
        return kExitData;
    }
    return kExitUsage;
}
