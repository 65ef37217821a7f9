#include "geolex/vocabulary.hpp"

#include "geolex/errors.hpp"
#include "geolex/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace geolex {

namespace {

struct TokenHash {
    std::size_t operator()(const Token& t) const
    {
        std::size_t h = std::hash<std::string>{}(t.surface);
        h ^= (static_cast<std::size_t>(t.kind) * 131 + t.q) + 0x9e3779b97f4a7c15ULL + (h << 6)
             + (h >> 2);
        return h;
    }
};

std::string encode_token(const Token& t)
{
    if (t.kind == TokenKind::QGram)
        return "q" + std::to_string(t.q) + ":" + t.surface;
    return t.surface;
}

Token decode_token(const std::string& s)
{
    if (s.size() >= 3 && s[0] == 'q' && s[2] == ':' && s[1] >= '2' && s[1] <= '4')
        return Token::qgram(static_cast<std::uint8_t>(s[1] - '0'), s.substr(3));
    if (s.find('~') != std::string::npos)
        return Token::bigram(s);
    return Token::word(s);
}

} // namespace

std::int64_t retention_threshold(std::int64_t day_lang_messages)
{
    if (day_lang_messages <= 0)
        return 1;
    return std::max<std::int64_t>(1, (day_lang_messages + 9'999) / 10'000);
}

std::set<Token> Vocabulary::token_set() const
{
    std::set<Token> out;
    for (const auto& [token, count] : counts)
        out.insert(token);
    return out;
}

Vocabulary build_day(std::span<const MessageRecord> partition, const VocabScope& scope,
                     const TokenizerConfig& config, std::int64_t day_lang_messages)
{
    Vocabulary voc;
    voc.scope = scope;
    voc.num_messages = static_cast<std::int64_t>(partition.size());
    if (partition.empty())
        return voc;

    std::unordered_map<Token, std::int64_t, TokenHash> acc;
    for (const auto& rec : partition)
        for (auto& [token, count] : tokenize(rec.text, config))
            acc[token] += count;

    const std::int64_t threshold = retention_threshold(day_lang_messages);
    for (auto& [token, count] : acc)
        if (count >= threshold)
            voc.counts.emplace(token, count);
    return voc;
}

Vocabulary merge(std::span<const Vocabulary> vocabs)
{
    Vocabulary out;
    if (vocabs.empty())
        return out;
    out.scope.lang = vocabs.front().scope.lang;
    out.scope.country = vocabs.front().scope.country;
    for (const auto& v : vocabs) {
        if (v.scope.lang != out.scope.lang || v.scope.country != out.scope.country)
            throw ScopeMismatch("cannot merge (" + v.scope.lang + "," + v.scope.country
                                + ") into (" + out.scope.lang + "," + out.scope.country + ")");
        out.scope.dates.insert(v.scope.dates.begin(), v.scope.dates.end());
        out.num_messages += v.num_messages;
        for (const auto& [token, count] : v.counts)
            out.counts[token] += count;
    }
    return out;
}

Vocabulary build_over_dates(const Store& store, const std::vector<Date>& dates,
                            const std::string& lang, const std::string& country,
                            const TokenizerConfig& config)
{
    std::vector<Vocabulary> per_day;
    per_day.reserve(dates.size());
    for (Date d : dates) {
        const auto records = store.read(lang, d, country);
        per_day.push_back(
            build_day(records, {{d}, lang, country}, config, store.message_count(lang, d)));
    }
    return merge(per_day);
}

Vocabulary remove_qgrams(const Vocabulary& v)
{
    Vocabulary out;
    out.scope = v.scope;
    out.num_messages = v.num_messages;
    for (const auto& [token, count] : v.counts)
        if (token.kind != TokenKind::QGram)
            out.counts.emplace(token, count);
    return out;
}

Vocabulary remove_emojis(const Vocabulary& v)
{
    Vocabulary out;
    out.scope = v.scope;
    out.num_messages = v.num_messages;
    for (const auto& [token, count] : v.counts)
        if (!is_emoji(token))
            out.counts.emplace(token, count);
    return out;
}

Vocabulary remove(const Vocabulary& v, const std::set<Token>& tokens)
{
    Vocabulary out;
    out.scope = v.scope;
    out.num_messages = v.num_messages;
    for (const auto& [token, count] : v.counts)
        if (!tokens.contains(token))
            out.counts.emplace(token, count);
    return out;
}

CommonWordsResult common_words(std::span<const std::string> corpus, std::int64_t sample_size,
                               double rate, std::uint64_t seed, const TokenizerConfig& config)
{
    if (sample_size < 1)
        throw std::invalid_argument("common_words sample size must be >= 1");

    CommonWordsResult result;
    const auto n = static_cast<std::int64_t>(corpus.size());

    std::vector<std::size_t> picks;
    if (n <= sample_size) {
        result.fell_back = n < sample_size;
        picks.resize(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < picks.size(); ++i)
            picks[i] = i;
    } else {
        // Partial Fisher-Yates over an index vector, seeded.
        Rng rng(seed);
        std::vector<std::size_t> idx(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        for (std::int64_t i = 0; i < sample_size; ++i) {
            const auto j = i + static_cast<std::int64_t>(
                                   rng.bounded(static_cast<std::uint64_t>(n - i)));
            std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        }
        picks.assign(idx.begin(), idx.begin() + sample_size);
    }
    result.sampled = static_cast<std::int64_t>(picks.size());

    std::unordered_map<Token, std::int64_t, TokenHash> doc_freq;
    for (std::size_t i : picks)
        for (const auto& [token, count] : tokenize(corpus[i], config))
            doc_freq[token] += 1; // presence per message, not multiplicity

    // Epsilon guards the threshold against binary representation of `rate`.
    const double threshold = rate * static_cast<double>(result.sampled);
    for (const auto& [token, df] : doc_freq)
        if (static_cast<double>(df) + 1e-9 >= threshold)
            result.tokens.insert(token);
    return result;
}

DayWordsResult day_words(const Store& store, Date date, const std::string& lang,
                         const std::string& country, const TokenizerConfig& config,
                         int years_back)
{
    DayWordsResult result;
    const int month = date.month();
    const int day = date.day();

    // Walk back year by year; stop after years_back hits or, when 0, at the
    // oldest year present in the store for this lang.
    int oldest_year = date.year();
    const auto all_dates = store.dates(lang);
    if (!all_dates.empty())
        oldest_year = all_dates.front().year();

    for (int year = date.year() - 1; year >= oldest_year; --year) {
        if (years_back > 0 && date.year() - year > years_back)
            break;
        if (!is_valid_ymd(year, month, day))
            continue; // Feb 29 in a non-leap year
        const Date prior(year, month, day);
        if (!store.has_partition(lang, prior, country))
            continue;
        auto records = store.read(lang, prior, country);
        VocabScope scope{{prior}, lang, country};
        Vocabulary voc = build_day(records, scope, config, store.message_count(lang, prior));
        for (const auto& [token, count] : voc.counts)
            result.tokens.insert(token);
        ++result.years_used;
    }
    return result;
}

double jaccard(const Vocabulary& a, const Vocabulary& b)
{
    if (a.counts.empty() && b.counts.empty())
        throw BothEmpty();

    // Both maps are ordered by token, so intersection is a linear walk.
    std::int64_t inter = 0;
    auto it_a = a.counts.begin();
    auto it_b = b.counts.begin();
    while (it_a != a.counts.end() && it_b != b.counts.end()) {
        if (it_a->first < it_b->first) {
            ++it_a;
        } else if (it_b->first < it_a->first) {
            ++it_b;
        } else {
            ++inter;
            ++it_a;
            ++it_b;
        }
    }
    const auto uni = static_cast<std::int64_t>(a.counts.size() + b.counts.size()) - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

SimilarityMatrix similarity_matrix(std::span<const Vocabulary> vocabs)
{
    if (vocabs.size() < 2)
        throw std::invalid_argument("similarity_matrix needs at least 2 vocabularies");

    SimilarityMatrix m;
    const std::size_t n = vocabs.size();
    m.labels.reserve(n);
    for (const auto& v : vocabs)
        m.labels.push_back(v.scope.country);
    m.values.assign(n * n, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double score;
            try {
                score = jaccard(vocabs[i], vocabs[j]);
            } catch (const BothEmpty&) {
                throw MatrixEntryError(m.labels[i], m.labels[j]);
            }
            m.values[i * n + j] = score;
            m.values[j * n + i] = score;
        }
    }
    return m;
}

std::string Vocabulary::to_json_text() const
{
    nlohmann::json doc;
    auto& scope_doc = doc["scope"];
    scope_doc["lang"] = scope.lang;
    scope_doc["country"] = scope.country;
    auto& dates_doc = scope_doc["dates"] = nlohmann::json::array();
    for (Date d : scope.dates)
        dates_doc.push_back(d.to_string());
    doc["num_messages"] = num_messages;
    auto& counts_doc = doc["counts"] = nlohmann::json::object();
    for (const auto& [token, count] : counts)
        counts_doc[encode_token(token)] = count;
    return doc.dump();
}

Vocabulary Vocabulary::from_json_text(std::string_view text)
{
    nlohmann::json doc = nlohmann::json::parse(text);
    Vocabulary v;
    v.scope.lang = doc.at("scope").at("lang").get<std::string>();
    v.scope.country = doc.at("scope").at("country").get<std::string>();
    for (const auto& d : doc.at("scope").at("dates")) {
        auto parsed = Date::parse(d.get<std::string>());
        if (!parsed)
            throw DataError("bad date in vocabulary scope: " + d.get<std::string>());
        v.scope.dates.insert(*parsed);
    }
    v.num_messages = doc.at("num_messages").get<std::int64_t>();
    for (const auto& [key, value] : doc.at("counts").items())
        v.counts.emplace(decode_token(key), value.get<std::int64_t>());
    return v;
}

} // namespace geolex
