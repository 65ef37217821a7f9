#pragma once

#include "geolex/date.hpp"
#include "geolex/record.hpp"
#include "geolex/store.hpp"
#include "geolex/textproc.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace geolex {

struct VocabScope {
    std::set<Date> dates;
    std::string lang;
    std::string country = kAnyCountry;
};

// Token -> count aggregate for one (date set, lang, country) scope.
struct Vocabulary {
    VocabScope scope;
    std::map<Token, std::int64_t> counts;
    std::int64_t num_messages = 0;

    std::set<Token> token_set() const;

    std::string to_json_text() const;
    static Vocabulary from_json_text(std::string_view text);
};

// Retention floor: a token survives a day when its count reaches 0.01% of
// that day's per-language message total, never less than one occurrence.
// Integer arithmetic; ceil(n / 10000).
std::int64_t retention_threshold(std::int64_t day_lang_messages);

// Tokenizes one partition and drops tokens below the retention threshold.
// The threshold denominator is the per-day per-language total, which for
// country partitions differs from the partition size.
Vocabulary build_day(std::span<const MessageRecord> partition, const VocabScope& scope,
                     const TokenizerConfig& config, std::int64_t day_lang_messages);

// Sums counts tokenwise, unions dates, sums message totals. Scopes must
// agree on lang and country; merge of nothing is the empty vocabulary.
Vocabulary merge(std::span<const Vocabulary> vocabs);

// build_day over each date's partition, merged. Missing partitions count
// as empty days.
Vocabulary build_over_dates(const Store& store, const std::vector<Date>& dates,
                            const std::string& lang, const std::string& country,
                            const TokenizerConfig& config);

Vocabulary remove_qgrams(const Vocabulary& v);
Vocabulary remove_emojis(const Vocabulary& v);
Vocabulary remove(const Vocabulary& v, const std::set<Token>& tokens);

struct CommonWordsResult {
    std::set<Token> tokens;
    std::int64_t sampled = 0;
    bool fell_back = false; // corpus smaller than the requested sample
};

// Tokens whose document frequency in a seeded uniform sample of messages
// reaches rate * sample size. Defaults follow the 5,000,000 / 0.1% rule.
CommonWordsResult common_words(std::span<const std::string> corpus, std::int64_t sample_size,
                               double rate, std::uint64_t seed,
                               const TokenizerConfig& config = {});

inline constexpr std::int64_t kDefaultCommonSampleSize = 5'000'000;
inline constexpr double kDefaultCommonRate = 0.001;

struct DayWordsResult {
    std::set<Token> tokens;
    int years_used = 0;
};

// Union of the tokens seen on the same month/day in previous years.
// years_back == 0 walks every prior year present in the store.
DayWordsResult day_words(const Store& store, Date date, const std::string& lang,
                         const std::string& country, const TokenizerConfig& config,
                         int years_back = 0);

// |A∩B| / |A∪B| over token sets, counts ignored. Throws BothEmpty when
// neither vocabulary has tokens.
double jaccard(const Vocabulary& a, const Vocabulary& b);

struct SimilarityMatrix {
    std::vector<std::string> labels;
    std::vector<double> values; // row-major, labels.size() squared

    double at(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }
};

SimilarityMatrix similarity_matrix(std::span<const Vocabulary> vocabs);

} // namespace geolex
