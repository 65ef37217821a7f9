#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace geolex {

enum class TokenKind : std::uint8_t {
    Word = 0,
    Bigram = 1,
    QGram = 2,
};

// A surface form plus its kind. Bigram surfaces join two words with '~';
// q-gram surfaces are q code points of the normalized text.
struct Token {
    TokenKind kind = TokenKind::Word;
    std::uint8_t q = 0; // q-gram size, 0 for words and bigrams
    std::string surface;

    auto operator<=>(const Token&) const = default;

    static Token word(std::string s) { return {TokenKind::Word, 0, std::move(s)}; }
    static Token bigram(std::string s) { return {TokenKind::Bigram, 0, std::move(s)}; }
    static Token qgram(std::uint8_t q, std::string s) { return {TokenKind::QGram, q, std::move(s)}; }
};

// Multiset of tokens; std::map keeps iteration deterministic
// (kind, then q, then surface).
using TokenBag = std::map<Token, std::int64_t>;

struct TokenizerConfig {
    std::vector<int> qgrams = {2, 3, 4};
    bool words = true;
    bool bigrams = true;

    // {"qgrams":[2,3,4],"words":true,"bigrams":true}
    static TokenizerConfig from_json_text(std::string_view text);
    std::string to_json_text() const;
};

// Cleaning pipeline applied in order: strip @-mentions, strip URLs
// (http/https schemes and bare www. prefixes), lowercase, drop punctuation,
// collapse whitespace runs into a single '~'. Total and idempotent.
std::string normalize(std::string_view text);

// Words are the '~'-separated segments of normalize(text); bigrams join
// consecutive words with '~'; q-grams slide over the whole normalized
// string, separators included.
TokenBag tokenize(std::string_view text, const TokenizerConfig& config = {});

// Same as tokenize but over text that is already normalized.
TokenBag tokenize_normalized(std::string_view normalized, const TokenizerConfig& config = {});

// True when every code point of the surface (ignoring '~', variation
// selectors, ZWJ and skin-tone modifiers) falls in the emoji ranges and at
// least one such code point exists.
bool is_emoji(const Token& token);
bool is_emoji_text(std::string_view surface);

} // namespace geolex
