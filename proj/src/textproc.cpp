#include "geolex/textproc.hpp"

#include "unicode_tables.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace geolex {

namespace {

using detail::CpRange;

bool in_ranges(char32_t cp, const CpRange* ranges, std::size_t n)
{
    const CpRange* end = ranges + n;
    const CpRange* it = std::upper_bound(ranges, end, cp, [](char32_t v, const CpRange& r) {
        return v < r.first;
    });
    return it != ranges && cp <= (it - 1)->last;
}

bool is_punct_cp(char32_t cp)
{
    return in_ranges(cp, detail::kPunctRanges, std::size(detail::kPunctRanges));
}

bool is_space_cp(char32_t cp)
{
    return in_ranges(cp, detail::kSpaceRanges, std::size(detail::kSpaceRanges));
}

char32_t lower_cp(char32_t cp)
{
    const auto* begin = detail::kLowerRuns;
    const auto* end = begin + std::size(detail::kLowerRuns);
    const auto* it = std::upper_bound(begin, end, cp, [](char32_t v, const detail::LowerRun& r) {
        return v < r.first;
    });
    if (it == begin)
        return cp;
    const auto& run = *(it - 1);
    if (cp > run.last)
        return cp;
    if ((cp - run.first) % run.stride != 0)
        return cp;
    return static_cast<char32_t>(static_cast<std::int64_t>(cp) + run.delta);
}

// Emoji blocks: Miscellaneous Symbols and Pictographs, Emoticons, Transport
// and Map Symbols, Supplemental Symbols and Pictographs, Symbols and
// Pictographs Extended-A. Kept as a table so the inventory can be updated.
constexpr CpRange kEmojiRanges[] = {
    {0x1F300, 0x1F5FF},
    {0x1F600, 0x1F64F},
    {0x1F680, 0x1F6FF},
    {0x1F900, 0x1F9FF},
    {0x1FA70, 0x1FAFF},
};

bool is_emoji_cp(char32_t cp)
{
    return in_ranges(cp, kEmojiRanges, std::size(kEmojiRanges));
}

// Joiners and modifiers that ride along with emoji sequences.
bool is_emoji_neutral_cp(char32_t cp)
{
    return cp == U'~' || cp == 0x200D /* ZWJ */ || cp == 0xFE0E || cp == 0xFE0F
           || (cp >= 0x1F3FB && cp <= 0x1F3FF) /* skin tones */;
}

std::vector<char32_t> decode_utf8(std::string_view s)
{
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        char32_t cp = 0xFFFD;
        std::size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 >> 5) == 0x6 && i + 1 < s.size()) {
            len = 2;
            cp = static_cast<char32_t>(b0 & 0x1F);
        } else if ((b0 >> 4) == 0xE && i + 2 < s.size()) {
            len = 3;
            cp = static_cast<char32_t>(b0 & 0x0F);
        } else if ((b0 >> 3) == 0x1E && i + 3 < s.size()) {
            len = 4;
            cp = static_cast<char32_t>(b0 & 0x07);
        } else {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
            const unsigned char b = static_cast<unsigned char>(s[i + k]);
            if ((b >> 6) != 0x2) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        if (!ok || cp > 0x10FFFF) {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void encode_utf8(char32_t cp, std::string& out)
{
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_handle_char(char32_t cp)
{
    return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')
           || (cp >= U'0' && cp <= U'9') || cp == U'_';
}

bool is_ascii_alnum(char32_t cp)
{
    return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')
           || (cp >= U'0' && cp <= U'9');
}

bool match_ci(const std::vector<char32_t>& cps, std::size_t pos, std::string_view lit)
{
    if (pos + lit.size() > cps.size())
        return false;
    for (std::size_t k = 0; k < lit.size(); ++k) {
        char32_t cp = cps[pos + k];
        if (cp >= U'A' && cp <= U'Z')
            cp += 0x20;
        if (cp != static_cast<char32_t>(lit[k]))
            return false;
    }
    return true;
}

} // namespace

std::string normalize(std::string_view text)
{
    std::vector<char32_t> cps = decode_utf8(text);

    // Mentions and URLs go first so their punctuation never leaks into the
    // generic stripping below.
    std::vector<char32_t> kept;
    kept.reserve(cps.size());
    std::size_t i = 0;
    while (i < cps.size()) {
        const char32_t cp = cps[i];
        if (cp == U'@' && i + 1 < cps.size() && is_handle_char(cps[i + 1])) {
            ++i;
            while (i < cps.size() && is_handle_char(cps[i]))
                ++i;
            continue;
        }
        const bool at_boundary = kept.empty() || !is_ascii_alnum(kept.back());
        if (at_boundary
            && (match_ci(cps, i, "http://") || match_ci(cps, i, "https://")
                || match_ci(cps, i, "www."))) {
            while (i < cps.size() && !is_space_cp(cps[i]))
                ++i;
            continue;
        }
        kept.push_back(cp);
        ++i;
    }

    std::string out;
    out.reserve(text.size());
    bool pending_sep = false;
    bool any_out = false;
    for (char32_t cp : kept) {
        cp = lower_cp(cp);
        // '~' is the output separator, so on input it behaves like
        // whitespace; that keeps normalize idempotent.
        if (is_space_cp(cp) || cp == U'~') {
            pending_sep = true;
            continue;
        }
        if (is_punct_cp(cp))
            continue;
        if (pending_sep && any_out)
            out.push_back('~');
        pending_sep = false;
        any_out = true;
        encode_utf8(cp, out);
    }
    return out;
}

TokenBag tokenize_normalized(std::string_view normalized, const TokenizerConfig& config)
{
    TokenBag bag;
    if (normalized.empty())
        return bag;

    if (config.words || config.bigrams) {
        std::string prev;
        std::size_t start = 0;
        while (start <= normalized.size()) {
            std::size_t sep = normalized.find('~', start);
            if (sep == std::string_view::npos)
                sep = normalized.size();
            std::string word(normalized.substr(start, sep - start));
            if (!word.empty()) {
                if (config.words)
                    ++bag[Token::word(word)];
                if (config.bigrams && !prev.empty())
                    ++bag[Token::bigram(prev + "~" + word)];
                prev = std::move(word);
            }
            start = sep + 1;
            if (sep == normalized.size())
                break;
        }
    }

    if (!config.qgrams.empty()) {
        // q-grams count code points, not bytes; record byte offsets once.
        std::vector<std::size_t> offsets;
        offsets.reserve(normalized.size() + 1);
        for (std::size_t i = 0; i < normalized.size();) {
            offsets.push_back(i);
            const auto b = static_cast<unsigned char>(normalized[i]);
            i += b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3 : 4;
        }
        offsets.push_back(normalized.size());
        const std::size_t n = offsets.size() - 1;
        for (int q : config.qgrams) {
            if (q < 2 || q > 4)
                throw std::invalid_argument("q-gram size must be 2, 3 or 4");
            const auto uq = static_cast<std::size_t>(q);
            for (std::size_t i = 0; i + uq <= n; ++i) {
                std::string surf(
                    normalized.substr(offsets[i], offsets[i + uq] - offsets[i]));
                ++bag[Token::qgram(static_cast<std::uint8_t>(q), std::move(surf))];
            }
        }
    }

    return bag;
}

TokenBag tokenize(std::string_view text, const TokenizerConfig& config)
{
    return tokenize_normalized(normalize(text), config);
}

bool is_emoji_text(std::string_view surface)
{
    bool any = false;
    for (char32_t cp : decode_utf8(surface)) {
        if (is_emoji_neutral_cp(cp))
            continue;
        if (!is_emoji_cp(cp))
            return false;
        any = true;
    }
    return any;
}

bool is_emoji(const Token& token)
{
    return is_emoji_text(token.surface);
}

TokenizerConfig TokenizerConfig::from_json_text(std::string_view text)
{
    nlohmann::json doc = nlohmann::json::parse(text);
    TokenizerConfig cfg;
    if (doc.contains("qgrams"))
        cfg.qgrams = doc["qgrams"].get<std::vector<int>>();
    if (doc.contains("words"))
        cfg.words = doc["words"].get<bool>();
    if (doc.contains("bigrams"))
        cfg.bigrams = doc["bigrams"].get<bool>();
    for (int q : cfg.qgrams)
        if (q < 2 || q > 4)
            throw std::invalid_argument("q-gram size must be 2, 3 or 4");
    return cfg;
}

std::string TokenizerConfig::to_json_text() const
{
    nlohmann::json doc;
    doc["qgrams"] = qgrams;
    doc["words"] = words;
    doc["bigrams"] = bigrams;
    return doc.dump();
}

} // namespace geolex
