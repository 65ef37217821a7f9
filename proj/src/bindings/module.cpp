#include "geolex/baseline.hpp"
#include "geolex/geo.hpp"
#include "geolex/pca.hpp"
#include "geolex/textproc.hpp"
#include "geolex/vocabulary.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

using namespace geolex;

std::string encode(const Token& t)
{
    if (t.kind == TokenKind::QGram)
        return "q" + std::to_string(t.q) + ":" + t.surface;
    return t.surface;
}

Token decode(const std::string& s)
{
    if (s.size() >= 3 && s[0] == 'q' && s[2] == ':' && s[1] >= '2' && s[1] <= '4')
        return Token::qgram(static_cast<std::uint8_t>(s[1] - '0'), s.substr(3));
    if (s.find('~') != std::string::npos)
        return Token::bigram(s);
    return Token::word(s);
}

Vocabulary vocab_from_counts(const std::map<std::string, std::int64_t>& counts,
                             const std::string& country)
{
    Vocabulary v;
    v.scope.country = country;
    for (const auto& [key, count] : counts)
        v.counts.emplace(decode(key), count);
    return v;
}

Series series_from_values(const std::vector<double>& values)
{
    Series s;
    s.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        s.push_back({Date::from_serial(static_cast<std::int32_t>(i)), values[i]});
    return s;
}

} // namespace

PYBIND11_MODULE(_geolex, m)
{
    m.doc() = "Token vocabularies, landmark mobility and baseline analytics (C++ core)";

    m.def("normalize", [](const std::string& text) { return normalize(text); },
          py::arg("text"),
          "Lowercase, strip mentions/URLs/punctuation, collapse whitespace to '~'.");

    m.def(
        "tokenize",
        [](const std::string& text, const std::vector<int>& qgrams, bool words, bool bigrams) {
            TokenizerConfig config;
            config.qgrams = qgrams;
            config.words = words;
            config.bigrams = bigrams;
            std::map<std::string, std::int64_t> out;
            for (const auto& [token, count] : tokenize(text, config))
                out[encode(token)] = count;
            return out;
        },
        py::arg("text"), py::arg("qgrams") = std::vector<int>{2, 3, 4},
        py::arg("words") = true, py::arg("bigrams") = true,
        "Token -> count map; q-grams are keyed 'q<q>:<surface>'.");

    m.def("is_emoji", [](const std::string& surface) { return is_emoji_text(surface); },
          py::arg("surface"));

    m.def(
        "haversine",
        [](double lat1, double lon1, double lat2, double lon2) {
            return haversine({lat1, lon1}, {lat2, lon2});
        },
        py::arg("lat1"), py::arg("lon1"), py::arg("lat2"), py::arg("lon2"),
        "Great-circle distance in meters.");

    m.def("retention_threshold", &retention_threshold, py::arg("day_lang_messages"));

    m.def(
        "jaccard",
        [](const std::map<std::string, std::int64_t>& a,
           const std::map<std::string, std::int64_t>& b) {
            return jaccard(vocab_from_counts(a, "A"), vocab_from_counts(b, "B"));
        },
        py::arg("a"), py::arg("b"), "Jaccard similarity over the token sets of two count maps.");

    m.def(
        "similarity_matrix",
        [](const std::vector<std::map<std::string, std::int64_t>>& vocabs,
           const std::vector<std::string>& labels) {
            if (labels.size() != vocabs.size())
                throw std::invalid_argument("labels and vocabs must have equal length");
            std::vector<Vocabulary> vs;
            vs.reserve(vocabs.size());
            for (std::size_t i = 0; i < vocabs.size(); ++i)
                vs.push_back(vocab_from_counts(vocabs[i], labels[i]));
            const SimilarityMatrix sm = similarity_matrix(vs);
            std::vector<std::vector<double>> rows(sm.labels.size());
            for (std::size_t i = 0; i < sm.labels.size(); ++i)
                for (std::size_t j = 0; j < sm.labels.size(); ++j)
                    rows[i].push_back(sm.at(i, j));
            return rows;
        },
        py::arg("vocabs"), py::arg("labels"));

    m.def(
        "pca_project",
        [](const std::vector<std::vector<double>>& rows, int components) {
            if (rows.empty())
                throw std::invalid_argument("empty matrix");
            Matrix input(rows.size(), rows.front().size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != input.cols)
                    throw std::invalid_argument("ragged matrix");
                for (std::size_t j = 0; j < input.cols; ++j)
                    input.at(i, j) = rows[i][j];
            }
            const PcaResult result = pca_project(input, components);
            std::vector<std::vector<double>> coords(result.coords.rows);
            for (std::size_t i = 0; i < result.coords.rows; ++i)
                for (std::size_t j = 0; j < result.coords.cols; ++j)
                    coords[i].push_back(result.coords.at(i, j));
            return coords;
        },
        py::arg("rows"), py::arg("components") = 2);

    m.def(
        "kmeans_1d",
        [](const std::vector<double>& values, int k, std::uint64_t seed, int restarts) {
            const KMeansResult r = kmeans_1d(values, k, seed, restarts);
            return py::make_tuple(r.centroids, r.assignment, r.inertia);
        },
        py::arg("values"), py::arg("k"), py::arg("seed") = 42, py::arg("restarts") = 10,
        "Returns (centroids, assignment, inertia).");

    m.def(
        "silhouette",
        [](const std::vector<double>& values, const std::vector<int>& assignment, int k) {
            return silhouette_1d(values, assignment, k);
        },
        py::arg("values"), py::arg("assignment"), py::arg("k"));

    m.def(
        "cluster_baseline",
        [](const std::vector<double>& values, int k_min, int k_max, std::uint64_t seed) {
            const Baseline b = cluster_baseline(values, k_min, k_max, seed);
            py::dict out;
            out["centroids"] = b.centroids;
            out["k"] = b.selected_k;
            out["degenerate"] = b.degenerate;
            return out;
        },
        py::arg("values"), py::arg("k_min") = 2, py::arg("k_max") = 7, py::arg("seed") = 42);

    m.def(
        "moving_average",
        [](const std::vector<double>& values, int window) {
            const Series out = moving_average(series_from_values(values), window);
            std::vector<double> result;
            result.reserve(out.size());
            for (const auto& p : out)
                result.push_back(p.value);
            return result;
        },
        py::arg("values"), py::arg("window") = 7,
        "Trailing mean including the current value; the first element is itself.");

    m.def(
        "pearson",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            if (a.size() != b.size())
                throw std::invalid_argument("pearson over plain lists needs equal lengths");
            return pearson(series_from_values(a), series_from_values(b));
        },
        py::arg("a"), py::arg("b"));

#ifdef GEOLEX_VERSION
    m.attr("__version__") = GEOLEX_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
