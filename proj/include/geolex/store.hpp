#pragma once

#include "geolex/date.hpp"
#include "geolex/record.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace geolex {

inline constexpr const char* kAnyCountry = "any";

// Day-partitioned on-disk record store. One append-only NDJSON file per
// (lang, date, country) under <root>/<lang>/<date>/<country>.ndjson. The
// "any" file of a (lang, date) pair holds every record of that day and
// language exactly once; records carrying a country are additionally
// appended to that country's file.
class Store {
public:
    explicit Store(std::filesystem::path root);
    ~Store();
    Store(Store&&) noexcept;
    Store& operator=(Store&&) noexcept;

    struct IngestSummary {
        std::int64_t ingested = 0;
        std::int64_t rejected = 0;
        std::int64_t partitions_touched = 0;
        // lines appended per partition file, keyed "<lang>/<date>/<country>"
        std::map<std::string, std::int64_t> per_partition;
    };

    using ErrorSink = std::function<void(std::size_t line_no, const ParseError&)>;

    // Parses NDJSON lines from `in`, appending valid records and counting
    // rejects. Invalid lines are reported through `on_error` when given.
    IngestSummary ingest(std::istream& in, const ErrorSink& on_error = {});

    void append(const MessageRecord& rec);
    void flush();

    std::vector<std::string> langs() const;
    std::vector<Date> dates(const std::string& lang) const;
    // Country files of one partition day, "any" excluded.
    std::vector<std::string> countries(const std::string& lang, Date date) const;

    bool has_partition(const std::string& lang, Date date, const std::string& country) const;

    // Records of one partition in file order. A missing partition reads as
    // empty, mirroring the empty-vocabulary semantics downstream.
    std::vector<MessageRecord> read(const std::string& lang, Date date,
                                    const std::string& country) const;

    // Number of messages for (lang, date) across all countries.
    std::int64_t message_count(const std::string& lang, Date date) const;

    // Visits the "any" partition of every (lang, date), i.e. every stored
    // record exactly once, in lexicographic (lang, date) order.
    void for_each_record(const std::function<void(const MessageRecord&)>& fn) const;
    void for_each_record(const std::vector<std::string>& langs,
                         const std::function<void(const MessageRecord&)>& fn) const;

    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path partition_path(const std::string& lang, Date date,
                                         const std::string& country) const;
    void append_line(const std::filesystem::path& file, const std::string& line);

    std::filesystem::path root_;
    // Open append handles, capped; oldest handle is closed when full.
    struct Handle;
    std::vector<Handle> handles_;
    std::uint64_t clock_ = 0;
    std::map<std::string, std::int64_t> appended_;
};

} // namespace geolex
