#include "geolex/store.hpp"

#include "geolex/errors.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

namespace geolex {

namespace fs = std::filesystem;

struct Store::Handle {
    std::string key;
    std::ofstream out;
    std::uint64_t last_used = 0;
};

namespace {

constexpr std::size_t kMaxOpenHandles = 128;

} // namespace

Store::Store(fs::path root)
    : root_(std::move(root))
{
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec)
        throw IoError("cannot create store root " + root_.string() + ": " + ec.message());
}

Store::~Store() = default;
Store::Store(Store&&) noexcept = default;
Store& Store::operator=(Store&&) noexcept = default;

fs::path Store::partition_path(const std::string& lang, Date date,
                               const std::string& country) const
{
    return root_ / lang / date.to_string() / (country + ".ndjson");
}

void Store::append_line(const fs::path& file, const std::string& line)
{
    const std::string key = file.string();
    Handle* handle = nullptr;
    for (auto& h : handles_) {
        if (h.key == key) {
            handle = &h;
            break;
        }
    }
    if (!handle) {
        if (handles_.size() >= kMaxOpenHandles) {
            auto oldest = std::min_element(handles_.begin(), handles_.end(),
                                           [](const Handle& a, const Handle& b) {
                                               return a.last_used < b.last_used;
                                           });
            oldest->out.close();
            handles_.erase(oldest);
        }
        std::error_code ec;
        fs::create_directories(file.parent_path(), ec);
        if (ec)
            throw IoError("cannot create partition directory: " + ec.message());
        Handle h;
        h.key = key;
        h.out.open(file, std::ios::app | std::ios::binary);
        if (!h.out)
            throw IoError("cannot open partition file " + key);
        handles_.push_back(std::move(h));
        handle = &handles_.back();
    }
    handle->last_used = ++clock_;
    handle->out << line << '\n';
    if (!handle->out)
        throw IoError("write failed for partition file " + key);
    ++appended_[key];
}

void Store::append(const MessageRecord& rec)
{
    const std::string line = serialize_record(rec);
    const Date day = rec.day();
    append_line(partition_path(rec.lang, day, kAnyCountry), line);
    if (rec.country)
        append_line(partition_path(rec.lang, day, *rec.country), line);
}

void Store::flush()
{
    for (auto& h : handles_) {
        h.out.flush();
        if (!h.out)
            throw IoError("flush failed for partition file " + h.key);
    }
}

Store::IngestSummary Store::ingest(std::istream& in, const ErrorSink& on_error)
{
    IngestSummary summary;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        ParseResult result = parse_record(line);
        if (const auto* error = std::get_if<ParseError>(&result)) {
            ++summary.rejected;
            if (on_error)
                on_error(line_no, *error);
            continue;
        }
        append(std::get<MessageRecord>(result));
        ++summary.ingested;
    }
    flush();
    summary.partitions_touched = static_cast<std::int64_t>(appended_.size());
    for (const auto& [file, count] : appended_) {
        const auto rel = std::filesystem::relative(file, root_);
        auto key = rel.parent_path().string() + "/" + rel.stem().string();
        summary.per_partition.emplace(std::move(key), count);
    }
    return summary;
}

std::vector<std::string> Store::langs() const
{
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root_, ec))
        if (entry.is_directory())
            out.push_back(entry.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Date> Store::dates(const std::string& lang) const
{
    std::vector<Date> out;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root_ / lang, ec)) {
        if (!entry.is_directory())
            continue;
        if (auto d = Date::parse(entry.path().filename().string()))
            out.push_back(*d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> Store::countries(const std::string& lang, Date date) const
{
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root_ / lang / date.to_string(), ec)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".ndjson")
            continue;
        std::string stem = entry.path().stem().string();
        if (stem != kAnyCountry)
            out.push_back(std::move(stem));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Store::has_partition(const std::string& lang, Date date, const std::string& country) const
{
    std::error_code ec;
    return fs::exists(partition_path(lang, date, country), ec);
}

std::vector<MessageRecord> Store::read(const std::string& lang, Date date,
                                       const std::string& country) const
{
    std::vector<MessageRecord> out;
    std::ifstream in(partition_path(lang, date, country), std::ios::binary);
    if (!in)
        return out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        ParseResult result = parse_record(line);
        if (const auto* error = std::get_if<ParseError>(&result))
            throw IoError("corrupt partition " + partition_path(lang, date, country).string()
                          + ": " + error->to_string());
        out.push_back(std::move(std::get<MessageRecord>(result)));
    }
    return out;
}

std::int64_t Store::message_count(const std::string& lang, Date date) const
{
    std::ifstream in(partition_path(lang, date, kAnyCountry), std::ios::binary);
    if (!in)
        return 0;
    std::int64_t n = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            ++n;
    return n;
}

void Store::for_each_record(const std::function<void(const MessageRecord&)>& fn) const
{
    for_each_record(langs(), fn);
}

void Store::for_each_record(const std::vector<std::string>& langs,
                            const std::function<void(const MessageRecord&)>& fn) const
{
    for (const auto& lang : langs)
        for (Date date : dates(lang))
            for (const auto& rec : read(lang, date, kAnyCountry))
                fn(rec);
}

} // namespace geolex
