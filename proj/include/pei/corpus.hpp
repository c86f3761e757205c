#pragma once

// Government-document corpus: one JSON object per line with the string
// fields "region", "date" (YYYY-MM-DD), "title" and "text".

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "pei/date.hpp"
#include "pei/error.hpp"

namespace pei {

struct Document {
    std::string region;
    Date date;
    std::string title;
    std::string body;

    friend bool operator==(const Document&, const Document&) = default;
};

inline bool document_order(const Document& a, const Document& b) {
    return std::tie(a.date, a.region, a.title, a.body) < std::tie(b.date, b.region, b.title, b.body);
}

// Immutable once built; documents are kept sorted by (date, region, title).
class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
        std::stable_sort(docs_.begin(), docs_.end(), document_order);
        if (!docs_.empty()) {
            date_min_ = docs_.front().date;
            date_max_ = docs_.back().date;
        }
    }

    const std::vector<Document>& documents() const noexcept { return docs_; }
    std::size_t size() const noexcept { return docs_.size(); }
    bool empty() const noexcept { return docs_.empty(); }
    auto begin() const noexcept { return docs_.begin(); }
    auto end() const noexcept { return docs_.end(); }

    // Absent for an empty corpus.
    std::optional<Date> date_min() const noexcept { return date_min_; }
    std::optional<Date> date_max() const noexcept { return date_max_; }

    std::set<std::string> regions() const {
        std::set<std::string> out;
        for (const auto& d : docs_) out.insert(d.region);
        return out;
    }

    friend bool operator==(const Corpus& a, const Corpus& b) { return a.docs_ == b.docs_; }

private:
    std::vector<Document> docs_;
    std::optional<Date> date_min_;
    std::optional<Date> date_max_;
};

namespace detail {

inline Document parse_record(const std::string& line, std::size_t line_no) {
    auto fail = [&](const std::string& why) -> Document {
        throw ValidationError("corpus line " + std::to_string(line_no) + ": " + why);
    };
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
        return fail("not a JSON object");
    }
    if (!j.is_object()) return fail("not a JSON object");
    auto field = [&](const char* key) -> std::string {
        auto it = j.find(key);
        if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
        if (!it->is_string()) fail(std::string("field \"") + key + "\" is not a string");
        return it->get<std::string>();
    };
    Document d;
    d.region = field("region");
    if (d.region.empty()) return fail("empty region");
    const std::string date = field("date");
    try {
        d.date = Date::parse(date);
    } catch (const ValidationError&) {
        return fail("unparseable date \"" + date + "\"");
    }
    d.title = field("title");
    d.body = field("text");
    return d;
}

}  // namespace detail

inline Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus '" + path + "'");
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        docs.push_back(detail::parse_record(line, line_no));
    }
    if (in.bad()) throw IoError("read failure on corpus '" + path + "'");
    return Corpus(std::move(docs));
}

inline std::string to_record(const Document& d) {
    nlohmann::ordered_json j;
    j["region"] = d.region;
    j["date"] = d.date.str();
    j["title"] = d.title;
    j["text"] = d.body;
    return j.dump();
}

inline void save_corpus(const Corpus& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write corpus '" + path + "'");
    for (const auto& d : c) out << to_record(d) << '\n';
    if (!out) throw IoError("write failure on corpus '" + path + "'");
}

// Documents dated within [from, to] and, when given, from one of `regions`.
inline Corpus filter_corpus(const Corpus& c, Date from, Date to,
                            const std::optional<std::set<std::string>>& regions = std::nullopt) {
    if (to < from) throw ArgumentError("filter_corpus: from " + from.str() + " is after to " + to.str());
    std::vector<Document> kept;
    for (const auto& d : c) {
        if (d.date < from || to < d.date) continue;
        if (regions && !regions->contains(d.region)) continue;
        kept.push_back(d);
    }
    return Corpus(std::move(kept));
}

}  // namespace pei
