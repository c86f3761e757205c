#pragma once

// Entropy-weighted keyword dictionary and the daily policy effectiveness
// index built from it.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "pei/corpus.hpp"
#include "pei/csv.hpp"
#include "pei/date.hpp"
#include "pei/error.hpp"
#include "pei/textproc.hpp"

namespace pei {

using CountMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// counts(i, j): occurrences of keywords[j] on dates[i].
struct KeywordCountMatrix {
    std::vector<Date> dates;
    std::vector<std::string> keywords;
    CountMatrix counts;

    friend KeywordCountMatrix operator+(KeywordCountMatrix a, const KeywordCountMatrix& b) {
        if (a.dates != b.dates || a.keywords != b.keywords)
            throw ArgumentError("count matrices differ in shape or labels");
        a.counts += b.counts;
        return a;
    }
};

struct DifferentiationCoefficients {
    std::vector<std::string> keywords;  // retained keywords, matrix order
    std::vector<double> d;
    std::vector<std::string> excluded;  // zero-count keywords
    std::vector<std::string> warnings;
};

struct DictionaryEntry {
    std::string keyword;
    char type = 'A';
};

struct WeightedKeyword {
    std::string keyword;
    char type = 'A';
    double d = 0.0;
    double w = 0.0;
};

struct KeywordDictionary {
    std::vector<WeightedKeyword> keywords;
};

struct IndexSeries {
    std::string region;
    std::vector<Date> dates;
    std::vector<double> values;
};

namespace detail {

inline KeywordCountMatrix keyword_counts(const Corpus& corpus, const Lexicon& lex,
                                         const std::vector<std::string>& keywords, const std::string* region,
                                         Date from, Date to) {
    if (to < from) throw ArgumentError("daily_keyword_counts: from is after to");
    std::unordered_map<std::string, Eigen::Index> column;
    for (std::size_t j = 0; j < keywords.size(); ++j) {
        if (!lex.contains(keywords[j]))
            throw ArgumentError("keyword '" + keywords[j] + "' is not a lexicon entry");
        column.emplace(keywords[j], static_cast<Eigen::Index>(j));
    }
    KeywordCountMatrix m;
    m.dates = day_range(from, to);
    m.keywords = keywords;
    m.counts = CountMatrix::Zero(static_cast<Eigen::Index>(m.dates.size()),
                                 static_cast<Eigen::Index>(keywords.size()));
    for (const auto& doc : corpus) {
        if ((region && doc.region != *region) || doc.date < from || to < doc.date) continue;
        const Eigen::Index row = doc.date - from;
        for (const auto& tok : document_tokens(doc, lex)) {
            auto it = column.find(tok);
            if (it != column.end()) ++m.counts(row, it->second);
        }
    }
    return m;
}

}  // namespace detail

// One row per day in [from, to]; counts of each keyword among the segmented
// tokens of `region`'s documents on that day.
inline KeywordCountMatrix daily_keyword_counts(const Corpus& corpus, const Lexicon& lex,
                                               const std::vector<std::string>& keywords,
                                               const std::string& region, Date from, Date to) {
    return detail::keyword_counts(corpus, lex, keywords, &region, from, to);
}

// Same as daily_keyword_counts with every region pooled.
inline KeywordCountMatrix pooled_keyword_counts(const Corpus& corpus, const Lexicon& lex,
                                                const std::vector<std::string>& keywords, Date from, Date to) {
    return detail::keyword_counts(corpus, lex, keywords, nullptr, from, to);
}

// d_j = 1 + (1 / ln n) * sum_i p_ij ln p_ij with p_ij = count_ij / sum_i count_ij
// and 0 ln 0 = 0. Keywords that never occur are excluded.
inline DifferentiationCoefficients differentiation_coefficients(const KeywordCountMatrix& m) {
    const Eigen::Index n = m.counts.rows();
    if (n < 2) throw ArgumentError("differentiation_coefficients: need at least 2 days");
    DifferentiationCoefficients out;
    const double log_n = std::log(static_cast<double>(n));
    for (Eigen::Index j = 0; j < m.counts.cols(); ++j) {
        const auto& name = m.keywords[static_cast<std::size_t>(j)];
        const long long total = m.counts.col(j).sum();
        if (total <= 0) {
            out.excluded.push_back(name);
            out.warnings.push_back("keyword '" + name + "' never occurs; excluded");
            continue;
        }
        double plogp = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const long long c = m.counts(i, j);
            if (c < 0) throw ArgumentError("negative keyword count");
            if (c == 0) continue;
            const double p = static_cast<double>(c) / static_cast<double>(total);
            plogp += p * std::log(p);
        }
        out.keywords.push_back(name);
        out.d.push_back(std::clamp(1.0 + plogp / log_n, 0.0, 1.0));
    }
    return out;
}

// w_j = d_j / sum_j d_j.
inline std::vector<double> entropy_weights(const std::vector<double>& d) {
    double sum = 0.0;
    for (double v : d) {
        if (v < 0.0) throw ArgumentError("entropy_weights: negative differentiation coefficient");
        sum += v;
    }
    if (!(sum > 0.0)) throw ValidationError("degenerate dictionary: every differentiation coefficient is 0");
    std::vector<double> w;
    w.reserve(d.size());
    for (double v : d) w.push_back(v / sum);
    return w;
}

// Weights for `entries` from the counts in `m`. Entries missing from the
// matrix or never observed are dropped.
inline KeywordDictionary build_dictionary(const KeywordCountMatrix& m, const std::vector<DictionaryEntry>& entries,
                                          std::vector<std::string>* warnings = nullptr) {
    const auto dc = differentiation_coefficients(m);
    if (warnings) warnings->insert(warnings->end(), dc.warnings.begin(), dc.warnings.end());
    const auto w = entropy_weights(dc.d);
    std::map<std::string, char> type_of;
    for (const auto& e : entries) type_of.emplace(e.keyword, e.type);
    KeywordDictionary dict;
    for (std::size_t j = 0; j < dc.keywords.size(); ++j) {
        auto it = type_of.find(dc.keywords[j]);
        dict.keywords.push_back({dc.keywords[j], it == type_of.end() ? '?' : it->second, dc.d[j], w[j]});
    }
    return dict;
}

// value_i = sum_j w_j * count_ij.
inline IndexSeries effectiveness_index(const KeywordCountMatrix& m, const KeywordDictionary& dict,
                                       const std::string& region = {}) {
    std::unordered_map<std::string, Eigen::Index> column;
    for (std::size_t j = 0; j < m.keywords.size(); ++j) column.emplace(m.keywords[j], static_cast<Eigen::Index>(j));
    std::vector<std::pair<Eigen::Index, double>> terms;
    for (const auto& k : dict.keywords) {
        auto it = column.find(k.keyword);
        if (it == column.end())
            throw ArgumentError("dictionary keyword '" + k.keyword + "' missing from count matrix");
        terms.emplace_back(it->second, k.w);
    }
    IndexSeries s;
    s.region = region;
    s.dates = m.dates;
    s.values.assign(m.dates.size(), 0.0);
    for (Eigen::Index i = 0; i < m.counts.rows(); ++i) {
        double v = 0.0;
        for (const auto& [j, w] : terms) v += w * static_cast<double>(m.counts(i, j));
        s.values[static_cast<std::size_t>(i)] = v;
    }
    return s;
}

// ---- files ---------------------------------------------------------------

// CSV `keyword,type`; type is one of A-E. Repeated keywords keep their first
// type. Lines starting with '#' are comments.
inline std::vector<DictionaryEntry> load_dictionary(const std::string& path,
                                                    std::vector<std::string>* warnings = nullptr) {
    const auto t = csv::read(path);
    if (t.header.size() < 2 || t.header[0] != "keyword" || t.header[1] != "type")
        throw ValidationError("'" + path + "': expected header keyword,type");
    std::vector<DictionaryEntry> out;
    std::set<std::string> seen;
    std::size_t row = 1;
    for (const auto& r : t.rows) {
        ++row;
        if (r.size() < 2 || r[0].empty() || r[1].size() != 1 || r[1][0] < 'A' || r[1][0] > 'E')
            throw ValidationError("'" + path + "' row " + std::to_string(row) + ": expected keyword,<A-E>");
        if (!seen.insert(r[0]).second) {
            if (warnings) warnings->push_back("duplicate dictionary keyword '" + r[0] + "' ignored");
            continue;
        }
        out.push_back({r[0], r[1][0]});
    }
    if (out.empty()) throw ValidationError("'" + path + "': dictionary is empty");
    return out;
}

inline csv::Table weights_table(const KeywordDictionary& dict) {
    csv::Table t{{"keyword", "type", "d", "w"}, {}};
    for (const auto& k : dict.keywords) t.rows.push_back({k.keyword, std::string(1, k.type), csv::num(k.d), csv::num(k.w)});
    return t;
}

inline KeywordDictionary parse_weights_table(const csv::Table& t) {
    if (t.header != csv::Row{"keyword", "type", "d", "w"}) throw ValidationError("expected header keyword,type,d,w");
    KeywordDictionary dict;
    std::size_t row = 1;
    for (const auto& r : t.rows) {
        ++row;
        if (r.size() != 4 || r[1].size() != 1) throw ValidationError("weights row " + std::to_string(row) + " malformed");
        dict.keywords.push_back({r[0], r[1][0], csv::parse_double(r[2], row), csv::parse_double(r[3], row)});
    }
    return dict;
}

inline csv::Table index_long_table(const std::vector<IndexSeries>& series) {
    csv::Table t{{"date", "region", "value"}, {}};
    if (series.empty()) return t;
    for (std::size_t i = 0; i < series.front().dates.size(); ++i)
        for (const auto& s : series) t.rows.push_back({s.dates[i].str(), s.region, csv::num(s.values[i])});
    return t;
}

inline csv::Table index_wide_table(const std::vector<IndexSeries>& series) {
    csv::Table t{{"date"}, {}};
    for (const auto& s : series) t.header.push_back(s.region);
    if (series.empty()) return t;
    for (std::size_t i = 0; i < series.front().dates.size(); ++i) {
        csv::Row r{series.front().dates[i].str()};
        for (const auto& s : series) r.push_back(csv::num(s.values[i]));
        t.rows.push_back(std::move(r));
    }
    return t;
}

// Inverse of index_long_table; regions appear in first-seen order.
inline std::vector<IndexSeries> parse_index_long(const csv::Table& t) {
    if (t.header != csv::Row{"date", "region", "value"}) throw ValidationError("expected header date,region,value");
    std::vector<IndexSeries> out;
    std::map<std::string, std::size_t> pos;
    std::size_t row = 1;
    for (const auto& r : t.rows) {
        ++row;
        if (r.size() != 3) throw ValidationError("index row " + std::to_string(row) + " malformed");
        auto [it, fresh] = pos.emplace(r[1], out.size());
        if (fresh) out.push_back({r[1], {}, {}});
        auto& s = out[it->second];
        s.dates.push_back(Date::parse(r[0]));
        s.values.push_back(csv::parse_double(r[2], row));
    }
    return out;
}

}  // namespace pei
