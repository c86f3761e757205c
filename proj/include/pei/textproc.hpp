#pragma once

// Lexicon-driven forward maximum matching segmentation and term counting.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pei/corpus.hpp"
#include "pei/error.hpp"

namespace pei {

namespace utf8 {

// Byte length of the character starting at s[i]. Malformed sequences are
// consumed one byte at a time so that no input byte is ever dropped.
inline std::size_t char_len(std::string_view s, std::size_t i) {
    const auto b = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if (b >= 0xF0 && b < 0xF8) len = 4;
    else if (b >= 0xE0) len = (b < 0xF0) ? 3 : 1;
    else if (b >= 0xC0) len = 2;
    if (i + len > s.size()) return 1;
    for (std::size_t k = 1; k < len; ++k)
        if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 1;
    return len;
}

inline char32_t decode(std::string_view s, std::size_t i, std::size_t len) {
    const auto b = [&](std::size_t k) { return static_cast<char32_t>(static_cast<unsigned char>(s[i + k])); };
    switch (len) {
        case 2: return ((b(0) & 0x1F) << 6) | (b(1) & 0x3F);
        case 3: return ((b(0) & 0x0F) << 12) | ((b(1) & 0x3F) << 6) | (b(2) & 0x3F);
        case 4: return ((b(0) & 0x07) << 18) | ((b(1) & 0x3F) << 12) | ((b(2) & 0x3F) << 6) | (b(3) & 0x3F);
        default: return b(0);
    }
}

// Byte offsets of every character start, plus s.size() as a sentinel.
inline std::vector<std::size_t> boundaries(std::string_view s) {
    std::vector<std::size_t> out;
    out.reserve(s.size() + 1);
    for (std::size_t i = 0; i < s.size(); i += char_len(s, i)) out.push_back(i);
    out.push_back(s.size());
    return out;
}

inline std::size_t length(std::string_view s) { return boundaries(s).size() - 1; }

inline bool is_space_or_punct(char32_t c) {
    if (c < 0x80) return c <= 0x20 || c == 0x7F || (c > 0x20 && c < 0x7F && !std::isalnum(static_cast<int>(c)));
    return c == 0x00A0 || (c >= 0x00A1 && c <= 0x00BF) || (c >= 0x2000 && c <= 0x206F) ||
           (c >= 0x3000 && c <= 0x303F) || (c >= 0xFF01 && c <= 0xFF0F) ||
           (c >= 0xFF1A && c <= 0xFF20) || (c >= 0xFF3B && c <= 0xFF40) ||
           (c >= 0xFF5B && c <= 0xFF65) || c == 0xFEFF;
}

}  // namespace utf8

class Lexicon {
public:
    Lexicon(std::vector<std::string> entries, std::vector<std::string> stopwords = {}) {
        for (auto& e : entries) {
            if (e.empty()) continue;
            max_entry_len_ = std::max(max_entry_len_, utf8::length(e));
            entries_.insert(std::move(e));
        }
        if (entries_.empty()) throw ValidationError("lexicon has no entries");
        for (auto& s : stopwords)
            if (!s.empty()) stopwords_.insert(std::move(s));
    }

    bool contains(const std::string& token) const { return entries_.contains(token); }
    bool is_stopword(const std::string& token) const { return stopwords_.contains(token); }
    std::size_t max_entry_len() const noexcept { return max_entry_len_; }
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::unordered_set<std::string> entries_;
    std::unordered_set<std::string> stopwords_;
    std::size_t max_entry_len_ = 0;
};

// One entry per line, surrounding whitespace trimmed, blank lines ignored.
inline std::vector<std::string> read_word_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open word list '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r\n");
        out.push_back(line.substr(b, e - b + 1));
    }
    if (!out.empty() && out.front().starts_with("\xEF\xBB\xBF")) out.front().erase(0, 3);
    return out;
}

inline Lexicon load_lexicon(const std::string& lexicon_path, const std::string& stopword_path = {}) {
    return Lexicon(read_word_list(lexicon_path),
                   stopword_path.empty() ? std::vector<std::string>{} : read_word_list(stopword_path));
}

// Greedy forward maximum match with single-character fallback, no filtering.
// Concatenating the result reproduces `text` exactly.
inline std::vector<std::string> segment_all(std::string_view text, const Lexicon& lex) {
    const auto bounds = utf8::boundaries(text);
    const std::size_t nchars = bounds.size() - 1;
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < nchars) {
        std::size_t take = 1;
        for (std::size_t len = std::min(lex.max_entry_len(), nchars - i); len > 1; --len) {
            if (lex.contains(std::string(text.substr(bounds[i], bounds[i + len] - bounds[i])))) {
                take = len;
                break;
            }
        }
        out.emplace_back(text.substr(bounds[i], bounds[i + take] - bounds[i]));
        i += take;
    }
    return out;
}

inline bool is_separator_token(std::string_view tok) {
    for (std::size_t i = 0; i < tok.size();) {
        const std::size_t len = utf8::char_len(tok, i);
        if (!utf8::is_space_or_punct(utf8::decode(tok, i, len))) return false;
        i += len;
    }
    return true;
}

// Segmentation with stopwords and whitespace/punctuation-only tokens removed.
inline std::vector<std::string> segment(std::string_view text, const Lexicon& lex) {
    auto all = segment_all(text, lex);
    std::erase_if(all, [&](const std::string& t) { return lex.is_stopword(t) || is_separator_token(t); });
    return all;
}

// Title and body are segmented separately so no token spans the two.
inline std::vector<std::string> document_tokens(const Document& d, const Lexicon& lex) {
    auto tokens = segment(d.title, lex);
    auto body = segment(d.body, lex);
    tokens.insert(tokens.end(), std::make_move_iterator(body.begin()), std::make_move_iterator(body.end()));
    return tokens;
}

struct TermCounts {
    std::map<std::string, long long> counts;
    long long total = 0;

    void add(const std::string& token, long long n = 1) {
        counts[token] += n;
        total += n;
    }

    TermCounts& operator+=(const TermCounts& o) {
        for (const auto& [tok, n] : o.counts) add(tok, n);
        return *this;
    }
    friend TermCounts operator+(TermCounts a, const TermCounts& b) { return a += b; }
    friend bool operator==(const TermCounts&, const TermCounts&) = default;
};

inline TermCounts term_frequencies(const Corpus& corpus, const Lexicon& lex) {
    TermCounts tc;
    for (const auto& d : corpus)
        for (const auto& t : document_tokens(d, lex)) tc.add(t);
    return tc;
}

// Highest counts first, ties broken by byte-lexicographic token order.
inline std::vector<std::pair<std::string, long long>> top_terms(const TermCounts& tc, std::size_t n) {
    std::vector<std::pair<std::string, long long>> all(tc.counts.begin(), tc.counts.end());
    const std::size_t k = std::min(n, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                      [](const auto& a, const auto& b) {
                          return a.second != b.second ? a.second > b.second : a.first < b.first;
                      });
    all.resize(k);
    return all;
}

}  // namespace pei
