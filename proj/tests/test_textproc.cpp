#include <gtest/gtest.h>

#include <random>

#include "pei/textproc.hpp"

using namespace pei;
using Tokens = std::vector<std::string>;

TEST(Segment, ExactTiling) {
    const Lexicon lex({"疫情", "防控"});
    EXPECT_EQ(segment("疫情防控", lex), (Tokens{"疫情", "防控"}));
}

TEST(Segment, LongestMatchWins) {
    const Lexicon lex({"新冠", "新冠肺炎"});
    EXPECT_EQ(segment("新冠肺炎", lex), (Tokens{"新冠肺炎"}));
}

TEST(Segment, SingleCharacterFallback) {
    const Lexicon lex({"贷款"});
    EXPECT_EQ(segment("X贷款", lex), (Tokens{"X", "贷款"}));
    EXPECT_EQ(segment("企贷款", lex), (Tokens{"企", "贷款"}));
}

TEST(Segment, DropsStopwordsWhitespaceAndPunctuation) {
    const Lexicon lex({"疫情", "防控"}, {"的"});
    EXPECT_EQ(segment("疫情的 防控，疫情。", lex), (Tokens{"疫情", "防控", "疫情"}));
    EXPECT_EQ(segment("  ...  ", lex), Tokens{});
}

TEST(Segment, EmptyText) {
    const Lexicon lex({"a"});
    EXPECT_TRUE(segment("", lex).empty());
}

TEST(Segment, EmptyLexiconRejected) {
    EXPECT_THROW(Lexicon({}), ValidationError);
    EXPECT_THROW(Lexicon({""}), ValidationError);
}

TEST(Segment, MaxEntryLengthInCharacters) {
    const Lexicon lex({"ab", "新冠肺炎"});
    EXPECT_EQ(lex.max_entry_len(), 4u);
}

TEST(Segment, ConcatenationReconstructsInput) {
    const Lexicon lex({"疫情", "防控", "新冠肺炎", "ab", "abc", "贷款"});
    const std::vector<std::string> alphabet{"疫", "情", "防", "控", "新", "冠", "肺", "炎", "a", "b", "c", " ", "，",
                                            "贷", "款", "\xff", "\xe4"};
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        std::string text;
        const int len = static_cast<int>(rng() % 30);
        for (int i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
        std::string joined;
        for (const auto& t : segment_all(text, lex)) joined += t;
        ASSERT_EQ(joined, text);
    }
}

namespace {

Corpus docs(std::initializer_list<std::string> bodies) {
    std::vector<Document> out;
    for (const auto& b : bodies) out.push_back({"R", Date(2020, 1, 1), "", b});
    return Corpus(out);
}

}  // namespace

TEST(TermFrequencies, EmptyCorpus) {
    const auto tc = term_frequencies(Corpus{}, Lexicon({"a"}));
    EXPECT_TRUE(tc.counts.empty());
    EXPECT_EQ(tc.total, 0);
}

TEST(TermFrequencies, HandCount) {
    const Lexicon lex({"疫情", "防控"});
    const auto tc = term_frequencies(docs({"疫情 疫情 防控"}), lex);
    EXPECT_EQ(tc.counts, (std::map<std::string, long long>{{"疫情", 2}, {"防控", 1}}));
    EXPECT_EQ(tc.total, 3);
}

TEST(TermFrequencies, TitleCountedSeparately) {
    const Lexicon lex({"疫情"});
    const Corpus c({Document{"R", Date(2020, 1, 1), "疫", "情"}});
    // No token spans the title/body boundary.
    EXPECT_EQ(term_frequencies(c, lex).counts, (std::map<std::string, long long>{{"情", 1}, {"疫", 1}}));
}

TEST(TermFrequencies, DuplicateDocumentsDouble) {
    const Lexicon lex({"疫情", "防控"});
    const auto one = term_frequencies(docs({"疫情防控 贷款"}), lex);
    const auto two = term_frequencies(docs({"疫情防控 贷款", "疫情防控 贷款"}), lex);
    for (const auto& [tok, n] : one.counts) EXPECT_EQ(two.counts.at(tok), 2 * n);
    EXPECT_EQ(two.total, 2 * one.total);
}

TEST(TermFrequencies, AdditiveOverPartition) {
    const Lexicon lex({"疫情", "防控", "贷款"});
    const auto a = docs({"疫情防控", "贷款疫情"});
    const auto b = docs({"防控防控", "新的贷款"});
    const auto all = docs({"疫情防控", "贷款疫情", "防控防控", "新的贷款"});
    EXPECT_EQ(term_frequencies(a, lex) + term_frequencies(b, lex), term_frequencies(all, lex));
}

TEST(TopTerms, Basic) {
    TermCounts tc;
    tc.add("a", 3);
    tc.add("b", 1);
    EXPECT_EQ(top_terms(tc, 1), (std::vector<std::pair<std::string, long long>>{{"a", 3}}));
    EXPECT_TRUE(top_terms(tc, 0).empty());
    EXPECT_EQ(top_terms(tc, 10).size(), 2u);
}

TEST(TopTerms, LexicographicTieBreak) {
    TermCounts tc;
    tc.add("b", 2);
    tc.add("a", 2);
    EXPECT_EQ(top_terms(tc, 2), (std::vector<std::pair<std::string, long long>>{{"a", 2}, {"b", 2}}));
}
