#pragma once

// Latent Dirichlet allocation fitted by collapsed Gibbs sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pei/error.hpp"
#include "pei/random.hpp"

namespace pei {

struct LdaOptions {
    int topics = 5;
    double alpha = -1.0;  // <= 0 selects 50 / topics
    double beta = 0.01;
    int iterations = 500;
    std::uint64_t seed = 1;
};

struct TopicModel {
    int topics = 0;
    double alpha = 0.0;
    double beta = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> vocab;     // sorted
    Eigen::MatrixXd phi;                // topics x vocab
    Eigen::MatrixXd theta;              // fitted documents x topics
    std::vector<std::size_t> documents; // input index of each theta row
    std::vector<std::vector<int>> assignments;
    std::vector<std::string> warnings;
};

inline TopicModel fit_lda(const std::vector<std::vector<std::string>>& docs, const LdaOptions& opt) {
    if (opt.topics < 1) throw ArgumentError("fit_lda: topic count must be >= 1");
    if (opt.iterations < 1) throw ArgumentError("fit_lda: iterations must be >= 1");
    if (!(opt.beta > 0.0)) throw ArgumentError("fit_lda: beta must be > 0");

    TopicModel m;
    m.topics = opt.topics;
    m.alpha = opt.alpha > 0.0 ? opt.alpha : 50.0 / opt.topics;
    m.beta = opt.beta;
    m.iterations = opt.iterations;
    m.seed = opt.seed;

    std::map<std::string, int> word_id;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (docs[d].empty()) {
            m.warnings.push_back("document " + std::to_string(d) + " has no tokens; skipped");
            continue;
        }
        m.documents.push_back(d);
        for (const auto& w : docs[d]) word_id.emplace(w, 0);
    }
    if (m.documents.empty()) throw ArgumentError("fit_lda: corpus has no non-empty documents");
    for (auto& [w, id] : word_id) {
        id = static_cast<int>(m.vocab.size());
        m.vocab.push_back(w);
    }

    const int K = m.topics;
    const int V = static_cast<int>(m.vocab.size());
    const std::size_t D = m.documents.size();

    std::vector<std::vector<int>> words(D);
    for (std::size_t d = 0; d < D; ++d)
        for (const auto& w : docs[m.documents[d]]) words[d].push_back(word_id.at(w));

    std::vector<int> n_kw(static_cast<std::size_t>(K) * V, 0);
    std::vector<int> n_k(K, 0);
    std::vector<std::vector<int>> n_dk(D, std::vector<int>(K, 0));
    auto& z = m.assignments;
    z.resize(D);

    std::mt19937_64 rng(opt.seed);
    for (std::size_t d = 0; d < D; ++d) {
        z[d].resize(words[d].size());
        for (std::size_t i = 0; i < words[d].size(); ++i) {
            const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(K));
            z[d][i] = k;
            ++n_kw[static_cast<std::size_t>(k) * V + words[d][i]];
            ++n_k[k];
            ++n_dk[d][k];
        }
    }

    const double vbeta = V * m.beta;
    std::vector<double> cumulative(K);
    for (int it = 0; it < opt.iterations; ++it) {
        for (std::size_t d = 0; d < D; ++d) {
            for (std::size_t i = 0; i < words[d].size(); ++i) {
                const int w = words[d][i];
                int k = z[d][i];
                --n_kw[static_cast<std::size_t>(k) * V + w];
                --n_k[k];
                --n_dk[d][k];

                double acc = 0.0;
                for (int t = 0; t < K; ++t) {
                    acc += (n_dk[d][t] + m.alpha) * (n_kw[static_cast<std::size_t>(t) * V + w] + m.beta) /
                           (n_k[t] + vbeta);
                    cumulative[t] = acc;
                }
                const double u = detail::unit_uniform(rng) * acc;
                k = static_cast<int>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
                if (k >= K) k = K - 1;

                z[d][i] = k;
                ++n_kw[static_cast<std::size_t>(k) * V + w];
                ++n_k[k];
                ++n_dk[d][k];
            }
        }
    }

    m.phi.resize(K, V);
    for (int k = 0; k < K; ++k)
        for (int w = 0; w < V; ++w)
            m.phi(k, w) = (n_kw[static_cast<std::size_t>(k) * V + w] + m.beta) / (n_k[k] + vbeta);
    m.theta.resize(static_cast<Eigen::Index>(D), K);
    for (std::size_t d = 0; d < D; ++d) {
        const double nd = static_cast<double>(words[d].size());
        for (int k = 0; k < K; ++k)
            m.theta(static_cast<Eigen::Index>(d), k) = (n_dk[d][k] + m.alpha) / (nd + K * m.alpha);
    }
    return m;
}

// Largest topic-word probabilities, weight-descending, ties by token.
inline std::vector<std::pair<double, std::string>> top_words(const TopicModel& m, int topic, std::size_t n) {
    if (topic < 0 || topic >= m.topics)
        throw ArgumentError("top_words: topic " + std::to_string(topic) + " out of range");
    std::vector<std::pair<double, std::string>> all;
    all.reserve(m.vocab.size());
    for (std::size_t w = 0; w < m.vocab.size(); ++w)
        all.emplace_back(m.phi(topic, static_cast<Eigen::Index>(w)), m.vocab[w]);
    const std::size_t k = std::min(n, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                      [](const auto& a, const auto& b) {
                          return a.first != b.first ? a.first > b.first : a.second < b.second;
                      });
    all.resize(k);
    return all;
}

// "topic_<i>: 0.040*child+0.032*care+..."
inline std::string format_topic(const TopicModel& m, int topic, std::size_t n) {
    std::string out = "topic_" + std::to_string(topic) + ": ";
    bool first = true;
    for (const auto& [w, tok] : top_words(m, topic, n)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f*", w);
        if (!first) out += '+';
        out += buf;
        out += tok;
        first = false;
    }
    return out;
}

}  // namespace pei
