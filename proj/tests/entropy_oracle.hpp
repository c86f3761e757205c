#pragma once

// Independent evaluation of the differentiation coefficients and weights,
// using sum p ln p = (sum c ln c) / S - ln S in extended precision.

#include <cmath>
#include <vector>

namespace oracle {

struct EntropyWeights {
    std::vector<int> kept;  // column indices with a positive total
    std::vector<double> d;
    std::vector<double> w;
};

// counts[i][j]: day i, keyword j.
inline EntropyWeights entropy_weights(const std::vector<std::vector<long long>>& counts) {
    EntropyWeights out;
    const std::size_t n = counts.size();
    const std::size_t m = n ? counts[0].size() : 0;
    const long double log_n = std::log(static_cast<long double>(n));
    for (std::size_t j = 0; j < m; ++j) {
        long double total = 0, clogc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const long double c = static_cast<long double>(counts[i][j]);
            total += c;
            if (c > 0) clogc += c * std::log(c);
        }
        if (total == 0) continue;
        const long double plogp = clogc / total - std::log(total);
        out.kept.push_back(static_cast<int>(j));
        out.d.push_back(static_cast<double>(1.0L + plogp / log_n));
    }
    long double sum = 0;
    for (double v : out.d) sum += v;
    for (double v : out.d) out.w.push_back(static_cast<double>(v / sum));
    return out;
}

}  // namespace oracle
