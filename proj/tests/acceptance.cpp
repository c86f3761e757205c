// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "entropy_oracle.hpp"
#include "pei/pipeline.hpp"
#include "sim.hpp"
#include "test_util.hpp"

using namespace pei;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double max_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= max_seconds) {
        r.pass = false;
        r.detail += " [too slow, limit " + std::to_string(static_cast<int>(max_seconds)) + " s]";
    }
    if (!r.pass) ++failures;
    std::printf("%s  %2d  %-32s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", id, name, secs, r.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

KeywordCountMatrix to_matrix(const std::vector<std::vector<long long>>& rows) {
    KeywordCountMatrix m;
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto k = static_cast<Eigen::Index>(rows[0].size());
    for (Eigen::Index j = 0; j < k; ++j) m.keywords.push_back("k" + std::to_string(j));
    m.dates = day_range(Date(2020, 1, 1), Date(2020, 1, 1) + static_cast<int>(n) - 1);
    m.counts.resize(n, k);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < k; ++j) m.counts(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

Outcome entropy_oracle() {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    int checked = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 2 + rng() % 9;  // 2..10 days
        const std::size_t m = 1 + rng() % 8;  // 1..8 keywords
        std::vector<std::vector<long long>> rows(n, std::vector<long long>(m));
        for (auto& r : rows)
            for (auto& v : r) v = rng() % 4 == 0 ? 0 : static_cast<long long>(rng() % 20);
        const auto want = oracle::entropy_weights(rows);
        const auto got = differentiation_coefficients(to_matrix(rows));
        if (got.d.size() != want.d.size()) return {false, "kept-column count differs at rep " + std::to_string(rep)};
        double dsum = 0.0;
        for (std::size_t j = 0; j < want.d.size(); ++j) {
            worst = std::max(worst, std::abs(got.d[j] - want.d[j]));
            dsum += want.d[j];
        }
        if (want.d.empty() || dsum == 0.0) continue;
        const auto w = entropy_weights(got.d);
        for (std::size_t j = 0; j < want.w.size(); ++j) worst = std::max(worst, std::abs(w[j] - want.w[j]));
        ++checked;
    }
    return {worst <= 1e-12, fmt("max |module - oracle| = %.2e over d and w (%g matrices with weights)", worst, checked)};
}

Outcome entropy_extremes() {
    double worst = 0.0;
    for (std::size_t n : {2u, 3u, 7u, 10u, 365u}) {
        std::vector<std::vector<long long>> rows(n, std::vector<long long>{5, 0});
        rows[n / 2][1] = 9;
        const auto d = differentiation_coefficients(to_matrix(rows)).d;
        worst = std::max({worst, std::abs(d[0] - 0.0), std::abs(d[1] - 1.0)});
    }
    return {worst <= 1e-12, fmt("uniform -> 0, one-hot -> 1, max error %.2e", worst)};
}

Outcome garch_recovery() {
    const sim::Garch truth;
    const std::array<double, 5> want{truth.mu, truth.ar1, truth.omega, truth.alpha1, truth.beta1};
    int good = 0;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto fit = fit_ar1_garch11(sim::ar1_garch11(5000, truth, seed));
        const auto got = fit.params.array();
        double worst = 0.0;
        for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, std::abs(got[i] - want[i]) / fit.se[i]);
        if (worst < 3.0) ++good;
        detail += fmt("%.2f ", worst);
    }
    return {good >= 4, std::to_string(good) + "/5 seeds within 3 se (worst |err|/se per seed: " + detail + ")"};
}

// Three AR(1)+GARCH(1,1) series whose standardised innovations follow a DCC process.
std::vector<std::vector<double>> dcc_garch_panel(std::size_t n, double a, double b, std::uint64_t seed) {
    const auto u = sim::dcc_residuals(n + 1, sim::equicorrelation(3, 0.4), a, b, seed);
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < 3; ++i) {
        const double mu = 0.1 * static_cast<double>(i), ar = 0.2, omega = 0.1, alpha = 0.08, beta = 0.85;
        std::vector<double> x(n + 1);
        double h = omega / (1.0 - alpha - beta), eps = 0.0;
        x[0] = mu / (1.0 - ar);
        for (std::size_t t = 1; t <= n; ++t) {
            h = omega + alpha * eps * eps + beta * h;
            eps = std::sqrt(h) * u[i][t];
            x[t] = mu + ar * x[t - 1] + eps;
        }
        out.push_back(std::move(x));
    }
    return out;
}

Outcome dcc_recovery() {
    int good = 0;
    bool pd = true;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto fit = fit_dcc_garch(dcc_garch_panel(4000, 0.05, 0.90, seed), {"a", "b", "c"});
        if (std::abs(fit.alpha - 0.05) <= 0.05 && std::abs(fit.beta - 0.90) <= 0.05) ++good;
        for (const auto& Q : fit.Q_path)
            pd = pd && Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Q).eigenvalues().minCoeff() > 0.0;
        detail += fmt("(%.3f, %.3f) ", fit.alpha, fit.beta);
    }
    return {good >= 4 && pd, std::to_string(good) + "/5 within 0.05, Q_t PD on every path: " + (pd ? "yes" : "no") +
                                 "; estimates " + detail};
}

Outcome dcc_degenerate() {
    const auto u = sim::dcc_residuals(500, sim::equicorrelation(3, 0.3), 0.05, 0.9, 3);
    DccOptions opt;
    opt.fixed = std::pair{0.0, 0.0};
    const auto fit = fit_dcc(u, opt);
    double worst = 0.0;
    for (const auto& R : fit.R_path) worst = std::max(worst, (R - fit.qbar).cwiseAbs().maxCoeff());
    return {worst <= 1e-12, fmt("max |R_t - Qbar| = %.2e over %g steps", worst, static_cast<double>(fit.R_path.size()))};
}

Outcome adf_calibration() {
    int wn = 0, ar = 0, rw = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        if (adf_test(sim::white_noise(500, seed), AdfSpec::C).p_value == 0.01) ++wn;
        if (adf_test(sim::ar1(500, 0.5, 1000 + seed), AdfSpec::C).p_value == 0.01) ++ar;
        if (adf_test(sim::random_walk(500, 2000 + seed), AdfSpec::C).p_value > 0.10) ++rw;
    }
    return {wn >= 95 && ar >= 95 && rw >= 95,
            fmt("white noise p=0.01: %g/100, AR(0.5) p=0.01: %g/100", wn, ar) +
                fmt(", random walk p>0.10: %g/100 (need 95 each)", rw)};
}

Outcome ccf_shift() {
    const auto base = sim::white_noise(1003, 11);
    const std::vector<double> x(base.begin() + 3, base.end());
    const std::vector<double> y(base.begin(), base.end() - 3);
    const auto c = ccf(y, x, 14);
    int arg = -14;
    for (int k = -14; k <= 14; ++k)
        if (c.at(k) > c.at(arg)) arg = k;

    // A follower that repeats the leader 10 days later, plus noise.
    const auto lead = sim::ar1(400, 0.3, 12);
    const auto noise = sim::white_noise(400, 13, 0.5);
    std::vector<double> follow(400);
    for (std::size_t t = 0; t < 400; ++t) follow[t] = (t >= 10 ? lead[t - 10] : 0.0) + noise[t];
    const auto cls = classify_ccf(ccf(follow, lead, 14));
    return {arg == 3 && c.at(3) > 0.99 && cls.long_positive,
            fmt("argmax %g, rho[3] = %.4f; 10-day shift long_positive = %g", arg, c.at(3), cls.long_positive)};
}

Outcome lda_separation() {
    const std::vector<std::string> left{"a", "b", "c"}, right{"x", "y", "z"};
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(100 + seed);
        std::vector<std::vector<std::string>> docs;
        for (int d = 0; d < 100; ++d) {
            const auto& vocab = d < 50 ? left : right;
            std::vector<std::string> doc;
            for (int i = 0; i < 20; ++i) doc.push_back(vocab[rng() % 3]);
            docs.push_back(std::move(doc));
        }
        LdaOptions opt;
        opt.topics = 2;
        opt.iterations = 500;
        opt.seed = seed;
        const auto m = fit_lda(docs, opt);
        bool separated = true;
        for (int k = 0; k < 2; ++k) {
            std::set<std::string> top;
            for (const auto& [w, tok] : top_words(m, k, 3)) top.insert(tok);
            const std::set<std::string> l(left.begin(), left.end()), r(right.begin(), right.end());
            separated = separated && (top == l || top == r);
        }
        if (separated) ++good;
    }
    return {good >= 4, std::to_string(good) + "/5 seeds with single-cluster top-3 words"};
}

Outcome table_shapes() {
    const std::vector<std::string> labels{
        "[Central].mu",   "[Central].ar1",  "[Central].omega", "[Central].alpha1", "[Central].beta1", "[covid].mu",
        "[covid].ar1",    "[covid].omega",  "[covid].alpha1",  "[covid].beta1",    "[stock].mu",      "[stock].ar1",
        "[stock].omega",  "[stock].alpha1", "[stock].beta1",   "[Joint]dcca1",     "[Joint]dccb1"};
    const auto fit = fit_dcc_garch(dcc_garch_panel(800, 0.05, 0.85, 21), {"Central", "covid", "stock"});
    const auto t = to_csv(param_table(fit));
    std::vector<std::string> got;
    for (const auto& r : t.rows) got.push_back(r[0]);
    const bool columns = t.header.size() >= 5 && t.header[1] == "Estimate" && t.header[2] == "Std. Error" &&
                         t.header[3] == "t value" && t.header[4] == "Pr(>|t|)";

    const auto cls = classification_table({{"A", {true, false, true}}, {"B", {false, true, true}}});
    const bool classify_ok =
        cls.header == csv::Row{"region", "right_volatility_bias", "short_negative", "long_positive"} &&
        cls.rows.back() == csv::Row{"Count", "1", "1", "2"};
    return {got == labels && columns && classify_ok,
            std::to_string(got.size()) + " parameter rows, labels " + (got == labels ? "match" : "differ") +
                ", statistic columns " + (columns ? "match" : "differ") + ", classify table " +
                (classify_ok ? "ok" : "wrong")};
}

Outcome report_determinism() {
    testutil::TempDir a, b;
    const auto cfg = load_config(std::string(PEI_SOURCE_DIR) + "/data/demo/demo.conf");
    const auto ra = run_pipeline(cfg, a.path());
    const auto rb = run_pipeline(cfg, b.path());
    if (ra.files != rb.files) return {false, "different artifact lists"};
    int csvs = 0;
    for (const auto& f : ra.files) {
        if (!f.ends_with(".csv")) continue;
        ++csvs;
        if (testutil::slurp(a.path(f)) != testutil::slurp(b.path(f))) return {false, f + " differs between runs"};
    }
    return {csvs > 0, std::to_string(csvs) + " CSV files byte-identical across two runs (time covers both runs)"};
}

}  // namespace

int main() {
    criterion(1, "entropy-weight oracle", 1, entropy_oracle);
    criterion(2, "entropy extremes", 1, entropy_extremes);
    criterion(3, "GARCH parameter recovery", 30, garch_recovery);
    criterion(4, "DCC recovery", 120, dcc_recovery);
    criterion(5, "DCC degenerate case", 5, dcc_degenerate);
    criterion(6, "ADF calibration", 30, adf_calibration);
    criterion(7, "CCF shift detection", 1, ccf_shift);
    criterion(8, "LDA separation", 30, lda_separation);
    criterion(9, "table shapes", 60, table_shapes);
    criterion(10, "report determinism", 120, report_determinism);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
