#pragma once

// Stationarity and dependence diagnostics: autocorrelation, Ljung-Box,
// augmented Dickey-Fuller, lagged cross-correlation and its shape
// classification.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "pei/error.hpp"

namespace pei {

namespace detail {

inline double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

inline double centered_ss(std::span<const double> x, double m) {
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s;
}

inline void require_non_constant(std::span<const double> x, const char* what) {
    if (x.empty() || std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); }))
        throw DegenerateSeriesError(std::string(what) + ": series is constant");
}

}  // namespace detail

// Sample autocorrelations for lags 0..max_lag (divisor-n convention).
inline std::vector<double> acf(std::span<const double> x, int max_lag) {
    if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= x.size())
        throw ArgumentError("acf: need 1 <= max_lag < series length");
    detail::require_non_constant(x, "acf");
    const double m = detail::mean(x);
    const double denom = detail::centered_ss(x, m);
    std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1);
    for (int k = 0; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < x.size(); ++t)
            s += (x[t] - m) * (x[t - static_cast<std::size_t>(k)] - m);
        rho[static_cast<std::size_t>(k)] = s / denom;
    }
    return rho;
}

struct LjungBox {
    double q = 0.0;
    double p_value = 1.0;
    int lags = 0;
};

// Q statistic from given autocorrelations rho[0..h].
inline LjungBox ljung_box_from_acf(std::span<const double> rho, std::size_t n) {
    const int h = static_cast<int>(rho.size()) - 1;
    const double nn = static_cast<double>(n);
    double q = 0.0;
    for (int k = 1; k <= h; ++k) q += rho[static_cast<std::size_t>(k)] * rho[static_cast<std::size_t>(k)] / (nn - k);
    q *= nn * (nn + 2.0);
    return {q, q > 0.0 ? boost::math::gamma_q(0.5 * h, 0.5 * q) : 1.0, h};
}

inline LjungBox ljung_box(std::span<const double> x, int h) {
    const auto rho = acf(x, h);
    return ljung_box_from_acf(rho, x.size());
}

// ---- augmented Dickey-Fuller ---------------------------------------------

enum class AdfSpec { NC, C, CT };

inline const char* to_string(AdfSpec s) {
    switch (s) {
        case AdfSpec::NC: return "nc";
        case AdfSpec::C: return "c";
        case AdfSpec::CT: return "ct";
    }
    return "?";
}

inline AdfSpec parse_adf_spec(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "nc") return AdfSpec::NC;
    if (s == "c") return AdfSpec::C;
    if (s == "ct") return AdfSpec::CT;
    throw ValidationError("unknown ADF specification '" + s + "' (expected nc, c or ct)");
}

struct AdfResult {
    AdfSpec spec = AdfSpec::C;
    double statistic = 0.0;
    double p_value = 0.0;
    int lags = 0;
    std::size_t nobs = 0;
};

namespace adf_tables {

// Dickey-Fuller tau quantiles (Fuller 1976, Table 10.A.2) by sample size.
inline constexpr std::array<double, 6> sizes{25, 50, 100, 250, 500, 1e5};
inline constexpr std::array<double, 8> probs{0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99};

using Grid = std::array<std::array<double, 8>, 6>;

inline constexpr Grid nc{{
    {-2.66, -2.26, -1.95, -1.60, 0.92, 1.33, 1.70, 2.16},
    {-2.62, -2.25, -1.95, -1.61, 0.91, 1.31, 1.66, 2.08},
    {-2.60, -2.24, -1.95, -1.61, 0.90, 1.29, 1.64, 2.03},
    {-2.58, -2.23, -1.95, -1.62, 0.89, 1.29, 1.63, 2.01},
    {-2.58, -2.23, -1.95, -1.62, 0.89, 1.28, 1.62, 2.00},
    {-2.58, -2.23, -1.95, -1.62, 0.89, 1.28, 1.62, 2.00},
}};

inline constexpr Grid c{{
    {-3.75, -3.33, -3.00, -2.62, -0.37, 0.00, 0.34, 0.72},
    {-3.58, -3.22, -2.93, -2.60, -0.40, -0.03, 0.29, 0.66},
    {-3.51, -3.17, -2.89, -2.58, -0.42, -0.05, 0.26, 0.63},
    {-3.46, -3.14, -2.88, -2.57, -0.42, -0.06, 0.24, 0.62},
    {-3.44, -3.13, -2.87, -2.57, -0.43, -0.07, 0.24, 0.61},
    {-3.43, -3.12, -2.86, -2.57, -0.44, -0.07, 0.23, 0.60},
}};

inline constexpr Grid ct{{
    {-4.38, -3.95, -3.60, -3.24, -1.14, -0.80, -0.50, -0.15},
    {-4.15, -3.80, -3.50, -3.18, -1.19, -0.87, -0.58, -0.24},
    {-4.04, -3.73, -3.45, -3.15, -1.22, -0.90, -0.62, -0.28},
    {-3.99, -3.69, -3.43, -3.13, -1.23, -0.92, -0.64, -0.31},
    {-3.98, -3.68, -3.42, -3.13, -1.24, -0.93, -0.65, -0.32},
    {-3.96, -3.66, -3.41, -3.12, -1.25, -0.94, -0.66, -0.33},
}};

inline const Grid& grid(AdfSpec s) {
    switch (s) {
        case AdfSpec::NC: return nc;
        case AdfSpec::C: return c;
        case AdfSpec::CT: return ct;
    }
    return c;
}

// Linear interpolation of y over increasing xs, clamped at the ends.
template <std::size_t N>
double interp(const std::array<double, N>& xs, const std::array<double, N>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    std::size_t i = 1;
    while (xs[i] < x) ++i;
    const double f = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + f * (ys[i] - ys[i - 1]);
}

// Critical values interpolated at sample size n, then p interpolated at the
// statistic; the result lies in [0.01, 0.99].
inline double p_value(AdfSpec spec, double stat, double n) {
    const Grid& g = grid(spec);
    std::array<double, 8> crit{};
    for (std::size_t q = 0; q < probs.size(); ++q) {
        std::array<double, 6> col{};
        for (std::size_t r = 0; r < sizes.size(); ++r) col[r] = g[r][q];
        crit[q] = interp(sizes, col, n);
    }
    return interp(crit, probs, stat);
}

}  // namespace adf_tables

inline int adf_default_lags(std::size_t n) {
    return static_cast<int>(std::floor(std::cbrt(static_cast<double>(n) - 1.0)));
}

// Regression dy_t = gamma*y_{t-1} + sum_i delta_i*dy_{t-i} [+ c [+ b*t]];
// the statistic is the t-ratio of gamma.
inline AdfResult adf_test(std::span<const double> x, AdfSpec spec, std::optional<int> lags = std::nullopt) {
    const std::size_t n = x.size();
    const int p = lags.value_or(n >= 2 ? adf_default_lags(n) : 0);
    if (p < 0) throw ArgumentError("adf_test: lags must be >= 0");
    if (n < 20 + static_cast<std::size_t>(p)) throw ArgumentError("adf_test: series too short for the lag order");
    detail::require_non_constant(x, "adf_test");

    const int deterministic = spec == AdfSpec::NC ? 0 : (spec == AdfSpec::C ? 1 : 2);
    const Eigen::Index rows = static_cast<Eigen::Index>(n) - 1 - p;
    const Eigen::Index cols = 1 + p + deterministic;
    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::size_t t = static_cast<std::size_t>(r + 1 + p);  // index of dy_t = x[t] - x[t-1]
        y(r) = x[t] - x[t - 1];
        X(r, 0) = x[t - 1];
        for (int i = 1; i <= p; ++i) X(r, i) = x[t - i] - x[t - i - 1];
        if (deterministic >= 1) X(r, 1 + p) = 1.0;
        if (deterministic == 2) X(r, 2 + p) = static_cast<double>(t);
    }
    if (rows <= cols) throw ArgumentError("adf_test: too few observations for regression");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < cols) throw DegenerateSeriesError("adf_test: singular regression");
    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd resid = y - X * beta;
    const double s2 = resid.squaredNorm() / static_cast<double>(rows - cols);
    const Eigen::MatrixXd xtx_inv = (X.transpose() * X).inverse();
    const double se = std::sqrt(s2 * xtx_inv(0, 0));
    if (!(se > 0.0) || !std::isfinite(se)) throw DegenerateSeriesError("adf_test: zero residual variance");

    AdfResult res;
    res.spec = spec;
    res.statistic = beta(0) / se;
    res.lags = p;
    res.nobs = static_cast<std::size_t>(rows);
    res.p_value = adf_tables::p_value(spec, res.statistic, static_cast<double>(rows));
    return res;
}

// ---- cross-correlation -----------------------------------------------------

struct CcfResult {
    int max_lag = 0;
    std::size_t n = 0;
    double band = 0.0;        // 2 / sqrt(n)
    std::vector<double> rho;  // lags -max_lag..max_lag

    // rho[k] = corr(y_t, x_{t-k}).
    double at(int k) const { return rho.at(static_cast<std::size_t>(k + max_lag)); }
};

inline CcfResult ccf(std::span<const double> y, std::span<const double> x, int max_lag) {
    if (y.size() != x.size()) throw ArgumentError("ccf: series lengths differ");
    if (max_lag < 0) throw ArgumentError("ccf: max_lag must be >= 0");
    const std::size_t n = y.size();
    if (n <= 2 * static_cast<std::size_t>(max_lag)) throw ArgumentError("ccf: need n > 2 * max_lag");
    detail::require_non_constant(y, "ccf");
    detail::require_non_constant(x, "ccf");
    const double my = detail::mean(y);
    const double mx = detail::mean(x);
    const double denom = std::sqrt(detail::centered_ss(y, my) * detail::centered_ss(x, mx));

    CcfResult r;
    r.max_lag = max_lag;
    r.n = n;
    r.band = 2.0 / std::sqrt(static_cast<double>(n));
    r.rho.resize(2 * static_cast<std::size_t>(max_lag) + 1);
    for (int k = -max_lag; k <= max_lag; ++k) {
        // Pairs (y_t, x_{t-k}) are always enumerated with t ascending, so
        // swapping arguments sums the same products in the same order.
        double s = 0.0;
        if (k >= 0) {
            for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t)
                s += (y[t] - my) * (x[t - static_cast<std::size_t>(k)] - mx);
        } else {
            const std::size_t m = static_cast<std::size_t>(-k);
            for (std::size_t t = 0; t + m < n; ++t) s += (y[t] - my) * (x[t + m] - mx);
        }
        r.rho[static_cast<std::size_t>(k + max_lag)] = s / denom;
    }
    return r;
}

struct CcfClassification {
    bool right_volatility_bias = false;
    bool short_negative = false;
    bool long_positive = false;
};

struct ClassifyOptions {
    int short_horizon = 7;     // lags 0..short_horizon form the short-time window
    int short_majority = 5;    // negative lags required within that window
};

inline CcfClassification classify_ccf(const CcfResult& c, const ClassifyOptions& opt = {}) {
    if (c.max_lag <= opt.short_horizon)
        throw ArgumentError("classify_ccf: max_lag must be >= " + std::to_string(opt.short_horizon + 1));
    CcfClassification out;
    double right = 0.0;
    double left = 0.0;
    for (int k = 1; k <= c.max_lag; ++k) {
        right += c.at(k) * c.at(k);
        left += c.at(-k) * c.at(-k);
    }
    out.right_volatility_bias = right > left;

    double sum = 0.0;
    int negatives = 0;
    for (int k = 0; k <= opt.short_horizon; ++k) {
        sum += c.at(k);
        if (c.at(k) < 0.0) ++negatives;
    }
    out.short_negative = sum < 0.0 && negatives >= opt.short_majority;

    for (int k = opt.short_horizon + 1; k <= c.max_lag; ++k)
        if (c.at(k) > c.band) out.long_positive = true;
    return out;
}

}  // namespace pei
