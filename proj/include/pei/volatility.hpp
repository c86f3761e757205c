#pragma once

// AR(1)+GARCH(1,1) and two-stage DCC(1,1) estimation by Gaussian
// quasi-maximum likelihood, with covariance paths and group aggregates.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pei/csv.hpp"
#include "pei/diagnostics.hpp"
#include "pei/error.hpp"
#include "pei/optimize.hpp"
#include "pei/random.hpp"

namespace pei {

inline constexpr std::array<const char*, 5> garch_param_names{"mu", "ar1", "omega", "alpha1", "beta1"};

// r_t = mu + ar1*r_{t-1} + eps_t,  sigma2_t = omega + alpha1*eps_{t-1}^2 + beta1*sigma2_{t-1}
struct GarchParams {
    double mu = 0.0;
    double ar1 = 0.0;
    double omega = 0.0;
    double alpha1 = 0.0;
    double beta1 = 0.0;

    std::array<double, 5> array() const { return {mu, ar1, omega, alpha1, beta1}; }
    static GarchParams from(std::span<const double> v) { return {v[0], v[1], v[2], v[3], v[4]}; }
};

struct GarchPath {
    std::vector<double> eps;     // length n - 1, first observation is conditioned on
    std::vector<double> sigma2;
    double loglik = -std::numeric_limits<double>::infinity();
};

// Runs the recursion with sigma2 started at the sample variance of the
// residuals. loglik is -inf when any variance is non-positive.
inline GarchPath garch_filter(std::span<const double> x, const GarchParams& p) {
    GarchPath path;
    const std::size_t m = x.size() < 2 ? 0 : x.size() - 1;
    path.eps.resize(m);
    path.sigma2.resize(m);
    if (m == 0) return path;
    double mean = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        path.eps[t] = x[t + 1] - p.mu - p.ar1 * x[t];
        mean += path.eps[t];
    }
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (double e : path.eps) var += (e - mean) * (e - mean);
    var /= static_cast<double>(m);

    constexpr double log_2pi = 1.8378770664093454836;
    double ll = 0.0;
    double s2 = var;
    for (std::size_t t = 0; t < m; ++t) {
        if (t > 0) s2 = p.omega + p.alpha1 * path.eps[t - 1] * path.eps[t - 1] + p.beta1 * s2;
        if (!(s2 > 0.0) || !std::isfinite(s2)) return path;
        path.sigma2[t] = s2;
        ll -= 0.5 * (log_2pi + std::log(s2) + path.eps[t] * path.eps[t] / s2);
    }
    path.loglik = ll;
    return path;
}

// Likelihood surface of one series. Optimisation runs on the standardised
// series z = (x - mean) / sd in an unconstrained space
//   (mu_z, ar1, log omega_z, log(alpha/(1-alpha-beta)), log(beta/(1-alpha-beta)))
// which maps onto omega > 0, alpha, beta > 0, alpha + beta < 1.
class GarchObjective {
public:
    explicit GarchObjective(std::span<const double> x) : x_(x.begin(), x.end()) {
        const double m = detail::mean(x);
        const double ss = detail::centered_ss(x, m);
        mean_ = m;
        sd_ = std::sqrt(ss / static_cast<double>(x.size()));
        z_.reserve(x.size());
        for (double v : x) z_.push_back((v - mean_) / sd_);
    }

    double mean() const { return mean_; }
    double sd() const { return sd_; }
    std::span<const double> standardized() const { return z_; }

    // Parameters for the standardised series <-> parameters for x.
    GarchParams to_original(const GarchParams& pz) const {
        return {mean_ * (1.0 - pz.ar1) + sd_ * pz.mu, pz.ar1, sd_ * sd_ * pz.omega, pz.alpha1, pz.beta1};
    }
    GarchParams to_standardized(const GarchParams& p) const {
        return {(p.mu - mean_ * (1.0 - p.ar1)) / sd_, p.ar1, p.omega / (sd_ * sd_), p.alpha1, p.beta1};
    }
    // d(original)/d(standardised), a constant matrix because the map is affine.
    Eigen::Matrix<double, 5, 5> jacobian() const {
        Eigen::Matrix<double, 5, 5> A = Eigen::Matrix<double, 5, 5>::Identity();
        A(0, 0) = sd_;
        A(0, 1) = -mean_;
        A(2, 2) = sd_ * sd_;
        return A;
    }

    static GarchParams from_unconstrained(const Eigen::VectorXd& v) {
        const double ea = std::exp(v(3));
        const double eb = std::exp(v(4));
        const double denom = 1.0 + ea + eb;
        return {v(0), v(1), std::exp(v(2)), ea / denom, eb / denom};
    }
    static Eigen::VectorXd to_unconstrained(const GarchParams& p) {
        Eigen::VectorXd v(5);
        const double rest = 1.0 - p.alpha1 - p.beta1;
        v << p.mu, p.ar1, std::log(p.omega), std::log(p.alpha1 / rest), std::log(p.beta1 / rest);
        return v;
    }

    // Log-likelihood of x at original-scale parameters.
    double loglik(const GarchParams& p) const { return garch_filter(x_, p).loglik; }

    // Negative log-likelihood of the standardised series.
    double nll_standardized(const GarchParams& pz) const { return -garch_filter(z_, pz).loglik; }

    // Negative log-likelihood of x as a function of the unconstrained vector.
    double nll_unconstrained(const Eigen::VectorXd& v) const {
        const double nll = nll_standardized(from_unconstrained(v));
        return nll + static_cast<double>(x_.size() - 1) * std::log(sd_);
    }

private:
    std::vector<double> x_;
    std::vector<double> z_;
    double mean_ = 0.0;
    double sd_ = 1.0;
};

struct GarchFit {
    GarchParams params;
    std::array<double, 5> se{};  // NaN where the Hessian gives no information
    std::array<bool, 5> boundary{};
    double loglik = 0.0;
    std::vector<double> eps;
    std::vector<double> sigma2;
    std::vector<double> u;  // eps / sigma
    int starts = 0;
};

struct GarchOptions {
    int restarts = 5;
    std::uint64_t restart_seed = 7;
    optim::BfgsOptions bfgs{};
};

namespace detail {

inline constexpr double boundary_tol = 1e-4;

inline double normal_two_sided_p(double t) {
    if (!std::isfinite(t)) return std::isnan(t) ? t : 0.0;
    return std::erfc(std::abs(t) / std::numbers::sqrt2);
}

inline std::vector<double> standard_errors(const Eigen::MatrixXd& hessian, const Eigen::MatrixXd& jac) {
    std::vector<double> se(static_cast<std::size_t>(hessian.rows()), std::numeric_limits<double>::quiet_NaN());
    if (!hessian.allFinite()) return se;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(hessian);
    if (!lu.isInvertible()) return se;
    const Eigen::MatrixXd cov = jac * lu.inverse() * jac.transpose();
    for (Eigen::Index i = 0; i < cov.rows(); ++i)
        if (cov(i, i) > 0.0) se[static_cast<std::size_t>(i)] = std::sqrt(cov(i, i));
    return se;
}

}  // namespace detail

inline GarchFit fit_ar1_garch11(std::span<const double> x, const GarchOptions& opt = {}) {
    if (x.size() < 50) throw ArgumentError("fit_ar1_garch11: need at least 50 observations");
    detail::require_non_constant(x, "fit_ar1_garch11");
    const GarchObjective obj(x);
    const auto z = obj.standardized();

    double ar1_start = 0.0;
    {
        double num = 0.0, den = 0.0;
        for (std::size_t t = 0; t < z.size(); ++t) {
            den += z[t] * z[t];
            if (t > 0) num += z[t] * z[t - 1];
        }
        ar1_start = std::clamp(num / den, -0.9, 0.9);
    }
    const double resid_var = std::max(1.0 - ar1_start * ar1_start, 0.05);

    auto start_vector = [&](double ar1, double a, double b) {
        return GarchObjective::to_unconstrained({0.0, ar1, resid_var * (1.0 - a - b), a, b});
    };
    const optim::Objective f = [&](const Eigen::VectorXd& v) { return obj.nll_unconstrained(v); };

    std::optional<optim::BfgsResult> best;
    double best_any = std::numeric_limits<double>::infinity();
    int starts = 0;
    auto attempt = [&](const Eigen::VectorXd& v0) {
        ++starts;
        auto r = optim::minimize_bfgs(f, v0, opt.bfgs);
        best_any = std::min(best_any, r.value);
        if (r.converged && (!best || r.value < best->value)) best = std::move(r);
    };
    for (const auto& [a, b] : {std::pair{0.05, 0.90}, std::pair{0.10, 0.60}, std::pair{0.02, 0.20}})
        attempt(start_vector(ar1_start, a, b));

    std::mt19937_64 rng(opt.restart_seed);
    for (int k = 0; k < opt.restarts && !best; ++k) {
        const double a = 0.01 + 0.29 * detail::unit_uniform(rng);
        const double b = (0.95 - a) * detail::unit_uniform(rng);
        const double ar1 = std::clamp(ar1_start + 0.4 * (detail::unit_uniform(rng) - 0.5), -0.95, 0.95);
        attempt(start_vector(ar1, a, std::max(b, 0.01)));
    }
    if (!best)
        throw EstimationError("fit_ar1_garch11: optimiser did not converge after " + std::to_string(starts) +
                                  " starts (best log-likelihood " + std::to_string(-best_any) + ")",
                              -best_any);

    const GarchParams pz = GarchObjective::from_unconstrained(best->x);
    GarchFit fit;
    fit.params = obj.to_original(pz);
    fit.starts = starts;

    // Hessian in original-parameter coordinates of the standardised problem.
    const auto theta = pz.array();
    Eigen::VectorXd centre(5), steps(5);
    for (int i = 0; i < 5; ++i) {
        centre(i) = theta[static_cast<std::size_t>(i)];
        steps(i) = 1e-4 * std::max(std::abs(centre(i)), 0.05);
    }
    steps(2) = std::min(steps(2), 0.5 * centre(2));
    const optim::Objective g = [&](const Eigen::VectorXd& p) {
        return obj.nll_standardized(GarchParams::from(std::span<const double>(p.data(), 5)));
    };
    const Eigen::MatrixXd hess = optim::numerical_hessian(g, centre, steps);
    const auto se = detail::standard_errors(hess, obj.jacobian());
    std::copy(se.begin(), se.end(), fit.se.begin());

    fit.boundary = {false, false, pz.omega < detail::boundary_tol * 1e-2, pz.alpha1 < detail::boundary_tol,
                    pz.beta1 < detail::boundary_tol};
    if (pz.alpha1 + pz.beta1 > 1.0 - detail::boundary_tol) fit.boundary[3] = fit.boundary[4] = true;

    GarchPath path = garch_filter(x, fit.params);
    fit.loglik = path.loglik;
    fit.eps = std::move(path.eps);
    fit.sigma2 = std::move(path.sigma2);
    fit.u.resize(fit.eps.size());
    for (std::size_t t = 0; t < fit.eps.size(); ++t) fit.u[t] = fit.eps[t] / std::sqrt(fit.sigma2[t]);
    return fit;
}

// ---- DCC -------------------------------------------------------------------

struct DccPaths {
    std::vector<Eigen::MatrixXd> Q;
    std::vector<Eigen::MatrixXd> R;
    double loglik = -std::numeric_limits<double>::infinity();  // correlation component
    bool positive_definite = true;
};

// Q_1 = Qbar, Q_t = (1-a-b) Qbar + a u_{t-1} u_{t-1}' + b Q_{t-1},
// R_t = diag(Q_t)^{-1/2} Q_t diag(Q_t)^{-1/2}, and
// L_C = -1/2 sum_t (ln|R_t| + u_t' R_t^{-1} u_t - u_t' u_t).
// u is T x N. Paths are recorded only when `keep_paths`.
inline DccPaths dcc_filter(const Eigen::MatrixXd& u, const Eigen::MatrixXd& qbar, double a, double b,
                           bool keep_paths = true) {
    DccPaths out;
    const Eigen::Index T = u.rows();
    const Eigen::Index N = u.cols();
    if (keep_paths) {
        out.Q.reserve(static_cast<std::size_t>(T));
        out.R.reserve(static_cast<std::size_t>(T));
    }
    Eigen::MatrixXd Q = qbar;
    Eigen::MatrixXd R(N, N);
    const Eigen::MatrixXd base = (1.0 - a - b) * qbar;
    double ll = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
        if (t > 0) {
            const Eigen::VectorXd prev = u.row(t - 1).transpose();
            Q = base + a * prev * prev.transpose() + b * Q;
        }
        const Eigen::VectorXd d = Q.diagonal();
        if ((d.array() <= 0.0).any()) {
            out.positive_definite = false;
            return out;
        }
        const Eigen::VectorXd inv_sqrt = d.array().rsqrt();
        R = inv_sqrt.asDiagonal() * Q * inv_sqrt.asDiagonal();
        R.diagonal().setOnes();
        Eigen::LLT<Eigen::MatrixXd> llt(R);
        if (llt.info() != Eigen::Success) {
            out.positive_definite = false;
            return out;
        }
        const Eigen::VectorXd ut = u.row(t).transpose();
        const Eigen::VectorXd w = llt.matrixL().solve(ut);
        const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
        ll -= 0.5 * (logdet + w.squaredNorm() - ut.squaredNorm());
        if (keep_paths) {
            out.Q.push_back(Q);
            out.R.push_back(R);
        }
    }
    out.loglik = ll;
    return out;
}

struct DccOptions {
    std::optional<std::pair<double, double>> fixed;  // skip estimation, use (alpha, beta)
    int restarts = 5;
    std::uint64_t restart_seed = 11;
    GarchOptions garch{};
};

struct DccFit {
    std::vector<std::string> names;
    std::vector<GarchFit> fits;  // empty when fitted directly on standardised residuals
    double alpha = 0.0;
    double beta = 0.0;
    std::array<double, 2> se{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    std::array<bool, 2> boundary{};
    bool fixed = false;
    double loglik = 0.0;
    Eigen::MatrixXd qbar;
    std::vector<Eigen::MatrixXd> Q_path;
    std::vector<Eigen::MatrixXd> R_path;
    std::vector<Eigen::MatrixXd> H_path;  // filled when `fits` is
};

inline Eigen::MatrixXd sample_correlation(const Eigen::MatrixXd& u) {
    const Eigen::MatrixXd centered = u.rowwise() - u.colwise().mean();
    const Eigen::MatrixXd cov = centered.transpose() * centered;
    const Eigen::VectorXd inv_sd = cov.diagonal().array().rsqrt();
    Eigen::MatrixXd r = inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
    r.diagonal().setOnes();
    return r;
}

inline Eigen::MatrixXd stack_columns(const std::vector<std::vector<double>>& cols) {
    if (cols.size() < 2) throw ArgumentError("need at least 2 series");
    const std::size_t T = cols.front().size();
    for (const auto& c : cols)
        if (c.size() != T) throw ArgumentError("series lengths differ");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t t = 0; t < T; ++t) m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = cols[j][t];
    return m;
}

// Correlation stage on standardised residual series (one vector per series).
inline DccFit fit_dcc(const std::vector<std::vector<double>>& u_list, const DccOptions& opt = {}) {
    const Eigen::MatrixXd u = stack_columns(u_list);
    if (u.rows() < 50) throw ArgumentError("fit_dcc: need at least 50 observations");
    if (!u.allFinite()) throw ArgumentError("fit_dcc: non-finite residuals");
    for (Eigen::Index j = 0; j < u.cols(); ++j)
        if ((u.col(j).array() == u(0, j)).all()) throw DegenerateSeriesError("fit_dcc: constant residual series");

    DccFit fit;
    fit.qbar = sample_correlation(u);
    if (Eigen::LLT<Eigen::MatrixXd>(fit.qbar).info() != Eigen::Success ||
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(fit.qbar).eigenvalues().minCoeff() <= 1e-12)
        throw EstimationError("fit_dcc: unconditional correlation matrix is not positive definite");

    auto from_unconstrained = [](const Eigen::VectorXd& v) {
        const double ea = std::exp(v(0));
        const double eb = std::exp(v(1));
        return std::pair{ea / (1.0 + ea + eb), eb / (1.0 + ea + eb)};
    };
    auto to_unconstrained = [](double a, double b) {
        Eigen::VectorXd v(2);
        v << std::log(a / (1.0 - a - b)), std::log(b / (1.0 - a - b));
        return v;
    };

    if (opt.fixed) {
        const auto [a, b] = *opt.fixed;
        if (a < 0.0 || b < 0.0 || a + b >= 1.0) throw ArgumentError("fit_dcc: fixed parameters violate constraints");
        fit.alpha = a;
        fit.beta = b;
        fit.fixed = true;
    } else {
        const optim::Objective f = [&](const Eigen::VectorXd& v) {
            const auto [a, b] = from_unconstrained(v);
            return -dcc_filter(u, fit.qbar, a, b, false).loglik;
        };
        std::optional<optim::BfgsResult> best;
        double best_any = std::numeric_limits<double>::infinity();
        auto attempt = [&](double a, double b) {
            auto r = optim::minimize_bfgs(f, to_unconstrained(a, b));
            best_any = std::min(best_any, r.value);
            if (r.converged && (!best || r.value < best->value)) best = std::move(r);
        };
        for (const auto& [a, b] : {std::pair{0.05, 0.90}, std::pair{0.02, 0.50}, std::pair{0.20, 0.50}}) attempt(a, b);
        std::mt19937_64 rng(opt.restart_seed);
        for (int k = 0; k < opt.restarts && !best; ++k) {
            const double a = 0.01 + 0.3 * detail::unit_uniform(rng);
            attempt(a, std::max(0.01, (0.95 - a) * detail::unit_uniform(rng)));
        }
        if (!best)
            throw EstimationError("fit_dcc: optimiser did not converge (best correlation log-likelihood " +
                                      std::to_string(-best_any) + ")",
                                  -best_any);
        std::tie(fit.alpha, fit.beta) = from_unconstrained(best->x);

        Eigen::Vector2d centre(fit.alpha, fit.beta);
        Eigen::Vector2d steps(1e-4 * std::max(fit.alpha, 0.05), 1e-4 * std::max(fit.beta, 0.05));
        const optim::Objective g = [&](const Eigen::VectorXd& p) {
            return -dcc_filter(u, fit.qbar, p(0), p(1), false).loglik;
        };
        const Eigen::MatrixXd hess = optim::numerical_hessian(g, centre, steps);
        const auto se = detail::standard_errors(hess, Eigen::Matrix2d::Identity());
        fit.se = {se[0], se[1]};
        fit.boundary = {fit.alpha < detail::boundary_tol, fit.beta < detail::boundary_tol};
        if (fit.alpha + fit.beta > 1.0 - detail::boundary_tol) fit.boundary = {true, true};
    }

    DccPaths paths = dcc_filter(u, fit.qbar, fit.alpha, fit.beta, true);
    if (!paths.positive_definite) throw EstimationError("fit_dcc: correlation path lost positive definiteness");
    fit.loglik = paths.loglik;
    fit.Q_path = std::move(paths.Q);
    fit.R_path = std::move(paths.R);
    return fit;
}

// H_t = D_t R_t D_t with D_t = diag(sigma_t); diagonal set to sigma2 exactly.
inline std::vector<Eigen::MatrixXd> dcc_covariance_series(const DccFit& d) {
    if (d.fits.size() != static_cast<std::size_t>(d.qbar.rows()))
        throw ArgumentError("dcc_covariance_series: fit carries no univariate variance paths");
    std::vector<Eigen::MatrixXd> H;
    H.reserve(d.R_path.size());
    const Eigen::Index N = d.qbar.rows();
    for (std::size_t t = 0; t < d.R_path.size(); ++t) {
        Eigen::VectorXd sd(N);
        for (Eigen::Index i = 0; i < N; ++i) sd(i) = std::sqrt(d.fits[static_cast<std::size_t>(i)].sigma2[t]);
        Eigen::MatrixXd h = sd.asDiagonal() * d.R_path[t] * sd.asDiagonal();
        for (Eigen::Index i = 0; i < N; ++i) h(i, i) = d.fits[static_cast<std::size_t>(i)].sigma2[t];
        H.push_back(std::move(h));
    }
    return H;
}

// Univariate fits per series, then the correlation stage on their
// standardised residuals.
inline DccFit fit_dcc_garch(const std::vector<std::vector<double>>& series, std::vector<std::string> names,
                            const DccOptions& opt = {}) {
    if (series.size() < 2) throw ArgumentError("fit_dcc_garch: need at least 2 series");
    if (names.size() != series.size()) throw ArgumentError("fit_dcc_garch: one name per series required");
    for (const auto& s : series)
        if (s.size() != series.front().size()) throw ArgumentError("fit_dcc_garch: series lengths differ");
    std::vector<GarchFit> fits;
    std::vector<std::vector<double>> u;
    for (std::size_t i = 0; i < series.size(); ++i) {
        try {
            fits.push_back(fit_ar1_garch11(series[i], opt.garch));
        } catch (const EstimationError& e) {
            throw EstimationError("series '" + names[i] + "': " + e.what(), e.best_loglik());
        } catch (const DegenerateSeriesError& e) {
            throw DegenerateSeriesError("series '" + names[i] + "': " + e.what());
        }
        u.push_back(fits.back().u);
    }
    DccFit d = fit_dcc(u, opt);
    d.names = std::move(names);
    d.fits = std::move(fits);
    d.H_path = dcc_covariance_series(d);
    return d;
}

// Labelled per-pair series from a covariance path: "a:a" variances then
// "a:b" covariances for a before b.
inline std::vector<std::pair<std::string, std::vector<double>>> covariance_pairs(
    const std::vector<Eigen::MatrixXd>& H, const std::vector<std::string>& names) {
    std::vector<std::pair<std::string, std::vector<double>>> out;
    const std::size_t N = names.size();
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) {
            std::vector<double> v;
            v.reserve(H.size());
            for (const auto& h : H) v.push_back(h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            out.emplace_back(names[i] + ":" + names[j], std::move(v));
        }
    return out;
}

// ---- groups ----------------------------------------------------------------

struct GroupSpec {
    std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
    bool allow_overlap = false;
};

// v_g(t) = sum_{i,j in g} H_t(i, j).
inline std::vector<std::pair<std::string, std::vector<double>>> group_volatility(
    const std::vector<Eigen::MatrixXd>& H, const GroupSpec& spec) {
    const Eigen::Index N = H.empty() ? 0 : H.front().rows();
    std::set<std::size_t> used;
    for (const auto& [name, idx] : spec.groups) {
        if (idx.empty()) throw ArgumentError("group '" + name + "' is empty");
        for (std::size_t i : idx) {
            if (static_cast<Eigen::Index>(i) >= N)
                throw ArgumentError("group '" + name + "': series index " + std::to_string(i) + " out of range");
            if (!used.insert(i).second && !spec.allow_overlap)
                throw ArgumentError("group '" + name + "': series index " + std::to_string(i) + " is in another group");
        }
    }
    std::vector<std::pair<std::string, std::vector<double>>> out;
    for (const auto& [name, idx] : spec.groups) {
        std::vector<double> v;
        v.reserve(H.size());
        for (const auto& h : H) {
            double s = 0.0;
            for (std::size_t i : idx)
                for (std::size_t j : idx) s += h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            v.push_back(s);
        }
        out.emplace_back(name, std::move(v));
    }
    return out;
}

// ---- inference table -------------------------------------------------------

struct ParamRow {
    std::string term;
    double estimate = 0.0;
    double std_error = 0.0;
    double t_value = 0.0;
    double p_value = 0.0;
    bool boundary = false;  // estimate on a constraint edge; p-value unreliable
};

struct ParamTable {
    std::vector<ParamRow> rows;
};

inline ParamRow make_row(std::string term, double est, double se, bool boundary) {
    const double t = est / se;
    return {std::move(term), est, se, t, detail::normal_two_sided_p(t), boundary};
}

inline void append_garch_rows(ParamTable& table, const std::string& name, const GarchFit& fit) {
    const auto est = fit.params.array();
    for (std::size_t i = 0; i < 5; ++i)
        table.rows.push_back(make_row("[" + name + "]." + garch_param_names[i], est[i], fit.se[i], fit.boundary[i]));
}

inline ParamTable garch_param_table(const GarchFit& fit, const std::string& name) {
    ParamTable t;
    append_garch_rows(t, name, fit);
    return t;
}

// Rows [name].mu .. [name].beta1 for every series, then [Joint]dcca1 and
// [Joint]dccb1.
inline ParamTable param_table(const DccFit& d) {
    ParamTable t;
    for (std::size_t i = 0; i < d.fits.size(); ++i)
        append_garch_rows(t, i < d.names.size() ? d.names[i] : "series" + std::to_string(i + 1), d.fits[i]);
    t.rows.push_back(make_row("[Joint]dcca1", d.alpha, d.se[0], d.boundary[0]));
    t.rows.push_back(make_row("[Joint]dccb1", d.beta, d.se[1], d.boundary[1]));
    return t;
}

inline const csv::Row param_table_header{"term", "Estimate", "Std. Error", "t value", "Pr(>|t|)", "note"};

inline csv::Table to_csv(const ParamTable& p) {
    csv::Table t{param_table_header, {}};
    for (const auto& r : p.rows)
        t.rows.push_back({r.term, csv::num(r.estimate), csv::num(r.std_error), csv::num(r.t_value),
                          csv::num(r.p_value), r.boundary ? "boundary" : ""});
    return t;
}

inline ParamTable parse_param_table(const csv::Table& t) {
    if (t.header != param_table_header) throw ValidationError("parameter table: unexpected header");
    ParamTable p;
    std::size_t line = 1;
    for (const auto& r : t.rows) {
        ++line;
        if (r.size() != 6) throw ValidationError("parameter table line " + std::to_string(line) + " malformed");
        p.rows.push_back({r[0], csv::parse_double(r[1], line), csv::parse_double(r[2], line),
                          csv::parse_double(r[3], line), csv::parse_double(r[4], line), r[5] == "boundary"});
    }
    return p;
}

}  // namespace pei
