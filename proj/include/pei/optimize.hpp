#pragma once

// Quasi-Newton minimisation with finite-difference derivatives.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace pei::optim {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct BfgsOptions {
    int max_iterations = 500;
    double gradient_tolerance = 1e-6;  // on |g|_inf / max(1, |f|)
    double function_tolerance = 1e-13; // relative change that counts as stalled
    double max_step = 5.0;             // longest trial step in parameter space
};

struct BfgsResult {
    Eigen::VectorXd x;
    double value = std::numeric_limits<double>::infinity();
    Eigen::VectorXd gradient;
    int iterations = 0;
    bool converged = false;
};

inline double safe_eval(const Objective& f, const Eigen::VectorXd& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

// Central differences with step proportional to max(1, |x_i|).
inline Eigen::VectorXd numerical_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step = 1e-6) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = rel_step * std::max(1.0, std::abs(x(i)));
        xp(i) = x(i) + h;
        const double fp = safe_eval(f, xp);
        xp(i) = x(i) - h;
        const double fm = safe_eval(f, xp);
        xp(i) = x(i);
        if (std::isfinite(fp) && std::isfinite(fm)) {
            g(i) = (fp - fm) / (2.0 * h);
        } else {
            const double f0 = safe_eval(f, x);
            g(i) = std::isfinite(fp) ? (fp - f0) / h : (f0 - fm) / h;
        }
    }
    return g;
}

inline double scaled_gradient_norm(const Eigen::VectorXd& g, double f) {
    return g.cwiseAbs().maxCoeff() / std::max(1.0, std::abs(f));
}

inline BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x0, const BfgsOptions& opt = {}) {
    const Eigen::Index n = x0.size();
    BfgsResult r;
    r.x = std::move(x0);
    r.value = safe_eval(f, r.x);
    if (!std::isfinite(r.value)) return r;
    r.gradient = numerical_gradient(f, r.x);
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);  // inverse Hessian
    int stalls = 0;

    for (r.iterations = 0; r.iterations < opt.max_iterations; ++r.iterations) {
        if (scaled_gradient_norm(r.gradient, r.value) < opt.gradient_tolerance) {
            r.converged = true;
            return r;
        }
        Eigen::VectorXd dir = -H * r.gradient;
        if (dir.dot(r.gradient) >= 0.0) {
            H.setIdentity();
            dir = -r.gradient;
        }
        const double len = dir.norm();
        if (len > opt.max_step) dir *= opt.max_step / len;

        // Backtracking with the Armijo condition.
        const double slope = dir.dot(r.gradient);
        double step = 1.0;
        Eigen::VectorXd x_new;
        double f_new = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            x_new = r.x + step * dir;
            f_new = safe_eval(f, x_new);
            if (f_new <= r.value + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (H.isIdentity()) break;
            H.setIdentity();
            continue;
        }

        const Eigen::VectorXd g_new = numerical_gradient(f, x_new);
        const Eigen::VectorXd s = x_new - r.x;
        const Eigen::VectorXd y = g_new - r.gradient;
        const double rel_change = (r.value - f_new) / std::max(1.0, std::abs(r.value));
        r.x = x_new;
        r.value = f_new;
        r.gradient = g_new;

        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
            H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
        }

        stalls = rel_change < opt.function_tolerance ? stalls + 1 : 0;
        if (stalls >= 3) break;
    }
    // Finite-difference noise can keep the strict test from firing at a
    // genuine optimum; accept a looser gradient bound when progress stalls.
    r.converged = scaled_gradient_norm(r.gradient, r.value) < 1e3 * opt.gradient_tolerance;
    return r;
}

// Central-difference Hessian. `steps` gives the per-coordinate step; where
// the stencil leaves the objective's domain the centre is shifted inwards
// by one step for that coordinate.
inline Eigen::MatrixXd numerical_hessian(const Objective& f, const Eigen::VectorXd& x, const Eigen::VectorXd& steps) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd c = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (double shift : {0.0, 1.0, -1.0, 2.0, -2.0}) {
            Eigen::VectorXd lo = x, hi = x;
            lo(i) += (shift - 1.0) * steps(i);
            hi(i) += (shift + 1.0) * steps(i);
            if (std::isfinite(safe_eval(f, lo)) && std::isfinite(safe_eval(f, hi))) {
                c(i) = x(i) + shift * steps(i);
                break;
            }
        }
    }
    const double f0 = safe_eval(f, c);
    Eigen::MatrixXd H(n, n);
    auto at = [&](Eigen::Index i, double di, Eigen::Index j, double dj) {
        Eigen::VectorXd p = c;
        p(i) += di * steps(i);
        p(j) += dj * steps(j);
        return safe_eval(f, p);
    };
    for (Eigen::Index i = 0; i < n; ++i) {
        H(i, i) = (at(i, 1, i, 0) - 2.0 * f0 + at(i, -1, i, 0)) / (steps(i) * steps(i));
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) /
                             (4.0 * steps(i) * steps(j));
            H(i, j) = H(j, i) = v;
        }
    }
    return H;
}

}  // namespace pei::optim
