#pragma once

// Dense reference solver for the epsilon-SVR dual, independent of the SMO
// code: accelerated projected gradient over z = [a; a*] with exact projection
// onto {0 <= z <= C, sum a = sum a*}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct QpResult {
    std::vector<double> alpha;  // [a; a*]
    double objective = 0.0;
};

// K is n x n, row-major.
inline double svr_objective(const std::vector<double>& k, const std::vector<double>& y,
                            const std::vector<double>& z, double eps) {
    const std::size_t n = y.size();
    double quad = 0.0;
    double lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double bi = z[i] - z[i + n];
        double kb = 0.0;
        for (std::size_t j = 0; j < n; ++j) kb += k[i * n + j] * (z[j] - z[j + n]);
        quad += bi * kb;
        lin += -y[i] * bi + eps * (z[i] + z[i + n]);
    }
    return 0.5 * quad + lin;
}

// Projection onto the box intersected with sum(a) - sum(a*) = 0. The
// multiplier lam shifts a down and a* up; the balance is monotone in lam.
inline void project(std::vector<double>& v, std::size_t n, double c) {
    auto balance = [&](double lam) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += std::clamp(v[i] - lam, 0.0, c) - std::clamp(v[i + n] + lam, 0.0, c);
        }
        return s;
    };
    double lo = -1.0;
    double hi = 1.0;
    while (balance(lo) < 0.0) lo *= 2.0;
    while (balance(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (balance(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    const double lam = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = std::clamp(v[i] - lam, 0.0, c);
        v[i + n] = std::clamp(v[i + n] + lam, 0.0, c);
    }
}

inline double largest_eigenvalue(const std::vector<double>& k, std::size_t n) {
    std::vector<double> v(n, 1.0), w(n);
    double lam = 0.0;
    for (int it = 0; it < 500; ++it) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = 0.0;
            for (std::size_t j = 0; j < n; ++j) w[i] += k[i * n + j] * v[j];
            norm += w[i] * w[i];
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        lam = norm;
    }
    return lam;
}

inline QpResult solve_svr_dual(const std::vector<double>& k, const std::vector<double>& y, double c,
                               double eps, std::size_t iterations = 200000) {
    const std::size_t n = y.size();
    const double lip = 2.0 * largest_eigenvalue(k, n) * 1.01 + 1e-12;
    const double step = 1.0 / lip;

    std::vector<double> x(2 * n, 0.0), x_prev = x, p = x, grad(2 * n), kb(n);
    double t = 1.0;
    double f_prev = svr_objective(k, y, x, eps);
    for (std::size_t it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            kb[i] = 0.0;
            for (std::size_t j = 0; j < n; ++j) kb[i] += k[i * n + j] * (p[j] - p[j + n]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            grad[i] = kb[i] - y[i] + eps;
            grad[i + n] = -kb[i] + y[i] + eps;
        }
        x_prev = x;
        for (std::size_t i = 0; i < 2 * n; ++i) x[i] = p[i] - step * grad[i];
        project(x, n, c);

        const double f = svr_objective(k, y, x, eps);
        if (f > f_prev) {
            // adaptive restart
            t = 1.0;
            p = x;
        } else {
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            for (std::size_t i = 0; i < 2 * n; ++i) p[i] = x[i] + (t - 1.0) / t_next * (x[i] - x_prev[i]);
            t = t_next;
        }
        double moved = 0.0;
        for (std::size_t i = 0; i < 2 * n; ++i) moved = std::max(moved, std::abs(x[i] - x_prev[i]));
        f_prev = f;
        if (it > 100 && moved < 1e-13) break;
    }
    return {x, svr_objective(k, y, x, eps)};
}

}  // namespace oracle
