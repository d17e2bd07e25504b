#include "emdsvr/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "emdsvr/error.hpp"

namespace emdsvr {

std::vector<Bounds> default_svr_bounds() {
    return {{-2.0, 3.0}, {-4.0, 0.0}, {-3.0, 2.0}};
}

namespace {

void validate(const PsoConfig& cfg) {
    if (cfg.swarm_size < 2) throw ArgumentError("PSO swarm size must be at least 2");
    if (cfg.iterations < 1) throw ArgumentError("PSO needs at least one iteration");
    if (cfg.bounds.empty()) throw ArgumentError("PSO needs at least one dimension");
    for (const auto& b : cfg.bounds) {
        if (!(b.low < b.high)) throw ArgumentError("PSO bounds must satisfy low < high");
    }
}

template <typename Evaluate>
SearchResult run_swarm(const Objective& objective, const PsoConfig& cfg, Evaluate evaluate) {
    validate(cfg);
    const std::size_t dim = cfg.bounds.size();
    const std::size_t m = cfg.swarm_size;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::vector<double>> pos(m, std::vector<double>(dim));
    std::vector<std::vector<double>> vel(m, std::vector<double>(dim));
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t d = 0; d < dim; ++d) {
            const auto& b = cfg.bounds[d];
            const double span = b.high - b.low;
            pos[p][d] = b.low + unit(rng) * span;
            vel[p][d] = (2.0 * unit(rng) - 1.0) * 0.1 * span;
        }
    }

    std::vector<double> score(m);
    evaluate(objective, pos, score);
    std::vector<std::vector<double>> pbest = pos;
    std::vector<double> pbest_score = score;
    std::size_t g = 0;
    for (std::size_t p = 1; p < m; ++p) {
        if (pbest_score[p] < pbest_score[g]) g = p;
    }
    SearchResult out;
    out.best_position = pbest[g];
    out.best_score = pbest_score[g];
    out.history.reserve(cfg.iterations);

    for (std::size_t it = 0; it < cfg.iterations; ++it) {
        const double w =
            cfg.iterations == 1
                ? cfg.inertia_start
                : cfg.inertia_start - (cfg.inertia_start - cfg.inertia_end) *
                                          static_cast<double>(it) /
                                          static_cast<double>(cfg.iterations - 1);
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t d = 0; d < dim; ++d) {
                const auto& b = cfg.bounds[d];
                const double vmax = b.high - b.low;
                const double r1 = unit(rng);
                const double r2 = unit(rng);
                double v = w * vel[p][d] + cfg.c1 * r1 * (pbest[p][d] - pos[p][d]) +
                           cfg.c2 * r2 * (out.best_position[d] - pos[p][d]);
                v = std::clamp(v, -vmax, vmax);
                vel[p][d] = v;
                pos[p][d] = std::clamp(pos[p][d] + v, b.low, b.high);
            }
        }
        evaluate(objective, pos, score);
        for (std::size_t p = 0; p < m; ++p) {
            if (score[p] < pbest_score[p]) {
                pbest_score[p] = score[p];
                pbest[p] = pos[p];
            }
            if (score[p] < out.best_score) {
                out.best_score = score[p];
                out.best_position = pos[p];
            }
        }
        out.history.push_back(out.best_score);
    }
    return out;
}

double checked(double v) {
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace

SearchResult optimize(const Objective& objective, const PsoConfig& cfg) {
    return run_swarm(objective, cfg, [](const Objective& f, const auto& pos, auto& score) {
        const auto m = static_cast<std::ptrdiff_t>(pos.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t p = 0; p < m; ++p) {
            score[static_cast<std::size_t>(p)] = checked(f(pos[static_cast<std::size_t>(p)]));
        }
    });
}

namespace serial {

SearchResult optimize(const Objective& objective, const PsoConfig& cfg) {
    return run_swarm(objective, cfg, [](const Objective& f, const auto& pos, auto& score) {
        for (std::size_t p = 0; p < pos.size(); ++p) score[p] = checked(f(pos[p]));
    });
}

}  // namespace serial

double cv_objective(const PatternMatrix& x, std::span<const double> y, const SvrParams& params,
                    std::size_t k) {
    const std::size_t n = y.size();
    if (x.size() != n) throw ArgumentError("pattern and target counts differ");
    if (k < 2) throw ArgumentError("cross-validation needs at least two folds");
    if (n < k) {
        throw ArgumentError("cross-validation needs at least " + std::to_string(k) +
                            " samples, got " + std::to_string(n));
    }
    double total = 0.0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t lo = f * n / k;
        const std::size_t hi = (f + 1) * n / k;
        PatternMatrix xt;
        std::vector<double> yt;
        xt.reserve(n - (hi - lo));
        yt.reserve(n - (hi - lo));
        for (std::size_t i = 0; i < n; ++i) {
            if (i < lo || i >= hi) {
                xt.push_back(x[i]);
                yt.push_back(y[i]);
            }
        }
        const SvrModel m = train(xt, yt, params);
        double sse = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double e = y[i] - predict(m, x[i]);
            sse += e * e;
        }
        total += std::sqrt(sse / static_cast<double>(hi - lo));
    }
    return total / static_cast<double>(k);
}

SvrParams params_from_position(std::span<const double> position, KernelSpec::Kind kind) {
    if (position.size() < 2) throw ArgumentError("position needs at least C and epsilon");
    SvrParams p;
    p.c = std::pow(10.0, position[0]);
    p.epsilon = std::pow(10.0, position[1]);
    if (kind == KernelSpec::Kind::Rbf) {
        if (position.size() < 3) throw ArgumentError("RBF position needs a gamma coordinate");
        p.kernel = KernelSpec::rbf(std::pow(10.0, position[2]));
    } else {
        p.kernel = KernelSpec::linear();
    }
    return p;
}

}  // namespace emdsvr
