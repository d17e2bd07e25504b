#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "emdsvr/svr.hpp"

namespace emdsvr {

struct Bounds {
    double low = 0.0;
    double high = 1.0;
};

/// Default SVR search box in log10 space: C, epsilon, gamma.
std::vector<Bounds> default_svr_bounds();

struct PsoConfig {
    std::size_t swarm_size = 10;
    std::size_t iterations = 50;
    double c1 = 2.0;
    double c2 = 2.0;
    double inertia_start = 0.9;
    double inertia_end = 0.4;
    std::vector<Bounds> bounds = default_svr_bounds();
    std::uint64_t seed = 0;
};

struct SearchResult {
    std::vector<double> best_position;
    double best_score = 0.0;
    std::vector<double> history;  // global best after each iteration
};

using Objective = std::function<double(std::span<const double>)>;

/// Global-best particle swarm minimisation. Inertia decays linearly from
/// inertia_start to inertia_end; positions are clamped to the bounds.
/// Particle evaluations within an iteration run in parallel, so the
/// objective must be safe to call concurrently.
SearchResult optimize(const Objective& objective, const PsoConfig& cfg);

namespace serial {
/// Same search with sequential particle evaluation; bit-identical result.
SearchResult optimize(const Objective& objective, const PsoConfig& cfg);
}  // namespace serial

/// Mean validation RMSE over k contiguous blocks (temporal order preserved).
double cv_objective(const PatternMatrix& x, std::span<const double> y, const SvrParams& params,
                    std::size_t k = 10);

/// Maps a log10-space position (C, epsilon, gamma) onto SVR parameters.
/// The gamma coordinate is ignored for a linear kernel.
SvrParams params_from_position(std::span<const double> position, KernelSpec::Kind kind);

}  // namespace emdsvr
