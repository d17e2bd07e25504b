#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace emdsvr {

/// Columns of conditioning variables, each the same length as x and y.
using ColumnSet = std::vector<std::vector<double>>;

/// Gaussian-reference bandwidth 1.06 * sd * n^(-1/5). Throws ArgumentError
/// when the sample has zero variance.
double reference_bandwidth(std::span<const double> x);

/// Mutual information in nats from product Gaussian kernel density estimates,
/// clamped at zero. Requires equal lengths of at least 30.
double mutual_information(std::span<const double> x, std::span<const double> y);

/// Nadaraya-Watson estimate of E[x | z] at every sample.
std::vector<double> conditional_mean(std::span<const double> x, const ColumnSet& z);

/// MI of the residuals x - E[x|z] and y - E[y|z]. Equals
/// mutual_information(x, y) exactly when z is empty.
double partial_mutual_information(std::span<const double> x, std::span<const double> y,
                                  const ColumnSet& z);

namespace serial {
/// Single-threaded reference for mutual_information(); bit-identical results.
double mutual_information(std::span<const double> x, std::span<const double> y);
}  // namespace serial

struct LagSet {
    std::vector<std::size_t> lags;  // in selection order
    std::vector<double> scores;     // PMI of each lag when it was selected
};

struct LagSelectionOptions {
    std::size_t max_lag = 12;
    std::size_t permutations = 100;
    double percentile = 0.95;
    std::uint64_t seed = 0;
};

/// Greedy forward selection of lags 1..max_lag by partial mutual information
/// with the current value, conditioned on the lags already chosen. Stops when
/// the best candidate does not exceed the given percentile of its own
/// permutation-surrogate PMI scores, or when every lag is selected.
LagSet select_inputs(std::span<const double> s, const LagSelectionOptions& opts = {});

}  // namespace emdsvr
