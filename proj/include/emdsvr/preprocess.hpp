#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "emdsvr/series.hpp"

namespace emdsvr {

struct MannKendallResult {
    long long s = 0;
    double variance = 0.0;
    double z = 0.0;
    double p = 1.0;
    bool trend_detected = false;
};

/// Two-sided Mann-Kendall trend test with tie-corrected variance and
/// continuity correction. A constant series yields S = 0, p = 1.
MannKendallResult mann_kendall(std::span<const double> x, double alpha = 0.05);

/// Multiplicative seasonal indices, one per phase, with mean exactly 1.
/// Phase of sample i is i mod period.
struct SeasonalModel {
    std::size_t period = 12;
    std::vector<double> indices;

    double index_at(std::ptrdiff_t sample) const;
};

/// Polynomial in the sample index, coefficients in ascending powers.
struct TrendModel {
    std::size_t degree = 0;
    std::vector<double> coefficients;
    bool present = false;

    double at(std::ptrdiff_t sample) const;
};

struct PreprocessPipeline {
    std::optional<SeasonalModel> seasonal;
    TrendModel trend;
    MannKendallResult trend_test;
};

/// Ratio-to-centred-moving-average indices using per-phase medians.
/// Requires strictly positive values and at least two full periods.
SeasonalModel fit_seasonal(std::span<const double> x, std::size_t period);

/// Least-squares polynomial of the given degree in the sample index.
TrendModel fit_trend(std::span<const double> x, std::size_t degree);

/// Seasonal model, then Mann-Kendall on the deseasonalized series and, when a
/// trend is detected, a degree-1 or degree-2 polynomial trend (degree 2 only
/// if it lowers the in-sample SSE by more than 1%).
PreprocessPipeline fit_pipeline(const Series& s, std::size_t period = 12, double alpha = 0.05);

/// Divide by the seasonal index, then subtract the trend. `first_index` is the
/// position of values[0] on the training axis.
std::vector<double> apply(const PreprocessPipeline& p, std::span<const double> values,
                          std::ptrdiff_t first_index = 0);
Series apply(const PreprocessPipeline& p, const Series& s);

/// Add the trend, then multiply by the seasonal index. Inverse of apply().
std::vector<double> invert(const PreprocessPipeline& p, std::span<const double> values,
                           std::ptrdiff_t first_index);

}  // namespace emdsvr
