#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace emdsvr {

/// Symmetric MAPE in percent, 100 * mean |x - f| / ((|x| + |f|) / 2).
/// A term with x = f = 0 contributes 0.
double smape(std::span<const double> actual, std::span<const double> forecast);

/// Pooled SMAPE over several series: one mean over all M*T terms.
double smape(const std::vector<std::vector<double>>& actual,
             const std::vector<std::vector<double>>& forecast);

/// Mean absolute error scaled by the in-sample mean absolute first
/// difference of `estimation`. Throws UndefinedScaleError when that is 0.
double mase(std::span<const double> actual, std::span<const double> forecast,
            std::span<const double> estimation);

struct AnovaResult {
    double f = 0.0;
    double p = 1.0;
    std::size_t df_between = 0;
    std::size_t df_within = 0;
    double ms_within = 0.0;
};

AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups);

/// P(Q <= q) for the studentized range of k means with df degrees of
/// freedom for the variance estimate (df = 0 means infinite).
double studentized_range_cdf(double q, std::size_t k, std::size_t df);

/// Upper-alpha critical value: P(Q > q) = alpha.
double studentized_range_quantile(double alpha, std::size_t k, std::size_t df);

struct PairComparison {
    double difference = 0.0;  // mean(row) - mean(col)
    bool significant = false;
};

struct TukeyResult {
    std::vector<double> means;
    std::vector<std::vector<PairComparison>> pairwise;
    std::vector<std::size_t> ranks;  // group indices, ascending mean
    double q_critical = 0.0;
    double hsd = 0.0;
    std::size_t df = 0;
};

/// Tukey honestly-significant-difference comparison of balanced groups.
TukeyResult tukey_hsd(const std::vector<std::vector<double>>& groups, double alpha = 0.05);

/// "A <* B < C": labels in rank order, '*' where the adjacent pair differs
/// significantly.
std::string rank_chain(const TukeyResult& t, const std::vector<std::string>& labels);

struct AccuracyReport {
    std::string model;
    std::size_t horizon = 0;
    double smape_mean = 0.0;
    double smape_std = 0.0;
    double mase_mean = 0.0;
    double mase_std = 0.0;
    std::size_t runs = 0;
    std::size_t failed = 0;
    std::vector<std::string> series;
    std::vector<double> series_smape;  // per series, mean over replications
    std::vector<double> series_mase;
};

}  // namespace emdsvr
