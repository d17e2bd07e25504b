#include "emdsvr/preprocess.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "emdsvr/error.hpp"

namespace emdsvr {

MannKendallResult mann_kendall(std::span<const double> x, double alpha) {
    const std::size_t n = x.size();
    if (n < 8) throw ArgumentError("Mann-Kendall test needs at least 8 observations");

    MannKendallResult r;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (x[j] > x[i]) ++r.s;
            else if (x[j] < x[i]) --r.s;
        }
    }

    std::map<double, long long> ties;
    for (double v : x) ++ties[v];
    const auto nn = static_cast<double>(n);
    double tie_term = 0.0;
    for (const auto& [value, count] : ties) {
        if (count > 1) {
            const auto t = static_cast<double>(count);
            tie_term += t * (t - 1.0) * (2.0 * t + 5.0);
        }
    }
    r.variance = (nn * (nn - 1.0) * (2.0 * nn + 5.0) - tie_term) / 18.0;

    if (r.s == 0 || r.variance <= 0.0) {
        r.z = 0.0;
        r.p = 1.0;
    } else {
        const double corrected = r.s > 0 ? static_cast<double>(r.s) - 1.0 : static_cast<double>(r.s) + 1.0;
        r.z = corrected / std::sqrt(r.variance);
        r.p = std::clamp(std::erfc(std::abs(r.z) / std::numbers::sqrt2), 0.0, 1.0);
    }
    r.trend_detected = r.p < alpha;
    return r;
}

double SeasonalModel::index_at(std::ptrdiff_t sample) const {
    const auto p = static_cast<std::ptrdiff_t>(period);
    const auto phase = ((sample % p) + p) % p;
    return indices[static_cast<std::size_t>(phase)];
}

double TrendModel::at(std::ptrdiff_t sample) const {
    if (!present) return 0.0;
    const auto t = static_cast<double>(sample);
    double v = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 0;) v = v * t + coefficients[k];
    return v;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<double> centred_moving_average(std::span<const double> x, std::size_t period,
                                           std::size_t& first) {
    const std::size_t n = x.size();
    const std::size_t half = period / 2;
    first = half;
    std::vector<double> out;
    if (n < period + 1) return out;
    for (std::size_t t = half; t + half < n; ++t) {
        double sum = 0.0;
        if (period % 2 == 0) {
            // 2 x period moving average: half weight on the two outermost samples.
            sum += 0.5 * (x[t - half] + x[t + half]);
            for (std::size_t k = t - half + 1; k < t + half; ++k) sum += x[k];
        } else {
            for (std::size_t k = t - half; k <= t + half; ++k) sum += x[k];
        }
        out.push_back(sum / static_cast<double>(period));
    }
    return out;
}

double sse(std::span<const double> x, const TrendModel& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = x[i] - m.at(static_cast<std::ptrdiff_t>(i));
        s += e * e;
    }
    return s;
}

}  // namespace

SeasonalModel fit_seasonal(std::span<const double> x, std::size_t period) {
    if (period < 2) throw ArgumentError("seasonal period must be at least 2");
    if (x.size() < 2 * period) {
        throw ArgumentError("seasonal model needs at least two full periods (" +
                            std::to_string(2 * period) + " observations)");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) {
            throw ArgumentError("multiplicative seasonality needs strictly positive values (index " +
                                std::to_string(i) + ")");
        }
    }

    std::size_t first = 0;
    const auto cma = centred_moving_average(x, period, first);
    std::vector<std::vector<double>> ratios(period);
    for (std::size_t k = 0; k < cma.size(); ++k) {
        const std::size_t t = first + k;
        ratios[t % period].push_back(x[t] / cma[k]);
    }

    SeasonalModel m;
    m.period = period;
    m.indices.resize(period);
    for (std::size_t p = 0; p < period; ++p) m.indices[p] = median(ratios[p]);
    const double mean =
        std::accumulate(m.indices.begin(), m.indices.end(), 0.0) / static_cast<double>(period);
    for (double& v : m.indices) v /= mean;
    return m;
}

TrendModel fit_trend(std::span<const double> x, std::size_t degree) {
    const std::size_t n = x.size();
    if (n <= degree) throw ArgumentError("not enough observations for the trend degree");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(degree + 1));
    Eigen::VectorXd b(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double p = 1.0;
        for (std::size_t k = 0; k <= degree; ++k) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = p;
            p *= static_cast<double>(i);
        }
        b(static_cast<Eigen::Index>(i)) = x[i];
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    TrendModel m;
    m.degree = degree;
    m.present = true;
    m.coefficients.assign(c.data(), c.data() + c.size());
    return m;
}

PreprocessPipeline fit_pipeline(const Series& s, std::size_t period, double alpha) {
    PreprocessPipeline p;
    p.seasonal = fit_seasonal(s.values(), period);

    std::vector<double> deseason(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        deseason[i] = s[i] / p.seasonal->index_at(static_cast<std::ptrdiff_t>(i));
    }
    p.trend_test = mann_kendall(deseason, alpha);
    if (p.trend_test.trend_detected) {
        TrendModel linear = fit_trend(deseason, 1);
        TrendModel quadratic = fit_trend(deseason, 2);
        p.trend = sse(deseason, quadratic) < 0.99 * sse(deseason, linear) ? std::move(quadratic)
                                                                          : std::move(linear);
    }
    return p;
}

std::vector<double> apply(const PreprocessPipeline& p, std::span<const double> values,
                          std::ptrdiff_t first_index) {
    if (first_index < 0) throw ArgumentError("preprocessing index must be non-negative");
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto t = first_index + static_cast<std::ptrdiff_t>(i);
        double v = values[i];
        if (p.seasonal) v /= p.seasonal->index_at(t);
        out[i] = v - p.trend.at(t);
    }
    return out;
}

Series apply(const PreprocessPipeline& p, const Series& s) {
    return Series(apply(p, s.values(), 0), s.t0(), s.dt());
}

std::vector<double> invert(const PreprocessPipeline& p, std::span<const double> values,
                           std::ptrdiff_t first_index) {
    if (first_index < 0) throw ArgumentError("preprocessing index must be non-negative");
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto t = first_index + static_cast<std::ptrdiff_t>(i);
        double v = values[i] + p.trend.at(t);
        if (p.seasonal) v *= p.seasonal->index_at(t);
        out[i] = v;
    }
    return out;
}

}  // namespace emdsvr
