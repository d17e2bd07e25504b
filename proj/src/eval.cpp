#include "emdsvr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "emdsvr/error.hpp"

namespace emdsvr {

namespace {

void check_pair(std::span<const double> a, std::span<const double> f) {
    if (a.size() != f.size()) throw ArgumentError("actual and forecast lengths differ");
    if (a.empty()) throw ArgumentError("accuracy measures need at least one value");
}

double smape_sum(std::span<const double> a, std::span<const double> f) {
    double sum = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double den = 0.5 * (std::abs(a[t]) + std::abs(f[t]));
        if (den > 0.0) sum += std::abs(a[t] - f[t]) / den;
    }
    return sum;
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double smape(std::span<const double> actual, std::span<const double> forecast) {
    check_pair(actual, forecast);
    return 100.0 * smape_sum(actual, forecast) / static_cast<double>(actual.size());
}

double smape(const std::vector<std::vector<double>>& actual,
             const std::vector<std::vector<double>>& forecast) {
    if (actual.size() != forecast.size()) throw ArgumentError("series counts differ");
    if (actual.empty()) throw ArgumentError("no series");
    double sum = 0.0;
    std::size_t terms = 0;
    for (std::size_t m = 0; m < actual.size(); ++m) {
        check_pair(actual[m], forecast[m]);
        sum += smape_sum(actual[m], forecast[m]);
        terms += actual[m].size();
    }
    return 100.0 * sum / static_cast<double>(terms);
}

double mase(std::span<const double> actual, std::span<const double> forecast,
            std::span<const double> estimation) {
    check_pair(actual, forecast);
    if (estimation.size() < 2) throw ArgumentError("MASE needs an estimation sample of length >= 2");
    double d = 0.0;
    for (std::size_t i = 1; i < estimation.size(); ++i) d += std::abs(estimation[i] - estimation[i - 1]);
    d /= static_cast<double>(estimation.size() - 1);
    if (!(d > 0.0)) throw UndefinedScaleError("MASE scale is zero for a constant estimation sample");
    double e = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) e += std::abs(actual[t] - forecast[t]);
    return e / static_cast<double>(actual.size()) / d;
}

AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw ArgumentError("ANOVA needs at least two groups");
    std::size_t total_n = 0;
    double grand = 0.0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw ArgumentError("ANOVA needs at least two values per group");
        total_n += g.size();
        grand += std::accumulate(g.begin(), g.end(), 0.0);
    }
    grand /= static_cast<double>(total_n);
    double ssb = 0.0;
    double ssw = 0.0;
    for (const auto& g : groups) {
        const double m = mean_of(g);
        ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        for (double v : g) ssw += (v - m) * (v - m);
    }
    AnovaResult r;
    r.df_between = groups.size() - 1;
    r.df_within = total_n - groups.size();
    r.ms_within = ssw / static_cast<double>(r.df_within);
    const double msb = ssb / static_cast<double>(r.df_between);
    if (ssw == 0.0) {
        if (ssb == 0.0) return r;
        r.f = std::numeric_limits<double>::infinity();
        r.p = 0.0;
        return r;
    }
    r.f = msb / r.ms_within;
    const boost::math::fisher_f_distribution<double> dist(static_cast<double>(r.df_between),
                                                          static_cast<double>(r.df_within));
    r.p = boost::math::cdf(boost::math::complement(dist, r.f));
    return r;
}

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 21>;
constexpr double kTol = 1e-9;

double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double big_phi(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// P(range of k standard normals <= w).
double range_cdf(double w, std::size_t k) {
    if (w <= 0.0) return 0.0;
    const double km1 = static_cast<double>(k - 1);
    const auto f = [&](double z) {
        const double d = big_phi(z) - big_phi(z - w);
        return d > 0.0 ? phi(z) * std::pow(d, km1) : 0.0;
    };
    const double v = static_cast<double>(k) * Quad::integrate(f, -9.0, 9.0, 15, kTol);
    return std::clamp(v, 0.0, 1.0);
}

// Density of s = sqrt(chi2_df / df).
double chi_scale_density(double s, double df) {
    if (s <= 0.0) return 0.0;
    const double log_c = 0.5 * df * std::log(df) - std::lgamma(0.5 * df) - (0.5 * df - 1.0) * std::log(2.0);
    return std::exp(log_c + (df - 1.0) * std::log(s) - 0.5 * df * s * s);
}

}  // namespace

double studentized_range_cdf(double q, std::size_t k, std::size_t df) {
    if (k < 2) throw ArgumentError("studentized range needs k >= 2");
    if (q <= 0.0) return 0.0;
    if (df == 0) return range_cdf(q, k);
    const double v = static_cast<double>(df);
    const auto f = [&](double s) { return chi_scale_density(s, v) * range_cdf(q * s, k); };
    // s concentrates around 1 with spread ~ 1/sqrt(2 df).
    const double spread = 1.0 / std::sqrt(2.0 * v);
    const double lo = std::max(0.0, 1.0 - 14.0 * spread);
    const double hi = 1.0 + 14.0 * spread + (df < 10 ? 8.0 : 0.0);
    const double mid = 1.0;
    const double out = Quad::integrate(f, lo, mid, 15, kTol) + Quad::integrate(f, mid, hi, 15, kTol);
    return std::clamp(out, 0.0, 1.0);
}

double studentized_range_quantile(double alpha, std::size_t k, std::size_t df) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
    if (k < 2) throw ArgumentError("studentized range needs k >= 2");
    const double target = 1.0 - alpha;
    double lo = 0.0;
    double hi = 1.0;
    while (studentized_range_cdf(hi, k, df) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e4) throw ArgumentError("studentized range quantile out of range");
    }
    for (int it = 0; it < 60 && hi - lo > 1e-7; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (studentized_range_cdf(mid, k, df) < target) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

TukeyResult tukey_hsd(const std::vector<std::vector<double>>& groups, double alpha) {
    if (groups.size() < 2) throw ArgumentError("Tukey HSD needs at least two groups");
    const std::size_t n = groups.front().size();
    for (const auto& g : groups) {
        if (g.size() != n) throw ArgumentError("Tukey HSD needs balanced groups");
    }
    const AnovaResult a = anova_oneway(groups);
    const std::size_t k = groups.size();

    TukeyResult t;
    t.df = a.df_within;
    for (const auto& g : groups) t.means.push_back(mean_of(g));
    t.q_critical = studentized_range_quantile(alpha, k, t.df);
    t.hsd = t.q_critical * std::sqrt(a.ms_within / static_cast<double>(n));
    t.pairwise.assign(k, std::vector<PairComparison>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double d = t.means[i] - t.means[j];
            t.pairwise[i][j] = {d, i != j && std::abs(d) > t.hsd};
        }
    }
    t.ranks.resize(k);
    std::iota(t.ranks.begin(), t.ranks.end(), 0);
    std::stable_sort(t.ranks.begin(), t.ranks.end(),
                     [&](std::size_t x, std::size_t y) { return t.means[x] < t.means[y]; });
    return t;
}

std::string rank_chain(const TukeyResult& t, const std::vector<std::string>& labels) {
    if (labels.size() != t.means.size()) throw ArgumentError("one label per group required");
    std::string out;
    for (std::size_t r = 0; r < t.ranks.size(); ++r) {
        if (r > 0) {
            const bool sig = t.pairwise[t.ranks[r - 1]][t.ranks[r]].significant;
            out += sig ? " <* " : " < ";
        }
        out += labels[t.ranks[r]];
    }
    return out;
}

}  // namespace emdsvr
