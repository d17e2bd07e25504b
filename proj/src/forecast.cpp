#include "emdsvr/forecast.hpp"

#include <string>

#include "emdsvr/emd.hpp"
#include "emdsvr/error.hpp"

namespace emdsvr {

Horizon::Horizon(std::size_t steps) : steps_(steps) {
    if (steps < 1) throw ArgumentError("forecast horizon must be at least 1");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t purpose) {
    return splitmix64(splitmix64(seed ^ splitmix64(stream)) + purpose);
}

std::vector<double> lag_vector(std::span<const double> window, std::size_t at,
                               const std::vector<std::size_t>& lags) {
    std::vector<double> x(lags.size());
    for (std::size_t k = 0; k < lags.size(); ++k) x[k] = window[at - lags[k]];
    return x;
}

struct Patterns {
    PatternMatrix x;
    std::vector<double> y;
};

Patterns lagged_patterns(std::span<const double> v, const std::vector<std::size_t>& lags,
                         std::size_t start) {
    Patterns p;
    for (std::size_t t = start; t < v.size(); ++t) {
        p.x.push_back(lag_vector(v, t, lags));
        p.y.push_back(v[t]);
    }
    return p;
}

ComponentModel tune_and_train(const PatternMatrix& x, std::span<const double> y,
                              KernelSpec::Kind kind, std::uint64_t seed, const FitOptions& opts) {
    PsoConfig cfg = opts.pso;
    cfg.seed = seed;
    if (kind == KernelSpec::Kind::Linear) cfg.bounds = opts.aggregator_bounds;
    const std::size_t folds = std::min(opts.cv_folds, y.size());
    const auto objective = [&](std::span<const double> pos) {
        return cv_objective(x, y, params_from_position(pos, kind), folds);
    };
    const SearchResult best = optimize(objective, cfg);
    ComponentModel c;
    c.params = params_from_position(best.best_position, kind);
    c.cv_score = best.best_score;
    c.model = train(x, y, c.params);
    return c;
}

ComponentModel fit_component(std::span<const double> v, std::size_t index, std::uint64_t seed,
                             const FitOptions& opts) {
    LagSelectionOptions lo;
    lo.max_lag = opts.max_lag;
    lo.permutations = opts.permutations;
    lo.seed = derive_seed(seed, index, 1);
    LagSet lags = select_inputs(v, lo);
    if (lags.lags.empty()) {
        // A model needs at least one input; fall back to the most recent value.
        lags.lags.push_back(1);
        lags.scores.push_back(0.0);
    }
    const Patterns p = lagged_patterns(v, lags.lags, opts.max_lag);
    ComponentModel c =
        tune_and_train(p.x, p.y, KernelSpec::Kind::Rbf, derive_seed(seed, index, 2), opts);
    c.lags = std::move(lags);
    return c;
}

void check_fit_input(const Series& s, const FitOptions& opts) {
    const std::size_t need = std::max<std::size_t>(60, 5 * opts.max_lag);
    if (s.size() < need) {
        throw ArgumentError("fitting needs at least " + std::to_string(need) + " observations, got " +
                            std::to_string(s.size()));
    }
}

EnsembleModel fit_single(EnsembleModel m, std::span<const double> z, std::uint64_t seed,
                         const FitOptions& opts) {
    m.decomposed = false;
    m.n_imfs = 0;
    m.components.push_back(fit_component(z, 0, seed, opts));
    return m;
}

}  // namespace

std::vector<std::vector<double>> model_components(const EnsembleModel& m,
                                                  std::span<const double> z) {
    if (!m.decomposed) return {std::vector<double>(z.begin(), z.end())};
    SiftingConfig cfg;
    cfg.passes_per_imf = m.passes_per_imf;
    cfg.max_imfs = m.n_imfs;
    cfg.end_condition = m.end_condition;
    Decomposition d = decompose(Series(std::vector<double>(z.begin(), z.end())), cfg);
    std::vector<std::vector<double>> out;
    out.reserve(m.n_imfs + 1);
    for (auto& imf : d.imfs) out.push_back(std::move(imf.values));
    // Fewer IMFs than at fit time: the missing ones are zero and the residue
    // absorbs their content.
    while (out.size() < m.n_imfs) out.emplace_back(z.size(), 0.0);
    out.push_back(std::move(d.residue));
    return out;
}

EnsembleModel fit(const Series& s, EndCondition ec, std::uint64_t seed, const FitOptions& opts) {
    check_fit_input(s, opts);
    EnsembleModel m;
    m.end_condition = ec;
    m.max_lag = opts.max_lag;
    m.passes_per_imf = opts.passes_per_imf;
    m.train_length = s.size();
    m.pipeline = fit_pipeline(s, opts.period, opts.trend_alpha);
    const std::vector<double> z = apply(m.pipeline, s.values(), 0);

    SiftingConfig cfg;
    cfg.passes_per_imf = opts.passes_per_imf;
    cfg.end_condition = ec;
    const Decomposition d = decompose(Series(z), cfg);
    if (d.imfs.empty()) {
        m.fallback = true;
        return fit_single(std::move(m), z, seed, opts);
    }
    m.decomposed = true;
    m.n_imfs = d.imfs.size();

    std::vector<std::vector<double>> comps;
    for (const auto& imf : d.imfs) comps.push_back(imf.values);
    comps.push_back(d.residue);

    m.components.resize(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        m.components[c] = fit_component(comps[c], c, seed, opts);
    }

    // Aggregator on in-sample one-step component predictions.
    PatternMatrix agg_x;
    std::vector<double> agg_y;
    for (std::size_t t = opts.max_lag; t < z.size(); ++t) {
        std::vector<double> row(comps.size());
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const auto& cm = m.components[c];
            row[c] = predict(cm.model, lag_vector(comps[c], t, cm.lags.lags));
        }
        agg_x.push_back(std::move(row));
        agg_y.push_back(z[t]);
    }
    m.aggregator = tune_and_train(agg_x, agg_y, KernelSpec::Kind::Linear,
                                  derive_seed(seed, comps.size(), 3), opts);
    return m;
}

EnsembleModel fit_single_svr(const Series& s, std::uint64_t seed, const FitOptions& opts) {
    check_fit_input(s, opts);
    EnsembleModel m;
    m.max_lag = opts.max_lag;
    m.passes_per_imf = opts.passes_per_imf;
    m.train_length = s.size();
    m.pipeline = fit_pipeline(s, opts.period, opts.trend_alpha);
    const std::vector<double> z = apply(m.pipeline, s.values(), 0);
    return fit_single(std::move(m), z, seed, opts);
}

std::vector<double> forecast(const EnsembleModel& m, const Series& s, Horizon h) {
    if (m.components.empty()) throw ArgumentError("model has no components");
    if (s.size() <= m.max_lag) throw ArgumentError("series is shorter than the lag window");
    const std::vector<double> z = apply(m.pipeline, s.values(), 0);
    std::vector<std::vector<double>> windows = model_components(m, z);
    if (windows.size() != m.components.size()) {
        throw StructuralError("component count does not match the fitted model");
    }

    std::vector<double> out;
    out.reserve(h.steps());
    std::vector<double> step(windows.size());
    for (std::size_t k = 0; k < h.steps(); ++k) {
        for (std::size_t c = 0; c < windows.size(); ++c) {
            auto& w = windows[c];
            step[c] = predict(m.components[c].model, lag_vector(w, w.size(), m.components[c].lags.lags));
        }
        for (std::size_t c = 0; c < windows.size(); ++c) windows[c].push_back(step[c]);
        out.push_back(m.aggregator ? predict(m.aggregator->model, step) : step.front());
    }
    return invert(m.pipeline, out, static_cast<std::ptrdiff_t>(s.size()));
}

std::vector<double> rolling_evaluate(const EnsembleModel& m, const Series& train,
                                     const Series& test, Horizon h) {
    if (test.empty()) throw ArgumentError("empty test series");
    if (h.steps() > 1) {
        auto f = forecast(m, train, Horizon(std::min(h.steps(), test.size())));
        return f;
    }
    std::vector<double> out;
    out.reserve(test.size());
    const auto tv = test.values();
    for (std::size_t k = 0; k < test.size(); ++k) {
        const Series seen = train.extended(tv.first(k));
        out.push_back(forecast(m, seen, Horizon(1)).front());
    }
    return out;
}

std::vector<double> rolling_evaluate(const Series& train, const Series& test, EndCondition ec,
                                     Horizon h, std::uint64_t seed, const FitOptions& opts) {
    return rolling_evaluate(fit(train, ec, seed, opts), train, test, h);
}

}  // namespace emdsvr
