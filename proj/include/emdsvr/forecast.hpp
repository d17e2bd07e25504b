#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "emdsvr/endcond.hpp"
#include "emdsvr/features.hpp"
#include "emdsvr/preprocess.hpp"
#include "emdsvr/pso.hpp"
#include "emdsvr/series.hpp"
#include "emdsvr/svr.hpp"

namespace emdsvr {

/// Number of steps ahead, at least one.
class Horizon {
public:
    explicit Horizon(std::size_t steps);
    std::size_t steps() const noexcept { return steps_; }

private:
    std::size_t steps_;
};

struct FitOptions {
    std::size_t period = 12;
    double trend_alpha = 0.05;
    std::size_t passes_per_imf = 10;
    std::size_t max_lag = 12;
    std::size_t permutations = 100;
    std::size_t cv_folds = 10;
    PsoConfig pso;  // seed is replaced per component
    // Search box for the linear aggregator: log10 C, log10 epsilon. A linear
    // fit on standardised inputs saturates long before C = 1e3, where the
    // solver needs orders of magnitude more updates.
    std::vector<Bounds> aggregator_bounds{{-2.0, 1.0}, {-4.0, 0.0}};
};

/// One SVR over lagged values of a single component.
struct ComponentModel {
    LagSet lags;
    SvrParams params;
    SvrModel model;
    double cv_score = 0.0;
};

/// Decompose-model-aggregate ensemble. `components` holds one model per IMF
/// plus one for the residue; the aggregator maps their one-step predictions
/// to the preprocessed target. A single-SVR model has one component that
/// models the preprocessed series directly and no aggregator.
struct EnsembleModel {
    PreprocessPipeline pipeline;
    EndCondition end_condition = EndCondition::None;
    bool decomposed = true;
    bool fallback = false;  // decomposition found no IMF; single-SVR path used
    std::size_t n_imfs = 0;
    std::vector<ComponentModel> components;
    std::optional<ComponentModel> aggregator;
    std::size_t max_lag = 12;
    std::size_t passes_per_imf = 10;
    std::size_t train_length = 0;
};

/// Preprocess, decompose with the given end condition, model every
/// component with a PMI-selected, PSO-tuned RBF SVR, then fit a linear-kernel
/// aggregator on the in-sample component predictions. Deterministic in seed.
EnsembleModel fit(const Series& s, EndCondition ec, std::uint64_t seed,
                  const FitOptions& opts = {});

/// Single-SVR baseline on the preprocessed series (no decomposition).
EnsembleModel fit_single_svr(const Series& s, std::uint64_t seed, const FitOptions& opts = {});

/// Iterated multi-step forecast from the end of `s`, on the original scale.
/// Each component model feeds its own predictions back into its lag window;
/// the aggregator combines the component predictions at every step.
std::vector<double> forecast(const EnsembleModel& m, const Series& s, Horizon h);

/// Components (IMFs padded to the model's count, then residue) of the
/// preprocessed series, as used by forecast().
std::vector<std::vector<double>> model_components(const EnsembleModel& m,
                                                  std::span<const double> preprocessed);

/// Hold-out evaluation with a fixed model. For H = 1 every test point is
/// forecast one step ahead after appending the preceding observations and
/// re-decomposing; for H > 1 a single H-step forecast is issued from the end
/// of the training data. Returns min(H, |test|) or |test| values.
std::vector<double> rolling_evaluate(const EnsembleModel& m, const Series& train,
                                     const Series& test, Horizon h);

/// Fits on `train` and evaluates on `test`.
std::vector<double> rolling_evaluate(const Series& train, const Series& test, EndCondition ec,
                                     Horizon h, std::uint64_t seed, const FitOptions& opts = {});

}  // namespace emdsvr
