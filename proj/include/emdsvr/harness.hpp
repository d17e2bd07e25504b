#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "emdsvr/endcond.hpp"
#include "emdsvr/eval.hpp"
#include "emdsvr/forecast.hpp"
#include "emdsvr/series.hpp"

namespace emdsvr {

struct NamedSeries {
    std::string id;
    Series series;
};

struct LoadResult {
    std::vector<NamedSeries> series;
    std::vector<std::string> warnings;
};

inline constexpr std::size_t kMinSeriesLength = 60;

/// CSV with one header row, then "id,x1,x2,..." per row. Rows may be ragged;
/// empty cells are ignored. Series shorter than kMinSeriesLength are skipped
/// with a warning.
LoadResult load_series(const std::filesystem::path& path);
LoadResult parse_series_csv(const std::string& text);

void write_series_csv(const std::filesystem::path& path, const std::vector<NamedSeries>& series);

/// A compared model: EMD-SVR with one end condition, or the plain SVR.
struct ModelSpec {
    std::string label;
    bool decomposed = true;
    EndCondition end_condition = EndCondition::None;
};

/// Accepts end-condition names ("none", "mirror", "coughlin", "sbm", "rato"),
/// "svr", or a model label such as "EMD-SBM-SVR" (case-insensitive).
ModelSpec parse_model(std::string_view name);
std::string model_label(EndCondition ec);

struct ExperimentConfig {
    std::filesystem::path input_path;
    std::size_t holdout = 18;
    std::vector<std::size_t> horizons{1, 18};
    std::size_t replications = 50;
    std::vector<ModelSpec> models;
    std::uint64_t seed = 0;
    std::filesystem::path output_path = "results";
    std::string format = "csv";
    std::size_t workers = 0;  // 0: OpenMP default
    double alpha = 0.05;
    FitOptions fit;

    void validate() const;
};

struct RunRecord {
    std::string series_id;
    std::string model;
    std::size_t replication = 0;
    std::size_t horizon = 0;
    double smape = 0.0;
    double mase = 0.0;
    double wall_time = 0.0;  // seconds, fit plus evaluation of the cell
    bool failed = false;
    std::string error;
};

struct ForecastTrace {
    std::string series_id;
    std::string model;
    std::size_t replication = 0;
    std::size_t horizon = 0;
    std::size_t origin = 0;  // offset into the hold-out
    double actual = 0.0;
    double forecast = 0.0;
};

struct ComparisonTest {
    std::size_t horizon = 0;
    std::string metric;  // "smape" or "mase"
    std::vector<std::string> models;
    std::optional<AnovaResult> anova;
    std::optional<TukeyResult> tukey;
    std::string chain;
    std::string notice;
};

struct ExperimentResult {
    std::vector<RunRecord> records;
    std::vector<AccuracyReport> reports;
    std::vector<ComparisonTest> tests;
    std::vector<ForecastTrace> traces;
    std::vector<std::string> warnings;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::vector<NamedSeries>& data);

/// Writes records, summary, rank chains and per-origin forecasts in the
/// requested format, plus a separate timings file. Returns the paths written.
std::vector<std::filesystem::path> emit_report(const ExperimentResult& r,
                                               const std::filesystem::path& dir,
                                               const std::string& format);

nlohmann::json to_json(const ExperimentResult& r);
ExperimentResult result_from_json(const nlohmann::json& j);

struct SynthOptions {
    std::size_t count = 10;
    std::size_t length = 126;
    std::uint64_t seed = 0;
};

/// Monthly-style series: level + linear trend + multiplicative seasonality
/// + AR(1) noise, strictly positive.
std::vector<NamedSeries> synthesize(const SynthOptions& opts);

}  // namespace emdsvr
