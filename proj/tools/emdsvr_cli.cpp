// Command-line front end: decompose, forecast, experiment, synth.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "emdsvr/emd.hpp"
#include "emdsvr/error.hpp"
#include "emdsvr/harness.hpp"

using namespace emdsvr;

namespace {

std::string num(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

const NamedSeries& pick(const LoadResult& loaded, const std::string& id) {
    if (loaded.series.empty()) throw ArgumentError("input has no usable series");
    if (id.empty()) return loaded.series.front();
    for (const auto& s : loaded.series) {
        if (s.id == id) return s;
    }
    throw ArgumentError("series '" + id + "' not found");
}

void report_warnings(const std::vector<std::string>& w) {
    for (const auto& line : w) std::cerr << "warning: " << line << '\n';
}

std::vector<ModelSpec> parse_models(const std::vector<std::string>& names) {
    std::vector<ModelSpec> out;
    for (const auto& n : names) out.push_back(parse_model(n));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EMD end-condition study: decomposition, SVR ensemble forecasting, experiments"};
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
    app.require_subcommand(1);

    std::string input;
    std::string series_id;
    std::string end_condition = "rato";
    std::string out_path;

    auto* dec = app.add_subcommand("decompose", "write the IMFs and residue of one series as CSV");
    dec->add_option("--input", input, "series CSV")->required()->check(CLI::ExistingFile);
    dec->add_option("--series", series_id, "series id (default: first)");
    dec->add_option("--end-condition,--ec", end_condition, "none|mirror|coughlin|sbm|rato");
    std::size_t passes = 10;
    dec->add_option("--passes", passes, "sifting passes per IMF");
    dec->add_option("--out", out_path, "output file (default: stdout)");

    std::string model = "sbm";
    std::size_t horizon = 18;
    std::size_t holdout = 18;
    std::uint64_t seed = 0;
    auto* fc = app.add_subcommand("forecast", "fit one model on one series and forecast");
    fc->add_option("--input", input, "series CSV")->required()->check(CLI::ExistingFile);
    fc->add_option("--series", series_id, "series id (default: first)");
    fc->add_option("--model", model, "none|mirror|coughlin|sbm|rato|svr");
    fc->add_option("--horizon", horizon, "steps ahead")->check(CLI::PositiveNumber);
    fc->add_option("--holdout", holdout, "observations held back (0: forecast past the end)");
    fc->add_option("--seed", seed, "random seed");

    ExperimentConfig cfg;
    std::vector<std::string> models{"none", "mirror", "coughlin", "sbm", "rato", "svr"};
    std::string input_exp;
    std::string out_dir = "results";
    auto* ex = app.add_subcommand("experiment", "replicated model comparison with ANOVA / Tukey HSD");
    ex->add_option("--input", input_exp, "series CSV")->required()->check(CLI::ExistingFile);
    ex->add_option("--holdout", cfg.holdout, "hold-out length");
    ex->add_option("--horizons", cfg.horizons, "forecast horizons")->delimiter(',');
    ex->add_option("--replications", cfg.replications, "replications per model");
    ex->add_option("--models", models, "models to compare")->delimiter(',');
    ex->add_option("--seed", cfg.seed, "base seed; replication i uses seed + i");
    ex->add_option("--out", out_dir, "output directory");
    ex->add_option("--format", cfg.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    ex->add_option("--workers", cfg.workers, "parallel cells (0: all cores)");
    ex->add_option("--swarm", cfg.fit.pso.swarm_size, "PSO swarm size");
    ex->add_option("--iterations", cfg.fit.pso.iterations, "PSO iterations");
    ex->add_option("--folds", cfg.fit.cv_folds, "cross-validation folds");
    ex->add_option("--permutations", cfg.fit.permutations, "PMI permutation count");

    SynthOptions synth;
    std::string synth_out = "synthetic.csv";
    auto* sy = app.add_subcommand("synth", "generate seasonal + trend + AR(1) noise series");
    sy->add_option("--count", synth.count, "number of series");
    sy->add_option("--length", synth.length, "observations per series");
    sy->add_option("--seed", synth.seed, "random seed");
    sy->add_option("--out", synth_out, "output CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dec) {
            const LoadResult loaded = load_series(input);
            report_warnings(loaded.warnings);
            const NamedSeries& ns = pick(loaded, series_id);
            SiftingConfig sc;
            sc.passes_per_imf = passes;
            sc.end_condition = parse_end_condition(end_condition);
            const Decomposition d = decompose(ns.series, sc);
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path, std::ios::binary);
                if (!file) throw IoError("cannot write " + out_path);
            }
            std::ostream& os = out_path.empty() ? std::cout : file;
            os << "t,x";
            for (std::size_t k = 0; k < d.imfs.size(); ++k) os << ",imf" << k + 1;
            os << ",residue\n";
            const auto x = ns.series.values();
            for (std::size_t t = 0; t < x.size(); ++t) {
                os << t << ',' << num(x[t]);
                for (const auto& imf : d.imfs) os << ',' << num(imf.values[t]);
                os << ',' << num(d.residue[t]) << '\n';
            }
        } else if (*fc) {
            const LoadResult loaded = load_series(input);
            report_warnings(loaded.warnings);
            const NamedSeries& ns = pick(loaded, series_id);
            const ModelSpec spec = parse_model(model);
            Series train = ns.series;
            std::vector<double> actual;
            if (holdout > 0) {
                auto [tr, te] = split_holdout(ns.series, holdout);
                train = tr;
                const auto tv = te.values();
                actual.assign(tv.begin(), tv.end());
            }
            const EnsembleModel m = spec.decomposed ? fit(train, spec.end_condition, seed)
                                                    : fit_single_svr(train, seed);
            const auto f = forecast(m, train, Horizon(horizon));
            std::cout << "step,forecast" << (actual.empty() ? "" : ",actual") << '\n';
            for (std::size_t k = 0; k < f.size(); ++k) {
                std::cout << k + 1 << ',' << num(f[k]);
                if (!actual.empty()) std::cout << ',' << (k < actual.size() ? num(actual[k]) : "");
                std::cout << '\n';
            }
            if (!actual.empty()) {
                const std::size_t len = std::min(f.size(), actual.size());
                const std::span<const double> a(actual.data(), len);
                const std::span<const double> p(f.data(), len);
                std::cerr << spec.label << " SMAPE=" << num(smape(a, p))
                          << " MASE=" << num(mase(a, p, train.values())) << '\n';
            }
        } else if (*ex) {
            cfg.input_path = input_exp;
            cfg.output_path = out_dir;
            cfg.models = parse_models(models);
            const ExperimentResult r = run_experiment(cfg);
            report_warnings(r.warnings);
            for (const auto& p : emit_report(r, cfg.output_path, cfg.format)) {
                std::cerr << "wrote " << p.string() << '\n';
            }
        } else if (*sy) {
            write_series_csv(synth_out, synthesize(synth));
            std::cerr << "wrote " << synth_out << '\n';
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
