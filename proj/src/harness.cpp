#include "emdsvr/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <omp.h>

#include "emdsvr/error.hpp"

namespace emdsvr {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Shortest representation that parses back to the same double.
std::string num(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

}  // namespace

LoadResult parse_series_csv(const std::string& text) {
    LoadResult out;
    std::vector<std::string_view> lines;
    {
        std::string_view rest(text);
        while (!rest.empty()) {
            const std::size_t nl = rest.find('\n');
            std::string_view line = rest.substr(0, nl);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.push_back(line);
            if (nl == std::string_view::npos) break;
            rest.remove_prefix(nl + 1);
        }
    }
    const bool blank = std::all_of(lines.begin(), lines.end(),
                                   [](std::string_view l) { return trim(l).empty(); });
    if (blank) {
        out.warnings.push_back("input contains no data");
        return out;
    }

    // lines[0] is the header.
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::size_t row = r + 1;
        if (trim(lines[r]).empty()) continue;
        const auto cells = split(lines[r], ',');
        const std::string id = trim(cells[0]);
        std::size_t last = cells.size();
        while (last > 1 && trim(cells[last - 1]).empty()) --last;

        std::vector<double> values;
        for (std::size_t c = 1; c < last; ++c) {
            const std::string cell = trim(cells[c]);
            if (cell.empty()) throw ParseError("missing value inside series '" + id + "'", row, c + 1);
            double v = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
                throw ParseError("non-numeric value '" + cell + "'", row, c + 1);
            }
            values.push_back(v);
        }
        if (values.size() < kMinSeriesLength) {
            out.warnings.push_back("series '" + id + "' has " + std::to_string(values.size()) +
                                   " observations (< " + std::to_string(kMinSeriesLength) +
                                   "), skipped");
            continue;
        }
        out.series.push_back({id, Series(std::move(values))});
    }
    if (out.series.empty()) out.warnings.push_back("no usable series in input");
    return out;
}

LoadResult load_series(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_series_csv(ss.str());
}

void write_series_csv(const std::filesystem::path& path, const std::vector<NamedSeries>& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    std::size_t width = 0;
    for (const auto& s : series) width = std::max(width, s.series.size());
    out << "id";
    for (std::size_t t = 1; t <= width; ++t) out << ",x" << t;
    out << '\n';
    for (const auto& s : series) {
        out << s.id;
        for (double v : s.series.values()) out << ',' << num(v);
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

std::string model_label(EndCondition ec) {
    switch (ec) {
        case EndCondition::None: return "EMD-SVR";
        case EndCondition::Mirror: return "EMD-MM-SVR";
        case EndCondition::Coughlin: return "EMD-Coughlin-SVR";
        case EndCondition::SlopeBased: return "EMD-SBM-SVR";
        case EndCondition::Rato: return "EMD-Rato-SVR";
    }
    throw ArgumentError("unknown end condition");
}

ModelSpec parse_model(std::string_view name) {
    const std::string key = lower(trim(name));
    if (key == "svr") return {"SVR", false, EndCondition::None};
    for (EndCondition ec : kAllEndConditions) {
        if (key == to_string(ec) || key == lower(model_label(ec))) return {model_label(ec), true, ec};
    }
    if (key == "mm" || key == "emd-mirror-svr") return {model_label(EndCondition::Mirror), true, EndCondition::Mirror};
    throw ArgumentError("unknown model '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
    if (replications < 1) throw ArgumentError("replications must be at least 1");
    if (horizons.empty()) throw ArgumentError("at least one horizon is required");
    if (models.empty()) throw ArgumentError("at least one model is required");
    if (holdout < 1) throw ArgumentError("holdout must be at least 1");
    for (std::size_t h : horizons) {
        if (h < 1) throw ArgumentError("horizons must be at least 1");
        if (h > holdout) throw ArgumentError("holdout must cover the largest horizon");
    }
    if (format != "csv" && format != "json") throw ArgumentError("format must be csv or json");
}

namespace {

struct CellOutput {
    std::vector<RunRecord> records;
    std::vector<ForecastTrace> traces;
};

RunRecord blank_record(const std::string& id, const std::string& model, std::size_t rep,
                       std::size_t h) {
    RunRecord r;
    r.series_id = id;
    r.model = model;
    r.replication = rep;
    r.horizon = h;
    return r;
}

CellOutput run_cell(const NamedSeries& ns, const ModelSpec& spec, std::size_t rep,
                    const ExperimentConfig& cfg) {
    CellOutput out;
    const auto start = std::chrono::steady_clock::now();
    const auto fail = [&](const std::string& why) {
        out.records.clear();
        out.traces.clear();
        for (std::size_t h : cfg.horizons) {
            RunRecord r = blank_record(ns.id, spec.label, rep, h);
            r.failed = true;
            r.error = why;
            out.records.push_back(std::move(r));
        }
    };
    try {
        const std::size_t n = ns.series.size();
        if (n <= cfg.holdout) throw ArgumentError("series shorter than the hold-out");
        const auto v = ns.series.values();
        const Series train(std::vector<double>(v.begin(), v.end() - static_cast<std::ptrdiff_t>(cfg.holdout)));
        const Series test(std::vector<double>(v.end() - static_cast<std::ptrdiff_t>(cfg.holdout), v.end()));
        const std::uint64_t seed = cfg.seed + rep;
        const EnsembleModel m = spec.decomposed ? fit(train, spec.end_condition, seed, cfg.fit)
                                                : fit_single_svr(train, seed, cfg.fit);
        for (std::size_t h : cfg.horizons) {
            const auto f = rolling_evaluate(m, train, test, Horizon(h));
            const auto actual = test.values().first(f.size());
            RunRecord r = blank_record(ns.id, spec.label, rep, h);
            r.smape = smape(actual, f);
            r.mase = mase(actual, f, train.values());
            if (!std::isfinite(r.smape) || !std::isfinite(r.mase)) {
                throw StructuralError("non-finite accuracy measure");
            }
            out.records.push_back(std::move(r));
            for (std::size_t k = 0; k < f.size(); ++k) {
                out.traces.push_back({ns.id, spec.label, rep, h, k, actual[k], f[k]});
            }
        }
    } catch (const std::exception& e) {
        fail(e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : out.records) r.wall_time = secs;
    return out;
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// Replication-level means (over series) of one metric, in replication order.
std::vector<double> replication_means(const std::vector<const RunRecord*>& rs, std::size_t reps,
                                      bool use_smape) {
    std::vector<double> sum(reps, 0.0);
    std::vector<std::size_t> cnt(reps, 0);
    for (const RunRecord* r : rs) {
        sum[r->replication] += use_smape ? r->smape : r->mase;
        ++cnt[r->replication];
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < reps; ++i) {
        if (cnt[i] > 0) out.push_back(sum[i] / static_cast<double>(cnt[i]));
    }
    return out;
}

AccuracyReport summarise(const std::string& model, std::size_t h,
                         const std::vector<const RunRecord*>& ok, std::size_t failed,
                         const std::vector<NamedSeries>& data, std::size_t reps) {
    AccuracyReport a;
    a.model = model;
    a.horizon = h;
    a.runs = ok.size();
    a.failed = failed;
    if (!ok.empty()) {
        for (const RunRecord* r : ok) {
            a.smape_mean += r->smape;
            a.mase_mean += r->mase;
        }
        a.smape_mean /= static_cast<double>(ok.size());
        a.mase_mean /= static_cast<double>(ok.size());
        a.smape_std = sample_std(replication_means(ok, reps, true));
        a.mase_std = sample_std(replication_means(ok, reps, false));
    }
    for (const auto& ns : data) {
        double s = 0.0;
        double m = 0.0;
        std::size_t c = 0;
        for (const RunRecord* r : ok) {
            if (r->series_id != ns.id) continue;
            s += r->smape;
            m += r->mase;
            ++c;
        }
        if (c == 0) continue;
        a.series.push_back(ns.id);
        a.series_smape.push_back(s / static_cast<double>(c));
        a.series_mase.push_back(m / static_cast<double>(c));
    }
    return a;
}

ComparisonTest compare(std::size_t h, bool use_smape, const std::vector<std::string>& models,
                       const std::vector<std::vector<const RunRecord*>>& ok, std::size_t reps,
                       double alpha) {
    ComparisonTest t;
    t.horizon = h;
    t.metric = use_smape ? "smape" : "mase";
    std::vector<std::vector<double>> groups;
    for (std::size_t m = 0; m < models.size(); ++m) {
        if (ok[m].empty()) continue;
        t.models.push_back(models[m]);
        groups.push_back(replication_means(ok[m], reps, use_smape));
    }
    std::vector<double> means;
    for (const auto& g : groups) {
        double s = 0.0;
        for (double v : g) s += v;
        means.push_back(s / static_cast<double>(g.size()));
    }
    // Ordering alone, used when no significance test applies.
    TukeyResult order;
    order.means = means;
    order.pairwise.assign(means.size(), std::vector<PairComparison>(means.size()));
    order.ranks.resize(means.size());
    for (std::size_t i = 0; i < means.size(); ++i) order.ranks[i] = i;
    std::stable_sort(order.ranks.begin(), order.ranks.end(),
                     [&](std::size_t a, std::size_t b) { return means[a] < means[b]; });
    if (!groups.empty()) t.chain = rank_chain(order, t.models);

    if (groups.size() < 2) {
        t.notice = "ANOVA skipped: fewer than two models with results";
        return t;
    }
    const bool small = std::any_of(groups.begin(), groups.end(),
                                   [](const auto& g) { return g.size() < 2; });
    if (small) {
        t.notice = "ANOVA skipped: needs at least two replications per model";
        return t;
    }
    t.anova = anova_oneway(groups);
    if (!(t.anova->p < alpha)) {
        t.notice = "ANOVA not significant; Tukey HSD not performed";
        return t;
    }
    const bool balanced = std::all_of(groups.begin(), groups.end(),
                                      [&](const auto& g) { return g.size() == groups.front().size(); });
    if (!balanced) {
        t.notice = "Tukey HSD skipped: failed runs left the groups unbalanced";
        return t;
    }
    t.tukey = tukey_hsd(groups, alpha);
    t.chain = rank_chain(*t.tukey, t.models);
    return t;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    const LoadResult loaded = load_series(cfg.input_path);
    ExperimentResult r = run_experiment(cfg, loaded.series);
    r.warnings.insert(r.warnings.begin(), loaded.warnings.begin(), loaded.warnings.end());
    return r;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::vector<NamedSeries>& data) {
    cfg.validate();
    ExperimentResult result;
    const std::size_t n_models = cfg.models.size();
    const std::size_t reps = cfg.replications;
    const std::size_t cells = data.size() * n_models * reps;
    std::vector<CellOutput> outputs(cells);

    const int threads = cfg.workers > 0 ? static_cast<int>(cfg.workers) : omp_get_max_threads();
    const auto n_cells = static_cast<std::ptrdiff_t>(cells);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t c = 0; c < n_cells; ++c) {
        const auto idx = static_cast<std::size_t>(c);
        const std::size_t s = idx / (n_models * reps);
        const std::size_t m = (idx / reps) % n_models;
        const std::size_t rep = idx % reps;
        outputs[idx] = run_cell(data[s], cfg.models[m], rep, cfg);
    }

    for (auto& o : outputs) {
        for (auto& rec : o.records) {
            if (rec.failed) {
                result.warnings.push_back("run failed: " + rec.series_id + " / " + rec.model +
                                          " / replication " + std::to_string(rec.replication) +
                                          " / H=" + std::to_string(rec.horizon) + ": " + rec.error);
            }
            result.records.push_back(std::move(rec));
        }
        for (auto& t : o.traces) result.traces.push_back(std::move(t));
    }

    std::vector<std::string> labels;
    for (const auto& m : cfg.models) labels.push_back(m.label);
    for (std::size_t h : cfg.horizons) {
        std::vector<std::vector<const RunRecord*>> ok(n_models);
        for (std::size_t m = 0; m < n_models; ++m) {
            std::size_t failed = 0;
            for (const auto& rec : result.records) {
                if (rec.horizon != h || rec.model != labels[m]) continue;
                if (rec.failed) ++failed;
                else ok[m].push_back(&rec);
            }
            result.reports.push_back(summarise(labels[m], h, ok[m], failed, data, reps));
        }
        result.tests.push_back(compare(h, true, labels, ok, reps, cfg.alpha));
        result.tests.push_back(compare(h, false, labels, ok, reps, cfg.alpha));
    }
    return result;
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& p) {
    out.close();
    if (!out) throw IoError("failed writing " + p.string());
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

std::string metric_name(const std::string& m) { return m == "smape" ? "SMAPE" : "MASE"; }

void write_ranks(std::ostream& out, const ExperimentResult& r) {
    for (const auto& t : r.tests) {
        out << "H=" << t.horizon << ' ' << metric_name(t.metric) << ": " << t.chain << '\n';
        if (t.anova) {
            out << "  ANOVA F=" << num(t.anova->f) << " p=" << num(t.anova->p) << " df=("
                << t.anova->df_between << ',' << t.anova->df_within << ")\n";
        }
        if (t.tukey) {
            out << "  Tukey HSD q=" << num(t.tukey->q_critical) << " hsd=" << num(t.tukey->hsd) << '\n';
        }
        if (!t.notice.empty()) out << "  note: " << t.notice << '\n';
    }
    for (const auto& w : r.warnings) out << "warning: " << w << '\n';
}

}  // namespace

std::vector<std::filesystem::path> emit_report(const ExperimentResult& r,
                                               const std::filesystem::path& dir,
                                               const std::string& format) {
    if (format != "csv" && format != "json") throw ArgumentError("format must be csv or json");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;

    if (format == "json") {
        const auto p = dir / "report.json";
        auto out = open_out(p);
        out << to_json(r).dump(2) << '\n';
        close_out(out, p);
        written.push_back(p);
    } else {
        {
            const auto p = dir / "records.csv";
            auto out = open_out(p);
            out << "series,model,replication,horizon,smape,mase,status,error\n";
            for (const auto& x : r.records) {
                out << csv_field(x.series_id) << ',' << x.model << ',' << x.replication << ','
                    << x.horizon << ',' << (x.failed ? "" : num(x.smape)) << ','
                    << (x.failed ? "" : num(x.mase)) << ',' << (x.failed ? "failed" : "ok") << ','
                    << csv_field(x.error) << '\n';
            }
            close_out(out, p);
            written.push_back(p);
        }
        {
            const auto p = dir / "summary.csv";
            auto out = open_out(p);
            out << "model,horizon,smape_mean,smape_std,mase_mean,mase_std,runs,failed\n";
            for (const auto& a : r.reports) {
                out << a.model << ',' << a.horizon << ',' << num(a.smape_mean) << ','
                    << num(a.smape_std) << ',' << num(a.mase_mean) << ',' << num(a.mase_std) << ','
                    << a.runs << ',' << a.failed << '\n';
            }
            close_out(out, p);
            written.push_back(p);
        }
        {
            const auto p = dir / "ranks.txt";
            auto out = open_out(p);
            write_ranks(out, r);
            close_out(out, p);
            written.push_back(p);
        }
        {
            const auto p = dir / "forecasts.csv";
            auto out = open_out(p);
            out << "series,model,replication,horizon,origin,actual,forecast\n";
            for (const auto& t : r.traces) {
                out << csv_field(t.series_id) << ',' << t.model << ',' << t.replication << ','
                    << t.horizon << ',' << t.origin << ',' << num(t.actual) << ','
                    << num(t.forecast) << '\n';
            }
            close_out(out, p);
            written.push_back(p);
        }
    }
    // Wall-clock times vary run to run; keep them out of the report files.
    const auto p = dir / "timings.csv";
    auto out = open_out(p);
    out << "series,model,replication,horizon,wall_time_s\n";
    for (const auto& x : r.records) {
        out << csv_field(x.series_id) << ',' << x.model << ',' << x.replication << ',' << x.horizon
            << ',' << num(x.wall_time) << '\n';
    }
    close_out(out, p);
    written.push_back(p);
    return written;
}

nlohmann::json to_json(const ExperimentResult& r) {
    using nlohmann::json;
    json j;
    j["records"] = json::array();
    for (const auto& x : r.records) {
        j["records"].push_back({{"series", x.series_id},
                                {"model", x.model},
                                {"replication", x.replication},
                                {"horizon", x.horizon},
                                {"smape", x.smape},
                                {"mase", x.mase},
                                {"failed", x.failed},
                                {"error", x.error}});
    }
    j["summary"] = json::array();
    for (const auto& a : r.reports) {
        j["summary"].push_back({{"model", a.model},
                                {"horizon", a.horizon},
                                {"smape_mean", a.smape_mean},
                                {"smape_std", a.smape_std},
                                {"mase_mean", a.mase_mean},
                                {"mase_std", a.mase_std},
                                {"runs", a.runs},
                                {"failed", a.failed},
                                {"series", a.series},
                                {"series_smape", a.series_smape},
                                {"series_mase", a.series_mase}});
    }
    j["tests"] = json::array();
    for (const auto& t : r.tests) {
        json e{{"horizon", t.horizon},
               {"metric", t.metric},
               {"models", t.models},
               {"chain", t.chain},
               {"notice", t.notice}};
        if (t.anova) {
            e["anova"] = {{"f", t.anova->f},
                          {"p", t.anova->p},
                          {"df_between", t.anova->df_between},
                          {"df_within", t.anova->df_within},
                          {"ms_within", t.anova->ms_within}};
        }
        if (t.tukey) {
            json pw = json::array();
            for (const auto& row : t.tukey->pairwise) {
                json jr = json::array();
                for (const auto& c : row) jr.push_back({{"difference", c.difference}, {"significant", c.significant}});
                pw.push_back(jr);
            }
            e["tukey"] = {{"means", t.tukey->means},
                          {"ranks", t.tukey->ranks},
                          {"q_critical", t.tukey->q_critical},
                          {"hsd", t.tukey->hsd},
                          {"df", t.tukey->df},
                          {"pairwise", pw}};
        }
        j["tests"].push_back(e);
    }
    j["forecasts"] = json::array();
    for (const auto& t : r.traces) {
        j["forecasts"].push_back({{"series", t.series_id},
                                  {"model", t.model},
                                  {"replication", t.replication},
                                  {"horizon", t.horizon},
                                  {"origin", t.origin},
                                  {"actual", t.actual},
                                  {"forecast", t.forecast}});
    }
    j["warnings"] = r.warnings;
    return j;
}

ExperimentResult result_from_json(const nlohmann::json& j) {
    ExperimentResult r;
    for (const auto& x : j.at("records")) {
        RunRecord rec;
        rec.series_id = x.at("series").get<std::string>();
        rec.model = x.at("model").get<std::string>();
        rec.replication = x.at("replication").get<std::size_t>();
        rec.horizon = x.at("horizon").get<std::size_t>();
        rec.smape = x.at("smape").get<double>();
        rec.mase = x.at("mase").get<double>();
        rec.failed = x.at("failed").get<bool>();
        rec.error = x.at("error").get<std::string>();
        r.records.push_back(std::move(rec));
    }
    for (const auto& x : j.at("summary")) {
        AccuracyReport a;
        a.model = x.at("model").get<std::string>();
        a.horizon = x.at("horizon").get<std::size_t>();
        a.smape_mean = x.at("smape_mean").get<double>();
        a.smape_std = x.at("smape_std").get<double>();
        a.mase_mean = x.at("mase_mean").get<double>();
        a.mase_std = x.at("mase_std").get<double>();
        a.runs = x.at("runs").get<std::size_t>();
        a.failed = x.at("failed").get<std::size_t>();
        a.series = x.at("series").get<std::vector<std::string>>();
        a.series_smape = x.at("series_smape").get<std::vector<double>>();
        a.series_mase = x.at("series_mase").get<std::vector<double>>();
        r.reports.push_back(std::move(a));
    }
    for (const auto& x : j.at("tests")) {
        ComparisonTest t;
        t.horizon = x.at("horizon").get<std::size_t>();
        t.metric = x.at("metric").get<std::string>();
        t.models = x.at("models").get<std::vector<std::string>>();
        t.chain = x.at("chain").get<std::string>();
        t.notice = x.at("notice").get<std::string>();
        if (x.contains("anova")) {
            const auto& a = x.at("anova");
            t.anova = AnovaResult{a.at("f").get<double>(), a.at("p").get<double>(),
                                  a.at("df_between").get<std::size_t>(),
                                  a.at("df_within").get<std::size_t>(),
                                  a.at("ms_within").get<double>()};
        }
        if (x.contains("tukey")) {
            const auto& k = x.at("tukey");
            TukeyResult tk;
            tk.means = k.at("means").get<std::vector<double>>();
            tk.ranks = k.at("ranks").get<std::vector<std::size_t>>();
            tk.q_critical = k.at("q_critical").get<double>();
            tk.hsd = k.at("hsd").get<double>();
            tk.df = k.at("df").get<std::size_t>();
            for (const auto& row : k.at("pairwise")) {
                std::vector<PairComparison> pr;
                for (const auto& c : row) pr.push_back({c.at("difference").get<double>(), c.at("significant").get<bool>()});
                tk.pairwise.push_back(std::move(pr));
            }
            t.tukey = std::move(tk);
        }
        r.tests.push_back(std::move(t));
    }
    for (const auto& x : j.at("forecasts")) {
        r.traces.push_back({x.at("series").get<std::string>(), x.at("model").get<std::string>(),
                            x.at("replication").get<std::size_t>(), x.at("horizon").get<std::size_t>(),
                            x.at("origin").get<std::size_t>(), x.at("actual").get<double>(),
                            x.at("forecast").get<double>()});
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
}

std::vector<NamedSeries> synthesize(const SynthOptions& opts) {
    if (opts.length < 2) throw ArgumentError("synthetic series need at least two observations");
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<NamedSeries> out;
    for (std::size_t i = 0; i < opts.count; ++i) {
        const double level = 100.0 + 200.0 * u(rng);
        const double slope = level * (-0.002 + 0.008 * u(rng));
        const double amp = 0.1 + 0.2 * u(rng);
        const double phase = 2.0 * std::numbers::pi * u(rng);
        const double amp2 = 0.3 * amp * u(rng);
        const double phi = 0.3 + 0.4 * u(rng);
        const double sd = level * (0.02 + 0.04 * u(rng));
        std::vector<double> v(opts.length);
        double e = 0.0;
        for (std::size_t t = 0; t < opts.length; ++t) {
            const double w = 2.0 * std::numbers::pi * static_cast<double>(t % 12) / 12.0;
            const double season = 1.0 + amp * std::sin(w + phase) + amp2 * std::cos(2.0 * w + phase);
            e = phi * e + sd * z(rng);
            const double base = level + slope * static_cast<double>(t);
            v[t] = std::max(1.0, base * season + e);
        }
        char id[32];
        std::snprintf(id, sizeof id, "syn%02zu", i + 1);
        out.push_back({id, Series(std::move(v))});
    }
    return out;
}

}  // namespace emdsvr
