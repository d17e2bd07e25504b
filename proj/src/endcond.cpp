#include "emdsvr/endcond.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "emdsvr/error.hpp"

namespace emdsvr {

EndCondition parse_end_condition(std::string_view name) {
    if (name == "none") return EndCondition::None;
    if (name == "mirror") return EndCondition::Mirror;
    if (name == "coughlin") return EndCondition::Coughlin;
    if (name == "sbm") return EndCondition::SlopeBased;
    if (name == "rato") return EndCondition::Rato;
    throw ArgumentError("unknown end condition '" + std::string(name) + "'");
}

std::string_view to_string(EndCondition ec) {
    switch (ec) {
        case EndCondition::None: return "none";
        case EndCondition::Mirror: return "mirror";
        case EndCondition::Coughlin: return "coughlin";
        case EndCondition::SlopeBased: return "sbm";
        case EndCondition::Rato: return "rato";
    }
    return "none";
}

bool ExtendedExtrema::covers(std::size_t length) const {
    if (maxima.empty() || minima.empty() || length == 0) return false;
    const auto last = static_cast<std::ptrdiff_t>(length) - 1;
    return maxima.front().t <= 0 && minima.front().t <= 0 && maxima.back().t >= last &&
           minima.back().t >= last;
}

namespace {

// Every rule below is written for the start of the series: the boundary
// sample sits at t = 0 and real extrema have t >= 1. The end of the series is
// handled by mirroring the time axis, running the same rule, and mapping back.
using Frame = ExtremaSet;

Frame reversed_frame(const ExtremaSet& ext, std::ptrdiff_t last) {
    Frame f;
    for (auto it = ext.maxima.rbegin(); it != ext.maxima.rend(); ++it) {
        f.maxima.push_back({last - it->t, it->value});
    }
    for (auto it = ext.minima.rbegin(); it != ext.minima.rend(); ++it) {
        f.minima.push_back({last - it->t, it->value});
    }
    return f;
}

// Synthetic extrema in frame coordinates, ascending in frame t.
struct Additions {
    std::vector<Extremum> maxima;
    std::vector<Extremum> minima;
};

void require_counts(const ExtremaSet& ext, std::size_t per_type, std::string_view method) {
    if (ext.maxima.size() < per_type || ext.minima.size() < per_type) {
        throw DegenerateEnvelopeError(std::string(method) + " end condition needs at least " +
                                      std::to_string(per_type) +
                                      " maxima and minima, got " +
                                      std::to_string(ext.maxima.size()) + " and " +
                                      std::to_string(ext.minima.size()));
    }
}

bool frame_covered(const Frame& f) {
    return f.maxima.front().t <= 0 && f.minima.front().t <= 0;
}

// Iteration cap for rules that may need several steps to reach the boundary.
// Each step moves the front by at least one sample, so the cap is never hit
// for series shorter than this.
constexpr int kMaxSteps = 1 << 16;

Additions collect(const Frame& f, std::size_t real_max, std::size_t real_min) {
    Additions a;
    a.maxima.assign(f.maxima.begin(),
                    f.maxima.begin() + static_cast<std::ptrdiff_t>(f.maxima.size() - real_max));
    a.minima.assign(f.minima.begin(),
                    f.minima.begin() + static_cast<std::ptrdiff_t>(f.minima.size() - real_min));
    return a;
}

Additions none_side(const Frame&, double boundary_value) {
    return {{{0, boundary_value}}, {{0, boundary_value}}};
}

Additions mirror_side(Frame f) {
    const std::size_t real_max = f.maxima.size();
    const std::size_t real_min = f.minima.size();
    for (int step = 0; !frame_covered(f); ++step) {
        if (step == kMaxSteps) throw DegenerateEnvelopeError("mirror extension did not converge");
        auto& maxima = f.maxima;
        auto& minima = f.minima;
        if (maxima.front().t < minima.front().t) {
            const Extremum& pivot = maxima.front();
            const Extremum& moved = minima.front();
            minima.insert(minima.begin(), Extremum{2 * pivot.t - moved.t, moved.value});
        } else {
            const Extremum& pivot = minima.front();
            const Extremum& moved = maxima.front();
            maxima.insert(maxima.begin(), Extremum{2 * pivot.t - moved.t, moved.value});
        }
    }
    return collect(f, real_max, real_min);
}

SlopeBasedStep sbm_step(const Frame& f) {
    const bool max_first = f.maxima.front().t < f.minima.front().t;
    const auto& lead = max_first ? f.maxima : f.minima;   // type of the boundary-nearest extremum
    const auto& other = max_first ? f.minima : f.maxima;
    const Extremum& a1 = lead[0];
    const Extremum& a2 = lead[1];
    const Extremum& b1 = other[0];
    const Extremum& b2 = other[1];
    if (a2.t == b1.t || b1.t == a1.t) {
        throw CoincidentExtremaError("slope-based end condition: coincident extrema times");
    }
    SlopeBasedStep out;
    out.s1 = (a2.value - b1.value) / static_cast<double>(a2.t - b1.t);
    out.s2 = (b1.value - a1.value) / static_cast<double>(b1.t - a1.t);
    const std::ptrdiff_t t_b0 = b1.t - (b2.t - b1.t);
    const std::ptrdiff_t t_a0 = a1.t - (a2.t - a1.t);
    const double v_b0 = a1.value - out.s1 * static_cast<double>(a1.t - t_b0);
    const double v_a0 = v_b0 - out.s2 * static_cast<double>(t_b0 - t_a0);
    const Extremum new_a{t_a0, v_a0};
    const Extremum new_b{t_b0, v_b0};
    out.new_max = max_first ? new_a : new_b;
    out.new_min = max_first ? new_b : new_a;
    return out;
}

// One slope-based step on the real extrema. If a type is still short of the
// boundary, its newest synthetic extremum is repeated outward at the same
// spacing; re-applying the slopes compounds the sawtooth drift.
Additions sbm_side(Frame f) {
    const std::size_t real_max = f.maxima.size();
    const std::size_t real_min = f.minima.size();
    const std::ptrdiff_t d_max = f.maxima[1].t - f.maxima[0].t;
    const std::ptrdiff_t d_min = f.minima[1].t - f.minima[0].t;
    const SlopeBasedStep first = sbm_step(f);
    f.maxima.insert(f.maxima.begin(), first.new_max);
    f.minima.insert(f.minima.begin(), first.new_min);
    for (int step = 0; !frame_covered(f); ++step) {
        if (step == kMaxSteps) throw DegenerateEnvelopeError("slope-based extension did not converge");
        if (f.maxima.front().t > 0) {
            const Extremum e = f.maxima.front();
            f.maxima.insert(f.maxima.begin(), Extremum{e.t - d_max, e.value});
        }
        if (f.minima.front().t > 0) {
            const Extremum e = f.minima.front();
            f.minima.insert(f.minima.begin(), Extremum{e.t - d_min, e.value});
        }
    }
    return collect(f, real_max, real_min);
}

Additions rato_side(const Frame& f) {
    const Extremum& max1 = f.maxima.front();
    const Extremum& min1 = f.minima.front();
    return {{{-min1.t, max1.value}}, {{-max1.t, min1.value}}};
}

CoughlinWave coughlin_wave(const Frame& f) {
    const Extremum& max1 = f.maxima.front();
    const Extremum& min1 = f.minima.front();
    if (max1.t == min1.t) {
        throw CoincidentExtremaError("Coughlin end condition: coincident extrema times (P = 0)");
    }
    CoughlinWave w;
    w.amplitude = std::abs(max1.value - min1.value);
    w.period = 2.0 * std::abs(static_cast<double>(max1.t - min1.t));
    w.local_mean = 0.5 * (max1.value + min1.value);
    w.anchor_is_max = max1.t < min1.t;
    w.anchor = w.anchor_is_max ? max1 : min1;
    return w;
}

Additions coughlin_side(const Frame& f) {
    const CoughlinWave w = coughlin_wave(f);
    // Sample one full period (plus a margin) beyond the boundary up to the
    // anchor; the anchor itself is an endpoint of the sample and is skipped.
    const auto period = static_cast<std::ptrdiff_t>(w.period);
    const std::ptrdiff_t lo = -period - 2;
    const std::ptrdiff_t hi = w.anchor.t;
    std::vector<double> wave;
    wave.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::ptrdiff_t t = lo; t <= hi; ++t) wave.push_back(w(static_cast<double>(t)));

    const ExtremaSet found = find_extrema(wave);
    Additions a;
    for (const auto& e : found.maxima) {
        if (e.t + lo <= 0) a.maxima.push_back({e.t + lo, e.value});
    }
    for (const auto& e : found.minima) {
        if (e.t + lo <= 0) a.minima.push_back({e.t + lo, e.value});
    }
    return a;
}

template <typename SideRule>
ExtendedExtrema assemble(std::span<const double> s, const ExtremaSet& ext, SideRule rule) {
    const auto last = static_cast<std::ptrdiff_t>(s.size()) - 1;
    const Additions head = rule(ext, s.front());
    const Additions tail = rule(reversed_frame(ext, last), s.back());

    auto join = [last](const std::vector<Extremum>& start, const std::vector<Extremum>& interior,
                       const std::vector<Extremum>& end_frame) {
        std::vector<Extremum> out;
        out.reserve(start.size() + interior.size() + end_frame.size());
        out.insert(out.end(), start.begin(), start.end());
        out.insert(out.end(), interior.begin(), interior.end());
        for (auto it = end_frame.rbegin(); it != end_frame.rend(); ++it) {
            out.push_back({last - it->t, it->value});
        }
        return out;
    };
    return {join(head.maxima, ext.maxima, tail.maxima), join(head.minima, ext.minima, tail.minima)};
}

void require_series(std::span<const double> s) {
    if (s.size() < 3) throw ArgumentError("end condition needs a series of at least 3 samples");
}

}  // namespace

double CoughlinWave::operator()(double t) const {
    const double phase = anchor_is_max ? std::numbers::pi / 2.0 : -std::numbers::pi / 2.0;
    return 0.5 * amplitude *
               std::sin(2.0 * std::numbers::pi * (t - static_cast<double>(anchor.t)) / period +
                        phase) +
           local_mean;
}

CoughlinWave coughlin_wave_start(const ExtremaSet& ext) {
    require_counts(ext, 1, "Coughlin");
    return coughlin_wave(ext);
}

CoughlinWave coughlin_wave_end(const ExtremaSet& ext, std::size_t length) {
    require_counts(ext, 1, "Coughlin");
    const auto last = static_cast<std::ptrdiff_t>(length) - 1;
    CoughlinWave w = coughlin_wave(reversed_frame(ext, last));
    w.anchor.t = last - w.anchor.t;
    return w;
}

SlopeBasedStep sbm_start_step(const ExtremaSet& ext) {
    require_counts(ext, 2, "slope-based");
    return sbm_step(ext);
}

ExtendedExtrema extend_none(std::span<const double> s, const ExtremaSet& ext) {
    require_series(s);
    require_counts(ext, 1, "none");
    return assemble(s, ext, [](const Frame& f, double b) { return none_side(f, b); });
}

ExtendedExtrema extend_mirror(std::span<const double> s, const ExtremaSet& ext) {
    require_series(s);
    require_counts(ext, 1, "mirror");
    return assemble(s, ext, [](const Frame& f, double) { return mirror_side(f); });
}

ExtendedExtrema extend_coughlin(std::span<const double> s, const ExtremaSet& ext) {
    require_series(s);
    require_counts(ext, 2, "Coughlin");
    return assemble(s, ext, [](const Frame& f, double) { return coughlin_side(f); });
}

ExtendedExtrema extend_sbm(std::span<const double> s, const ExtremaSet& ext) {
    require_series(s);
    require_counts(ext, 2, "slope-based");
    return assemble(s, ext, [](const Frame& f, double) { return sbm_side(f); });
}

ExtendedExtrema extend_rato(std::span<const double> s, const ExtremaSet& ext) {
    require_series(s);
    require_counts(ext, 1, "Rato");
    return assemble(s, ext, [](const Frame& f, double) { return rato_side(f); });
}

ExtendedExtrema extend(EndCondition ec, std::span<const double> s, const ExtremaSet& ext) {
    switch (ec) {
        case EndCondition::None: return extend_none(s, ext);
        case EndCondition::Mirror: return extend_mirror(s, ext);
        case EndCondition::Coughlin: return extend_coughlin(s, ext);
        case EndCondition::SlopeBased: return extend_sbm(s, ext);
        case EndCondition::Rato: return extend_rato(s, ext);
    }
    throw ArgumentError("unknown end condition");
}

}  // namespace emdsvr
