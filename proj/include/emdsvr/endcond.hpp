#pragma once

#include <array>
#include <span>
#include <string_view>

#include "emdsvr/envelope.hpp"

namespace emdsvr {

/// Boundary extension strategy applied before every envelope construction.
enum class EndCondition { None, Mirror, Coughlin, SlopeBased, Rato };

inline constexpr std::array<EndCondition, 5> kAllEndConditions = {
    EndCondition::None, EndCondition::Mirror, EndCondition::Coughlin, EndCondition::SlopeBased,
    EndCondition::Rato};

/// Accepts "none", "mirror", "coughlin", "sbm", "rato". Throws ArgumentError otherwise.
EndCondition parse_end_condition(std::string_view name);
std::string_view to_string(EndCondition ec);

/// Interior extrema plus synthetic boundary extrema, each list strictly
/// increasing in t. When the interior set had at least two extrema of each
/// type, both lists start at t <= 0 and end at t >= N-1.
struct ExtendedExtrema {
    std::vector<Extremum> maxima;
    std::vector<Extremum> minima;

    bool covers(std::size_t length) const;
};

/// Appends the series end samples to both knot lists (the naive clamp).
ExtendedExtrema extend_none(std::span<const double> s, const ExtremaSet& ext);

/// Reflects the first extremum of one type across the boundary-nearest
/// extremum of the other type; repeated with the newest extremum as pivot
/// until both knot lists reach the boundary.
ExtendedExtrema extend_mirror(std::span<const double> s, const ExtremaSet& ext);

/// Appends one period of a sinusoidal wave beyond each boundary whose
/// amplitude, period and mean come from the two boundary-nearest extrema.
ExtendedExtrema extend_coughlin(std::span<const double> s, const ExtremaSet& ext);

/// Slope-based extrapolation of the two boundary-nearest extrema of each type.
ExtendedExtrema extend_sbm(std::span<const double> s, const ExtremaSet& ext);

/// Copies each boundary extremum's value to the reflection of the other
/// type's time about the boundary sample.
ExtendedExtrema extend_rato(std::span<const double> s, const ExtremaSet& ext);

ExtendedExtrema extend(EndCondition ec, std::span<const double> s, const ExtremaSet& ext);

/// Wave used by the Coughlin extension at one boundary.
struct CoughlinWave {
    double amplitude = 0.0;   // |Max - Min| of the boundary pair
    double period = 0.0;      // 2 |t(Max) - t(Min)|
    double local_mean = 0.0;  // (Max + Min) / 2
    Extremum anchor;          // boundary-nearest extremum the wave passes through
    bool anchor_is_max = true;

    /// (A/2) sin(2 pi t / P + phase) + local mean, phased to peak at the anchor.
    double operator()(double t) const;
};

CoughlinWave coughlin_wave_start(const ExtremaSet& ext);
CoughlinWave coughlin_wave_end(const ExtremaSet& ext, std::size_t length);

/// One application of the slope-based rule at the start of a series.
struct SlopeBasedStep {
    double s1 = 0.0;
    double s2 = 0.0;
    Extremum new_max;
    Extremum new_min;
};

SlopeBasedStep sbm_start_step(const ExtremaSet& ext);

}  // namespace emdsvr
