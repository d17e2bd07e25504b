#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace emdsvr {

/// A local extremum. `t` is a sample index and may lie outside [0, N-1]
/// once an end condition has synthesized boundary extrema.
struct Extremum {
    std::ptrdiff_t t = 0;
    double value = 0.0;

    friend bool operator==(const Extremum&, const Extremum&) = default;
};

/// Interior extrema of a sequence, each list strictly increasing in t.
struct ExtremaSet {
    std::vector<Extremum> maxima;
    std::vector<Extremum> minima;
};

/// Interior strict local extrema.
///
/// A plateau of equal values bounded on both sides by lower (higher)
/// neighbours yields a single maximum (minimum) at floor((first+last)/2).
/// The first and last samples are never reported.
ExtremaSet find_extrema(std::span<const double> values);

struct Knot {
    double t = 0.0;
    double value = 0.0;
};

/// Natural cubic spline (zero second derivative at both end knots).
/// Two knots degenerate to linear interpolation.
class NaturalCubicSpline {
public:
    /// Knots must have strictly increasing t; at least two are required.
    explicit NaturalCubicSpline(std::span<const Knot> knots);

    /// Evaluates inside [front().t, back().t]; throws ArgumentError outside.
    double operator()(double t) const;

    /// Evaluates a batch of query points.
    std::vector<double> evaluate(std::span<const double> ts) const;

    double lower() const noexcept { return t_.front(); }
    double upper() const noexcept { return t_.back(); }

private:
    std::size_t segment(double t) const;

    std::vector<double> t_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at knots
};

std::vector<double> spline_interpolate(std::span<const Knot> knots, std::span<const double> query);

struct Envelopes {
    std::vector<double> upper;
    std::vector<double> lower;

    std::vector<double> mean() const;
};

/// Upper/lower spline envelopes sampled at every index 0..length-1.
///
/// The knot lists must already cover [0, length-1]; an end condition is
/// responsible for that. Fewer than two knots on either side throws
/// DegenerateEnvelopeError.
Envelopes build_envelopes(std::size_t length, std::span<const Extremum> maxima,
                          std::span<const Extremum> minima);

}  // namespace emdsvr
