#include "emdsvr/envelope.hpp"

#include <algorithm>
#include <string>

#include "emdsvr/error.hpp"

namespace emdsvr {

ExtremaSet find_extrema(std::span<const double> x) {
    ExtremaSet out;
    const std::size_t n = x.size();
    if (n < 3) return out;

    std::size_t i = 1;
    while (i + 1 < n) {
        // Extend over a run of equal values starting at i.
        std::size_t j = i;
        while (j + 1 < n && x[j + 1] == x[i]) ++j;
        if (j + 1 >= n) break;  // plateau touches the last sample

        const double left = x[i - 1];
        const double right = x[j + 1];
        const auto mid = static_cast<std::ptrdiff_t>((i + j) / 2);
        if (x[i] > left && x[i] > right) {
            out.maxima.push_back({mid, x[i]});
        } else if (x[i] < left && x[i] < right) {
            out.minima.push_back({mid, x[i]});
        }
        i = j + 1;
    }
    return out;
}

NaturalCubicSpline::NaturalCubicSpline(std::span<const Knot> knots) {
    const std::size_t k = knots.size();
    if (k < 2) throw ArgumentError("spline needs at least two knots");
    t_.reserve(k);
    y_.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (i > 0 && !(knots[i].t > knots[i - 1].t)) {
            throw ArgumentError("spline knots must have strictly increasing abscissae (knot " +
                                std::to_string(i) + ")");
        }
        t_.push_back(knots[i].t);
        y_.push_back(knots[i].value);
    }
    m_.assign(k, 0.0);
    if (k == 2) return;

    // Tridiagonal system for the interior second derivatives (Thomas algorithm).
    const std::size_t r = k - 2;
    std::vector<double> diag(r), upper(r), rhs(r);
    for (std::size_t i = 1; i + 1 < k; ++i) {
        const double h0 = t_[i] - t_[i - 1];
        const double h1 = t_[i + 1] - t_[i];
        diag[i - 1] = 2.0 * (h0 + h1);
        upper[i - 1] = h1;
        rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    // Symmetric: the sub-diagonal of row i equals the super-diagonal of row i-1.
    for (std::size_t i = 1; i < r; ++i) {
        const double w = upper[i - 1] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    m_[r] = rhs[r - 1] / diag[r - 1];
    for (std::size_t i = r - 1; i-- > 0;) {
        m_[i + 1] = (rhs[i] - upper[i] * m_[i + 2]) / diag[i];
    }
}

std::size_t NaturalCubicSpline::segment(double t) const {
    if (t < t_.front() || t > t_.back()) {
        throw ArgumentError("spline query " + std::to_string(t) + " outside knot span [" +
                            std::to_string(t_.front()) + ", " + std::to_string(t_.back()) + "]");
    }
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    auto seg = static_cast<std::size_t>(it - t_.begin());
    if (seg == 0) seg = 1;
    if (seg >= t_.size()) seg = t_.size() - 1;
    return seg - 1;
}

double NaturalCubicSpline::operator()(double t) const {
    const std::size_t i = segment(t);
    const double h = t_[i + 1] - t_[i];
    const double a = (t_[i + 1] - t) / h;
    const double b = (t - t_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h) / 6.0;
}

std::vector<double> NaturalCubicSpline::evaluate(std::span<const double> ts) const {
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back((*this)(t));
    return out;
}

std::vector<double> spline_interpolate(std::span<const Knot> knots, std::span<const double> query) {
    return NaturalCubicSpline(knots).evaluate(query);
}

std::vector<double> Envelopes::mean() const {
    std::vector<double> m(upper.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (upper[i] + lower[i]);
    return m;
}

namespace {

std::vector<double> sample_envelope(std::size_t length, std::span<const Extremum> ext) {
    std::vector<Knot> knots;
    knots.reserve(ext.size());
    for (const auto& e : ext) knots.push_back({static_cast<double>(e.t), e.value});
    NaturalCubicSpline spline(knots);
    std::vector<double> out(length);
    for (std::size_t i = 0; i < length; ++i) out[i] = spline(static_cast<double>(i));
    return out;
}

}  // namespace

Envelopes build_envelopes(std::size_t length, std::span<const Extremum> maxima,
                          std::span<const Extremum> minima) {
    if (maxima.size() < 2 || minima.size() < 2) {
        throw DegenerateEnvelopeError("envelope needs at least two maxima and two minima");
    }
    return {sample_envelope(length, maxima), sample_envelope(length, minima)};
}

}  // namespace emdsvr
