#include "emdsvr/series.hpp"

#include <cmath>
#include <string>

#include "emdsvr/error.hpp"

namespace emdsvr {

Series::Series(std::vector<double> values, double t0, double dt)
    : values_(std::move(values)), t0_(t0), dt_(dt) {
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw ArgumentError("series time step must be positive and finite");
    }
    if (!std::isfinite(t0_)) {
        throw ArgumentError("series time origin must be finite");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ArgumentError("series value at index " + std::to_string(i) + " is not finite");
        }
    }
}

Series Series::extended(std::span<const double> more) const {
    std::vector<double> v(values_);
    v.insert(v.end(), more.begin(), more.end());
    return Series(std::move(v), t0_, dt_);
}

Series reconstruct(const Decomposition& d) {
    if (d.imfs.empty() && d.residue.empty()) {
        throw ArgumentError("cannot reconstruct an empty decomposition");
    }
    const std::size_t n = d.residue.empty() ? d.imfs.front().values.size() : d.residue.size();
    std::vector<double> sum(n, 0.0);
    for (const auto& imf : d.imfs) {
        if (imf.values.size() != n) {
            throw StructuralError("IMF " + std::to_string(imf.index) + " has length " +
                                  std::to_string(imf.values.size()) + ", expected " +
                                  std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i) sum[i] += imf.values[i];
    }
    if (!d.residue.empty()) {
        for (std::size_t i = 0; i < n; ++i) sum[i] += d.residue[i];
    }
    return Series(std::move(sum));
}

std::pair<Series, Series> split_holdout(const Series& s, std::size_t h) {
    if (h == 0 || h >= s.size()) {
        throw ArgumentError("hold-out length " + std::to_string(h) +
                            " must be in (0, " + std::to_string(s.size()) + ")");
    }
    const auto v = s.values();
    const std::size_t cut = s.size() - h;
    Series head(std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(cut)),
                s.t0(), s.dt());
    Series tail(std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(cut), v.end()),
                s.time_at(cut), s.dt());
    return {std::move(head), std::move(tail)};
}

}  // namespace emdsvr
