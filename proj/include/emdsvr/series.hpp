#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace emdsvr {

/// Uniformly sampled real-valued observations. Immutable after construction.
///
/// All algorithms work on the integer sample index; t0 and dt only label
/// the physical time axis.
class Series {
public:
    /// Throws ArgumentError on non-finite values or dt <= 0.
    explicit Series(std::vector<double> values, double t0 = 0.0, double dt = 1.0);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double t0() const noexcept { return t0_; }
    double dt() const noexcept { return dt_; }
    double time_at(std::size_t i) const noexcept { return t0_ + dt_ * static_cast<double>(i); }

    /// New series with `more` appended, same time origin and step.
    Series extended(std::span<const double> more) const;

private:
    std::vector<double> values_;
    double t0_;
    double dt_;
};

struct Imf {
    std::vector<double> values;
    std::size_t index = 0;  // 1-based extraction order
};

/// IMFs plus residue. The element-wise sum of all parts equals the source.
struct Decomposition {
    std::vector<Imf> imfs;
    std::vector<double> residue;
    std::size_t source_length = 0;

    /// IMFs plus the residue.
    std::size_t component_count() const noexcept { return imfs.size() + 1; }
};

/// Element-wise sum of all IMFs and the residue.
/// Throws StructuralError when component lengths differ, ArgumentError when empty.
Series reconstruct(const Decomposition& d);

/// Splits off the last `h` observations. Requires 0 < h < s.size().
std::pair<Series, Series> split_holdout(const Series& s, std::size_t h);

}  // namespace emdsvr
