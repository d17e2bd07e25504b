#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "emdsvr/endcond.hpp"
#include "emdsvr/series.hpp"

namespace emdsvr {

struct SiftingConfig {
    std::size_t passes_per_imf = 10;
    /// Defaults to floor(log2 N) when unset.
    std::optional<std::size_t> max_imfs;
    EndCondition end_condition = EndCondition::Rato;
};

/// floor(log2 n) for n >= 1.
std::size_t default_max_imfs(std::size_t n);

/// One sifting step: h minus the mean of its end-extended spline envelopes.
///
/// A constant sequence is its own envelope pair and sifts to zeros. Throws
/// DegenerateEnvelopeError when the end condition cannot form envelopes.
std::vector<double> sift_pass(std::span<const double> h, EndCondition ec);

/// Empirical mode decomposition with a fixed number of sifting passes per IMF.
///
/// Extraction stops when the running residue has fewer than two maxima or two
/// minima, after max_imfs IMFs, or when the end condition cannot extend the
/// residue. A later pass that fails ends the current IMF early. The residue
/// is the source minus the IMFs.
Decomposition decompose(const Series& s, const SiftingConfig& cfg = {});

}  // namespace emdsvr
