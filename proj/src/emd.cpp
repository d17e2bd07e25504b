#include "emdsvr/emd.hpp"

#include <algorithm>
#include <bit>

#include "emdsvr/error.hpp"

namespace emdsvr {

std::size_t default_max_imfs(std::size_t n) {
    if (n == 0) return 0;
    return static_cast<std::size_t>(std::bit_width(n) - 1);
}

std::vector<double> sift_pass(std::span<const double> h, EndCondition ec) {
    if (h.size() < 4) throw ArgumentError("sifting needs at least 4 samples");
    if (std::all_of(h.begin(), h.end(), [&](double v) { return v == h.front(); })) {
        return std::vector<double>(h.size(), 0.0);
    }
    const ExtendedExtrema ext = extend(ec, h, find_extrema(h));
    const Envelopes env = build_envelopes(h.size(), ext.maxima, ext.minima);
    std::vector<double> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        out[i] = h[i] - 0.5 * (env.upper[i] + env.lower[i]);
    }
    return out;
}

namespace {

bool has_envelope_pair(std::span<const double> r) {
    const ExtremaSet e = find_extrema(r);
    return e.maxima.size() >= 2 && e.minima.size() >= 2;
}

}  // namespace

Decomposition decompose(const Series& s, const SiftingConfig& cfg) {
    const std::size_t n = s.size();
    if (n < 8) throw ArgumentError("decomposition needs at least 8 samples");
    if (cfg.passes_per_imf < 1) throw ArgumentError("passes_per_imf must be at least 1");
    const std::size_t max_imfs = cfg.max_imfs.value_or(default_max_imfs(n));
    if (cfg.max_imfs && max_imfs < 1) throw ArgumentError("max_imfs must be at least 1");

    const auto x = s.values();
    Decomposition d;
    d.source_length = n;
    std::vector<double> residue(x.begin(), x.end());

    while (d.imfs.size() < max_imfs && has_envelope_pair(residue)) {
        std::vector<double> h = residue;
        std::size_t done = 0;
        for (; done < cfg.passes_per_imf; ++done) {
            try {
                h = sift_pass(h, cfg.end_condition);
            } catch (const DegenerateEnvelopeError&) {
                break;
            } catch (const CoincidentExtremaError&) {
                break;
            }
        }
        // Not even one pass possible: the residue is final.
        if (done == 0) break;
        for (std::size_t i = 0; i < n; ++i) residue[i] -= h[i];
        d.imfs.push_back({std::move(h), d.imfs.size() + 1});
    }

    // Residue by subtraction from the source so the parts sum back exactly.
    d.residue.assign(x.begin(), x.end());
    std::vector<double> imf_sum(n, 0.0);
    for (const auto& imf : d.imfs) {
        for (std::size_t i = 0; i < n; ++i) imf_sum[i] += imf.values[i];
    }
    for (std::size_t i = 0; i < n; ++i) d.residue[i] = x[i] - imf_sum[i];
    return d;
}

}  // namespace emdsvr
