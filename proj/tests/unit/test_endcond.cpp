#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "emdsvr/endcond.hpp"
#include "emdsvr/error.hpp"
#include "signals.hpp"

using namespace emdsvr;

namespace {

bool sorted_strict(const std::vector<Extremum>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i].t <= v[i - 1].t) return false;
    }
    return true;
}

ExtendedExtrema negate(ExtendedExtrema e) {
    for (auto& x : e.maxima) x.value = -x.value;
    for (auto& x : e.minima) x.value = -x.value;
    std::swap(e.maxima, e.minima);
    return e;
}

}  // namespace

TEST_CASE("parse and name end conditions") {
    for (EndCondition ec : kAllEndConditions) CHECK(parse_end_condition(to_string(ec)) == ec);
    CHECK_THROWS_AS(parse_end_condition("spline"), ArgumentError);
}

TEST_CASE("none clamps the series ends") {
    const std::vector<double> x{1, 3, 2, 4, 1};
    const ExtendedExtrema e = extend_none(x, find_extrema(x));
    CHECK(e.maxima == std::vector<Extremum>{{0, 1}, {1, 3}, {3, 4}, {4, 1}});
    CHECK(e.minima == std::vector<Extremum>{{0, 1}, {2, 2}, {4, 1}});
    CHECK(e.covers(x.size()));
}

TEST_CASE("monotone series cannot be extended") {
    const std::vector<double> x{1, 2, 3, 4, 5, 6};
    for (EndCondition ec : kAllEndConditions) {
        CHECK_THROWS_AS(extend(ec, x, find_extrema(x)), DegenerateEnvelopeError);
    }
}

TEST_CASE("mirror reflects across the boundary-nearest extremum") {
    ExtremaSet ex;
    ex.maxima = {{3, 5}, {7, 4}};
    ex.minima = {{5, 1}, {9, 0}};
    const std::vector<double> x(14, 0.0);
    const ExtendedExtrema e = extend_mirror(x, ex);
    // 2*3 - 5 = 1
    const auto it = std::find(e.minima.begin(), e.minima.end(), Extremum{5, 1});
    REQUIRE(it != e.minima.begin());
    CHECK(*(it - 1) == Extremum{1, 1});
    // 2*9 - 7 = 11
    const auto jt = std::find(e.maxima.begin(), e.maxima.end(), Extremum{7, 4});
    REQUIRE(jt + 1 != e.maxima.end());
    CHECK(*(jt + 1) == Extremum{11, 4});
    CHECK(e.covers(x.size()));
    CHECK(sorted_strict(e.maxima));
    CHECK(sorted_strict(e.minima));
}

TEST_CASE("mirror never re-emits the pivot") {
    ExtremaSet ex;
    ex.maxima = {{2, 1}, {6, 1}};
    ex.minima = {{4, -1}, {8, -1}};
    const std::vector<double> x(10, 0.0);
    const ExtendedExtrema e = extend_mirror(x, ex);
    CHECK(std::count(e.maxima.begin(), e.maxima.end(), Extremum{2, 1}) == 1);
    CHECK(std::count(e.minima.begin(), e.minima.end(), Extremum{8, -1}) == 1);
    // reflection of the min at 4 about the max at 2 lands on 0
    CHECK(e.minima.front() == Extremum{0, -1});
}

TEST_CASE("Coughlin wave parameters") {
    ExtremaSet ex;
    ex.maxima = {{6, 4}, {20, 3}};
    ex.minima = {{2, 0}, {18, 1}};
    const CoughlinWave a = coughlin_wave_start(ex);
    CHECK(a.amplitude == 4.0);
    CHECK(a.period == 8.0);
    CHECK(a.local_mean == 2.0);
    CHECK_FALSE(a.anchor_is_max);
    CHECK(a(2.0) == doctest::Approx(0.0));

    const CoughlinWave b = coughlin_wave_end(ex, 24);
    CHECK(b.amplitude == 2.0);
    CHECK(b.period == 4.0);
    CHECK(b.anchor.t == 20);
    CHECK(b(20.0) == doctest::Approx(3.0));
}

TEST_CASE("Coughlin extension of a sinusoid lies on its envelope") {
    const auto x = signals::sine(100, 16.0, 1.5);
    const ExtendedExtrema e = extend_coughlin(x, find_extrema(x));
    CHECK(e.covers(x.size()));
    for (const auto& m : e.maxima) CHECK(std::abs(m.value - 1.5) < 0.02 * 1.5);
    for (const auto& m : e.minima) CHECK(std::abs(m.value + 1.5) < 0.02 * 1.5);
}

TEST_CASE("slope-based step matches the hand-derived example") {
    ExtremaSet ex;
    ex.maxima = {{2, 5}, {6, 7}};
    ex.minima = {{4, 1}, {9, 2}};
    const SlopeBasedStep s = sbm_start_step(ex);
    CHECK(s.s1 == 3.0);
    CHECK(s.s2 == -2.0);
    CHECK(s.new_min == Extremum{-1, -4});
    CHECK(s.new_max == Extremum{-2, -2});

    const std::vector<double> x(12, 0.0);
    const ExtendedExtrema e = extend_sbm(x, ex);
    CHECK(e.minima.front() == Extremum{-1, -4});
    CHECK(e.maxima.front() == Extremum{-2, -2});
    CHECK(e.covers(x.size()));
}

TEST_CASE("slope-based extension of a periodic sawtooth stays on the pattern") {
    // maxima on one line, minima on another: Q(0) continues slope s1 from P(1)
    ExtremaSet ex;
    ex.maxima = {{2, 10}, {6, 10}, {10, 10}};
    ex.minima = {{4, 0}, {8, 0}, {12, 0}};
    const SlopeBasedStep s = sbm_start_step(ex);
    CHECK(s.new_min.value == doctest::Approx(10.0 - s.s1 * (2 - s.new_min.t)));
    CHECK(s.new_min == Extremum{0, 0});
    CHECK(s.new_max == Extremum{-2, 10});
}

TEST_CASE("extensions are odd in the ordinate") {
    const auto x = signals::add(signals::sine(90, 14.0, 1.0, 0.4), signals::sine(90, 37.0, 0.6));
    std::vector<double> neg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
    for (EndCondition ec : kAllEndConditions) {
        CAPTURE(to_string(ec));
        const ExtendedExtrema a = extend(ec, x, find_extrema(x));
        const ExtendedExtrema b = extend(ec, neg, find_extrema(neg));
        const ExtendedExtrema na = negate(a);
        REQUIRE(na.maxima.size() == b.maxima.size());
        REQUIRE(na.minima.size() == b.minima.size());
        for (std::size_t i = 0; i < b.maxima.size(); ++i) {
            CHECK(na.maxima[i].t == b.maxima[i].t);
            CHECK(na.maxima[i].value == doctest::Approx(b.maxima[i].value));
        }
        for (std::size_t i = 0; i < b.minima.size(); ++i) {
            CHECK(na.minima[i].t == b.minima[i].t);
            CHECK(na.minima[i].value == doctest::Approx(b.minima[i].value));
        }
    }
}

TEST_CASE("Rato reflects about the boundary samples") {
    ExtremaSet ex;
    ex.maxima = {{2, 4}, {8, 3}};
    ex.minima = {{1, -1}, {9, 0}};
    const std::vector<double> x(11, 0.0);
    const ExtendedExtrema e = extend_rato(x, ex);
    CHECK(e.minima.front() == Extremum{-2, -1});
    CHECK(e.maxima.front() == Extremum{-1, 4});
    CHECK(e.maxima.back() == Extremum{11, 3});
    CHECK(e.minima.back() == Extremum{12, 0});
}

TEST_CASE("Rato continues a sinusoid cut at a zero crossing exactly") {
    // boundary at a zero crossing of an odd-symmetric wave
    const auto x = signals::sine(65, 16.0);
    const ExtendedExtrema e = extend_rato(x, find_extrema(x));
    // true extrema before t=0: max at -12, min at -4 (values 1, -1)
    CHECK(e.minima.front().t == -4);
    CHECK(e.minima.front().value == doctest::Approx(-1.0));
    CHECK(e.maxima.front().t == -12);
    CHECK(e.maxima.front().value == doctest::Approx(1.0));
}

TEST_CASE("every end condition covers a generic series") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const auto x = signals::random_mixture(64 + static_cast<std::size_t>(rep) * 9, rng);
        const ExtremaSet ex = find_extrema(x);
        if (ex.maxima.size() < 2 || ex.minima.size() < 2) continue;
        for (EndCondition ec : kAllEndConditions) {
            CAPTURE(to_string(ec));
            ExtendedExtrema e;
            try {
                e = extend(ec, x, ex);
            } catch (const CoincidentExtremaError&) {
                continue;
            }
            CHECK(e.covers(x.size()));
            CHECK(sorted_strict(e.maxima));
            CHECK(sorted_strict(e.minima));
        }
    }
}
