#include "doctest.h"

#include <cmath>
#include <limits>

#include "emdsvr/error.hpp"
#include "emdsvr/series.hpp"

using namespace emdsvr;

TEST_CASE("series rejects non-finite values and bad step") {
    CHECK_THROWS_AS(Series({1.0, std::nan("")}), ArgumentError);
    CHECK_THROWS_AS(Series({1.0, std::numeric_limits<double>::infinity()}), ArgumentError);
    CHECK_THROWS_AS(Series({1.0}, 0.0, 0.0), ArgumentError);
    const Series s({1.0, 2.0}, 10.0, 0.5);
    CHECK(s.time_at(1) == 10.5);
}

TEST_CASE("extended keeps time axis") {
    const Series s({1.0, 2.0}, 3.0, 2.0);
    const std::vector<double> more{5.0, 6.0};
    const Series e = s.extended(more);
    REQUIRE(e.size() == 4);
    CHECK(e[3] == 6.0);
    CHECK(e.t0() == 3.0);
    CHECK(e.dt() == 2.0);
}

TEST_CASE("reconstruct sums the parts") {
    Decomposition d;
    d.residue = {1, 2, 3};
    const Series r1 = reconstruct(d);
    CHECK(std::vector<double>(r1.values().begin(), r1.values().end()) == std::vector<double>{1, 2, 3});

    Decomposition two;
    two.imfs = {{{1, 0}, 1}, {{0, 1}, 2}};
    two.residue = {1, 1};
    const Series r = reconstruct(two);
    CHECK(r[0] == 2.0);
    CHECK(r[1] == 2.0);

    Decomposition bad;
    bad.imfs = {{{1, 0, 0}, 1}};
    bad.residue = {1, 1};
    CHECK_THROWS_AS(reconstruct(bad), StructuralError);
    CHECK_THROWS_AS(reconstruct(Decomposition{}), ArgumentError);
}

TEST_CASE("split_holdout partitions") {
    std::vector<double> v(24);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i + 1);
    const auto [train, test] = split_holdout(Series(v), 18);
    CHECK(train.size() == 6);
    CHECK(train[5] == 6.0);
    CHECK(test.size() == 18);
    CHECK(test[0] == 7.0);
    CHECK(test.t0() == 6.0);

    std::vector<double> w(20);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<double>(i + 1);
    const auto [a, b] = split_holdout(Series(w), 1);
    CHECK(a.size() == 19);
    CHECK(b.size() == 1);
    CHECK(b[0] == 20.0);

    std::vector<double> joined(a.values().begin(), a.values().end());
    joined.insert(joined.end(), b.values().begin(), b.values().end());
    CHECK(joined == w);

    CHECK_THROWS_AS(split_holdout(Series(w), 0), ArgumentError);
    CHECK_THROWS_AS(split_holdout(Series(w), 20), ArgumentError);
}
