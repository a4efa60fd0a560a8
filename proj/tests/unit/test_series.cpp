#include <doctest.h>

#include <cmath>
#include <limits>

#include "mfdcca/errors.hpp"
#include "mfdcca/rng.hpp"
#include "mfdcca/series.hpp"

using namespace mfdcca;

TEST_CASE("profile of zeros stays zero") {
    CHECK(build_profile({0, 0, 0}) == std::vector<double>{0, 0, 0});
}

TEST_CASE("profile of unit steps counts up") {
    CHECK(build_profile({1, 1, 1, 1}) == std::vector<double>{1, 2, 3, 4});
}

TEST_CASE("profile is the running sum") {
    CHECK(build_profile({1, -2, 3}) == std::vector<double>{1, -1, 2});
}

TEST_CASE("profile rejects bad input") {
    CHECK_THROWS_AS(build_profile({}), DataError);
    CHECK_THROWS_AS(build_profile({1.0, std::nan("")}), DataError);
    CHECK_THROWS_AS(build_profile({std::numeric_limits<double>::infinity()}), DataError);
}

TEST_CASE("differencing the profile recovers integer-valued input exactly") {
    GaussianRng rng(7);
    std::vector<double> v(500);
    for (double& x : v) x = std::floor(rng.gaussian() * 100.0);
    const std::vector<double> p = build_profile(v);
    CHECK(p[0] == v[0]);
    for (std::size_t i = 1; i < v.size(); ++i) {
        CHECK(p[i] - p[i - 1] == v[i]);
    }
}

TEST_CASE("log-return transform") {
    const std::vector<double> prices{1.0, std::exp(1.0), std::exp(0.5)};
    const std::vector<double> r = apply_transform(prices, Transform::log_return);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(-0.5));
    const std::vector<double> a = apply_transform(prices, Transform::abs_log_return);
    CHECK(a[1] == doctest::Approx(0.5));
    CHECK_THROWS_AS(apply_transform({1.0, -2.0}, Transform::log_return), DataError);
}

TEST_CASE("pair validation flags length mismatch") {
    SeriesPair pair{{1, 2, 3}, {1, 2}};
    CHECK_THROWS_WITH_AS(validate_pair(pair), "pair length mismatch", DataError);
}
