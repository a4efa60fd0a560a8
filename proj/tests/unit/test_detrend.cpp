#include <doctest.h>

#include <cmath>
#include <vector>

#include "mfdcca/detrend.hpp"
#include "mfdcca/errors.hpp"
#include "mfdcca/rng.hpp"

using namespace mfdcca;

TEST_CASE("window spans add up to n-1") {
    for (int n : {1, 2, 3, 10, 11, 49}) {
        for (double theta : {0.0, 0.1, 0.3, 0.5, 0.7, 1.0}) {
            const MAWindow w(n, theta);
            CHECK(w.past_span() + w.future_span() == n - 1);
            CHECK(w.past_span() >= 0);
            CHECK(w.future_span() >= 0);
        }
    }
    CHECK(MAWindow(3, 0.0).past_span() == 2);
    CHECK(MAWindow(3, 1.0).future_span() == 2);
    CHECK(MAWindow(11, 0.7).future_span() == 7);
}

TEST_CASE("moving average of a constant profile is constant") {
    const std::vector<double> p(5, 3.25);
    for (double theta : {0.0, 0.5, 1.0}) {
        const std::vector<double> ma = moving_average(p, MAWindow(3, theta));
        REQUIRE(ma.size() == 3);
        for (double v : ma) CHECK(v == 3.25);
    }
}

TEST_CASE("n = 1 window reproduces the profile") {
    const std::vector<double> p{1.5, -2.0, 7.0};
    CHECK(moving_average(p, MAWindow(1, 0.0)) == p);
}

TEST_CASE("backward window means over [1..5]") {
    // trend at t = 3, 4, 5 for n = 3, theta = 0
    const std::vector<double> ma = moving_average({1, 2, 3, 4, 5}, MAWindow(3, 0.0));
    CHECK(ma == std::vector<double>{2, 3, 4});
}

TEST_CASE("moving average errors when the window exceeds the profile") {
    CHECK_THROWS_WITH_AS(moving_average({1, 2}, MAWindow(3, 0.0)), "scale exceeds series",
                         DataError);
}

TEST_CASE("additive shifts pass through the moving average exactly") {
    GaussianRng rng(11);
    std::vector<double> p(64);
    for (double& v : p) v = rng.gaussian();
    std::vector<double> shifted = p;
    for (double& v : shifted) v += 2.0;  // power-of-two shift keeps fp exact
    const MAWindow w(7, 0.5);
    const std::vector<double> a = moving_average(p, w);
    const std::vector<double> b = moving_average(shifted, w);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(b[i] == doctest::Approx(a[i] + 2.0).epsilon(1e-14));
    }
}

TEST_CASE("backward/forward mirror symmetry") {
    GaussianRng rng(3);
    std::vector<double> p(40);
    for (double& v : p) v = rng.gaussian();
    std::vector<double> rev(p.rbegin(), p.rend());
    ResidualPair a = dma_residual_pair(p, p, 5, 0.0);
    ResidualPair b = dma_residual_pair(rev, rev, 5, 1.0);
    std::vector<double> b_rev(b.eps_x.rbegin(), b.eps_x.rend());
    REQUIRE(a.eps_x.size() == b_rev.size());
    for (std::size_t i = 0; i < a.eps_x.size(); ++i) {
        CHECK(a.eps_x[i] == doctest::Approx(b_rev[i]).epsilon(1e-12));
    }
}

TEST_CASE("zero profiles give zero residuals") {
    const std::vector<double> z(12, 0.0);
    const ResidualPair rp = dma_residual_pair(z, z, 4, 0.0);
    for (double v : rp.eps_x) CHECK(v == 0.0);
}

TEST_CASE("centered window reproduces a line") {
    std::vector<double> line(21);
    for (std::size_t i = 0; i < line.size(); ++i) line[i] = 0.75 * static_cast<double>(i + 1);
    const ResidualPair rp = dma_residual_pair(line, line, 5, 0.5);
    for (double v : rp.eps_x) CHECK(std::fabs(v) < 1e-12);
}

TEST_CASE("backward residuals detrend the window's trailing point") {
    // profile 1,2,4,8,16 at s = 3: residuals [4-7/3, 8-14/3, 16-28/3]
    const std::vector<double> p{1, 2, 4, 8, 16};
    const ResidualPair rp = dma_residual_pair(p, p, 3, 0.0);
    REQUIRE(rp.eps_x.size() == 3);
    CHECK(rp.eps_x[0] == doctest::Approx(4.0 - 7.0 / 3.0).epsilon(1e-14));
    CHECK(rp.eps_x[1] == doctest::Approx(8.0 - 14.0 / 3.0).epsilon(1e-14));
    CHECK(rp.eps_x[2] == doctest::Approx(16.0 - 28.0 / 3.0).epsilon(1e-14));
    CHECK(rp.origin_offset == 2);
}

TEST_CASE("matlab alignment mirrors the window position") {
    const std::vector<double> p{1, 2, 4, 8, 16};
    const ResidualPair rp = dma_residual_pair(p, p, 3, 0.0, MAAlignment::matlab);
    REQUIRE(rp.eps_x.size() == 3);
    CHECK(rp.origin_offset == 0);
    CHECK(rp.eps_x[0] == doctest::Approx(1.0 - 7.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("residual count is N - s + 1 for every s") {
    GaussianRng rng(5);
    std::vector<double> p(37);
    for (double& v : p) v = rng.gaussian();
    for (int s = 1; s <= 37; ++s) {
        const ResidualPair rp = dma_residual_pair(p, p, s, 0.3);
        CHECK(rp.eps_x.size() == p.size() - s + 1);
    }
}

TEST_CASE("residual pair rejects mismatched lengths") {
    CHECK_THROWS_WITH_AS(dma_residual_pair({1, 2, 3}, {1, 2}, 2, 0.0), "pair length mismatch",
                         DataError);
}

TEST_CASE("polynomial residuals vanish on exact models") {
    std::vector<double> lin(16), quad(16);
    for (int t = 1; t <= 16; ++t) {
        lin[t - 1] = 3.0 - 0.5 * t;
        quad[t - 1] = 1.0 + 2.0 * t - 0.25 * t * t;
    }
    for (double v : PolyDetrender(16, 1).residuals(lin)) {
        CHECK(std::fabs(v) < 1e-10);
    }
    for (double v : PolyDetrender(16, 2).residuals(quad)) {
        CHECK(std::fabs(v) < 1e-10);
    }
}

TEST_CASE("order-1 residuals match the normal-equations solution") {
    // segment [1,3,2,5]: OLS line has slope 1.1, intercept 0
    const std::vector<double> seg{1, 3, 2, 5};
    const auto [rx, ry] = polyfit_residuals(seg, seg, 1);
    const std::vector<double> expected{-0.1, 0.8, -1.3, 0.6};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rx[i] == doctest::Approx(expected[i]).epsilon(1e-12));
        CHECK(ry[i] == rx[i]);
    }
}

TEST_CASE("polynomial detrending is invariant to additive input shifts") {
    // a constant added to the raw series turns into a ramp in the profile,
    // which any fit with order >= 1 absorbs
    GaussianRng rng(19);
    std::vector<double> raw(64), shifted_raw(64);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        raw[i] = rng.gaussian();
        shifted_raw[i] = raw[i] + 5.5;
    }
    std::vector<double> p1(64), p2(64);
    double a1 = 0, a2 = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        a1 += raw[i];
        a2 += shifted_raw[i];
        p1[i] = a1;
        p2[i] = a2;
    }
    for (int order : {1, 2, 3, 4}) {
        const PolyDetrender det(64, order);
        const std::vector<double> r1 = det.residuals(p1);
        const std::vector<double> r2 = det.residuals(p2);
        for (std::size_t i = 0; i < r1.size(); ++i) {
            CHECK(std::fabs(r2[i] - r1[i]) < 1e-9);
        }
    }
}

TEST_CASE("polyfit validates order and segment length") {
    CHECK_THROWS_WITH_AS(PolyDetrender(10, 0), "unsupported order", DataError);
    CHECK_THROWS_WITH_AS(PolyDetrender(10, 5), "unsupported order", DataError);
    CHECK_THROWS_WITH_AS(PolyDetrender(2, 1), "degenerate fit", DataError);
    CHECK_NOTHROW(PolyDetrender(3, 1));
}
