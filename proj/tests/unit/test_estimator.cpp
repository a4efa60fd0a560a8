#include <doctest.h>

#include <cmath>
#include <vector>

#include "matlab_reference.hpp"
#include "mfdcca/errors.hpp"
#include "mfdcca/estimator.hpp"
#include "mfdcca/generators.hpp"
#include "mfdcca/rng.hpp"
#include "mfdcca/scaling.hpp"

using namespace mfdcca;

TEST_CASE("exact division gives disjoint boxes under either coverage") {
    for (Coverage c : {Coverage::forward_only, Coverage::both_ends}) {
        const BoxLayout layout = partition_boxes(100, 10, c);
        REQUIRE(layout.count() == 10);
        for (std::size_t v = 0; v < 10; ++v) CHECK(layout.starts[v] == 10 * v);
    }
}

TEST_CASE("forward coverage discards the remainder") {
    const BoxLayout layout = partition_boxes(105, 10, Coverage::forward_only);
    CHECK(layout.count() == 10);
    CHECK(layout.starts.back() == 90);
}

TEST_CASE("both-ends coverage doubles the boxes on a remainder") {
    const BoxLayout layout = partition_boxes(105, 10, Coverage::both_ends);
    REQUIRE(layout.count() == 20);
    CHECK(layout.starts[10] == 5);
    CHECK(layout.starts.back() == 95);
}

TEST_CASE("partition rejects oversized scales") {
    CHECK_THROWS_WITH_AS(partition_boxes(5, 6, Coverage::both_ends),
                         "scale exceeds residual length", DataError);
}

TEST_CASE("box covariance modes") {
    const std::vector<double> a{1, -1};
    const std::vector<double> b{-1, 1};
    CHECK(box_covariance(a, b, CovMode::signed_product) == -1.0);
    CHECK(box_covariance(a, b, CovMode::absolute_product) == 1.0);
    CHECK(box_covariance(a, a, CovMode::signed_product) == 1.0);
    const std::vector<double> z{0, 0};
    CHECK(box_covariance(a, z, CovMode::signed_product) == 0.0);
    CHECK(box_covariance(a, z, CovMode::absolute_product) == 0.0);
}

TEST_CASE("per-box Cauchy-Schwarz bound holds in both modes") {
    GaussianRng rng(23);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> ex(16), ey(16);
        for (std::size_t i = 0; i < 16; ++i) {
            ex[i] = rng.gaussian();
            ey[i] = 0.4 * ex[i] + rng.gaussian();
        }
        for (CovMode mode : {CovMode::signed_product, CovMode::absolute_product}) {
            const double fxy = box_covariance(ex, ey, mode);
            const double fxx = box_covariance(ex, ex, mode);
            const double fyy = box_covariance(ey, ey, mode);
            CHECK(std::fabs(fxy) <= std::sqrt(fxx * fyy) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("fluctuation function on constant boxes is sqrt(c)") {
    const std::vector<double> boxes(7, 2.25);
    for (double q : {-4.0, -1.0, 0.0, 0.5, 2.0, 4.0}) {
        CHECK(fluctuation_function(boxes, q) == doctest::Approx(1.5).epsilon(1e-13));
    }
}

TEST_CASE("fluctuation function examples at q = 2 and q = 0") {
    const std::vector<double> boxes{1.0, 4.0};
    CHECK(fluctuation_function(boxes, 2.0) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-13));
    CHECK(fluctuation_function(boxes, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("zero boxes are fatal for q <= 0") {
    const std::vector<double> boxes{1.0, 0.0};
    CHECK_THROWS_AS(fluctuation_function(boxes, 0.0), DegeneracyError);
    CHECK_THROWS_AS(fluctuation_function(boxes, -2.0), DegeneracyError);
    CHECK_NOTHROW(fluctuation_function(boxes, 2.0));
}

TEST_CASE("fluctuation function is nondecreasing in q") {
    GaussianRng rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> boxes(32);
        for (double& v : boxes) v = std::fabs(rng.gaussian()) + 1e-6;
        double prev = 0.0;
        bool first = true;
        for (double q = -4.0; q <= 4.01; q += 0.5) {
            const double f = fluctuation_function(boxes, q);
            if (!first) CHECK(f >= prev * (1.0 - 1e-12));
            prev = f;
            first = false;
        }
    }
}

TEST_CASE("default scale grid endpoints and counts") {
    CHECK(default_scale_grid(80) == std::vector<int>{20});
    const std::vector<int> grid = default_scale_grid(10084);
    CHECK(grid.size() == 22);
    CHECK(grid.front() == 20);
    CHECK(grid.back() == 2512);
    CHECK_THROWS_WITH_AS(default_scale_grid(79), "series too short for default grid", DataError);
}

TEST_CASE("default q grid spans -4..4 in halves") {
    const std::vector<double> q = default_q_grid();
    REQUIRE(q.size() == 17);
    CHECK(q.front() == -4.0);
    CHECK(q[8] == 0.0);
    CHECK(q.back() == 4.0);
}

namespace {

SeriesPair gaussian_pair(std::size_t n, std::uint64_t seed) {
    GaussianRng rng(seed);
    SeriesPair pair;
    pair.x.resize(n);
    pair.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        pair.x[i] = rng.gaussian();
        pair.y[i] = rng.gaussian();
    }
    return pair;
}

}  // namespace

TEST_CASE("x = y degeneracy collapses the three channels bitwise") {
    SeriesPair pair = gaussian_pair(512, 41);
    pair.y = pair.x;
    EstimatorConfig config;
    config.method = Method::mf_x_dma;
    config.theta = 0.0;
    const FluctuationMatrix fm = run_mfxdma(pair, config);
    CHECK(fm.f_xy == fm.f_xx);
    CHECK(fm.f_xy == fm.f_yy);

    EstimatorConfig dfa = config;
    dfa.method = Method::mf_x_dfa;
    const FluctuationMatrix fd = run_mfxdfa(pair, dfa);
    CHECK(fd.f_xy == fd.f_xx);
}

TEST_CASE("power-of-two input scaling multiplies F exactly through the box level") {
    const SeriesPair pair = gaussian_pair(600, 5);
    SeriesPair scaled;
    scaled.x.resize(600);
    scaled.y.resize(600);
    for (std::size_t i = 0; i < 600; ++i) {
        scaled.x[i] = 4.0 * pair.x[i];
        scaled.y[i] = 4.0 * pair.y[i];
    }
    for (Method m : {Method::mf_x_dma, Method::mf_x_dfa}) {
        EstimatorConfig config;
        config.method = m;
        config.theta = 0.5;
        const FluctuationMatrix a = run_estimator(pair, config);
        const FluctuationMatrix b = run_estimator(scaled, config);
        for (std::size_t i = 0; i < a.f_xy.size(); ++i) {
            CHECK(b.f_xy[i] == doctest::Approx(4.0 * a.f_xy[i]).epsilon(1e-13));
        }
        // fitted slopes unchanged
        const FitRange range{20.0, 150.0};
        const ScalingResult sa = fit_scaling_exponents(a, range);
        const ScalingResult sb = fit_scaling_exponents(b, range);
        for (std::size_t i = 0; i < sa.h.size(); ++i) {
            CHECK(sb.h[i] == doctest::Approx(sa.h[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("white-noise pairs scale with exponent 1/2 under both methods") {
    // 20-realization Monte Carlo; the profile of uncorrelated noise is a
    // random walk with exponent 0.5
    const std::size_t n = 1 << 13;
    for (Method m : {Method::mf_x_dma, Method::mf_x_dfa}) {
        double sum = 0.0;
        const int reps = 20;
        for (int rep = 0; rep < reps; ++rep) {
            const SeriesPair pair = gaussian_pair(n, 1000 + rep);
            EstimatorConfig config;
            config.method = m;
            config.theta = 0.0;
            config.q_grid = {2.0};
            const FluctuationMatrix fm = run_estimator(pair, config);
            const ScalingResult sr =
                fit_scaling_exponents(fm, {20.0, static_cast<double>(n) / 4.0});
            sum += sr.h[0];
        }
        const double mean = sum / reps;
        CHECK(std::fabs(mean - 0.5) < 0.05);
    }
}

TEST_CASE("compat mode matches the reference transliteration") {
    const std::vector<double> q = default_q_grid();
    for (int pair_index = 0; pair_index < 3; ++pair_index) {
        const SeriesPair pair = gaussian_pair(4096, 7000 + pair_index);
        for (double theta : {0.0, 0.5, 1.0}) {
            EstimatorConfig config;
            config.method = Method::mf_x_dma;
            config.theta = theta;
            config.alignment = MAAlignment::matlab;
            config.cov_mode = CovMode::absolute_product;
            config.coverage = Coverage::both_ends;
            config.q_grid = q;
            const FluctuationMatrix fm = run_mfxdma(pair, config);
            const matlab_ref::FqTable ref = matlab_ref::mfxdma_1d(pair.x, pair.y, theta, q);
            REQUIRE(ref.s.size() == fm.n_s());
            for (std::size_t i = 0; i < fm.f_xy.size(); ++i) {
                CHECK(fm.f_xy[i] == doctest::Approx(ref.fxy[i]).epsilon(1e-10));
                CHECK(fm.f_xx[i] == doctest::Approx(ref.fxx[i]).epsilon(1e-10));
                CHECK(fm.f_yy[i] == doctest::Approx(ref.fyy[i]).epsilon(1e-10));
            }
        }
        EstimatorConfig config;
        config.method = Method::mf_x_dfa;
        config.poly_order = 1;
        config.cov_mode = CovMode::absolute_product;
        config.coverage = Coverage::both_ends;
        config.q_grid = q;
        const FluctuationMatrix fm = run_mfxdfa(pair, config);
        const matlab_ref::FqTable ref = matlab_ref::mfxdfa_1d(pair.x, pair.y, q, 1);
        for (std::size_t i = 0; i < fm.f_xy.size(); ++i) {
            CHECK(fm.f_xy[i] == doctest::Approx(ref.fxy[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("binomial pair scales cleanly across positive and negative q") {
    SeriesPair pair;
    pair.x = gen_binomial_measure(0.3, 14);
    pair.y = gen_binomial_measure(0.4, 14);
    EstimatorConfig config;
    config.method = Method::mf_x_dma;
    config.theta = 0.0;
    config.q_grid = {-4.0, 0.0, 4.0};
    const FluctuationMatrix fm = run_mfxdma(pair, config);
    // power-law quality: log-log correlation coefficient above 0.99
    for (std::size_t qi = 0; qi < fm.n_q(); ++qi) {
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        const double n = static_cast<double>(fm.n_s());
        for (std::size_t si = 0; si < fm.n_s(); ++si) {
            const double lx = std::log10(static_cast<double>(fm.scale_grid[si]));
            const double ly = std::log10(fm.xy(qi, si));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            syy += ly * ly;
            sxy += lx * ly;
        }
        const double r = (n * sxy - sx * sy) /
                         std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
        CHECK(r > 0.99);
    }
}

TEST_CASE("estimators propagate degenerate zero boxes with context") {
    SeriesPair pair;
    pair.x.assign(256, 0.0);
    pair.y.assign(256, 0.0);
    EstimatorConfig config;
    config.method = Method::mf_x_dma;
    config.scale_grid = {8, 16};
    config.q_grid = {-2.0, 0.0, 2.0};
    CHECK_THROWS_AS(run_mfxdma(pair, config), DegeneracyError);
}
