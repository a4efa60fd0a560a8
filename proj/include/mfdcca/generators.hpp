#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mfdcca/series.hpp"

namespace mfdcca {

// Two-component ARFIMA processes. Each component accumulates a weighted sum
// of its own past over a truncated window of `cutoff` lags; `coupling` (W)
// cross-feeds the two sums, and common_noise selects the shared-innovation
// form with W = 1.
struct ArfimaSpec {
    double d1 = 0.4;             // memory parameters, in (0, 0.5)
    double d2 = 0.4;
    double coupling = 1.0;       // W in [0.5, 1]
    bool common_noise = false;
    std::size_t length = 1 << 15;
    int cutoff = 10000;          // truncation of the weight sum
    std::uint64_t seed = 0;

    void validate() const;
};

// a_n = d Gamma(n-d) / [Gamma(1-d) Gamma(n+1)] for n = 1..cutoff, evaluated
// by the recurrence a_{n+1} = a_n (n-d)/(n+1); a_1 = d.
std::vector<double> arfima_weights(double d, int cutoff);

// x(t) = W X(d1,t) + (1-W) Y(d2,t) + eps_x(t) and symmetrically for y, with
// independent Gaussian innovations. The first `cutoff` samples are burn-in
// and discarded.
SeriesPair gen_two_component_arfima(const ArfimaSpec& spec);

// x(t) = X(d1,t) + eps(t), y(t) = Y(d2,t) + eps(t) with one shared Gaussian
// innovation per step.
SeriesPair gen_common_noise_arfima(const ArfimaSpec& spec);

// Deterministic binomial measure from the multiplicative p-model: k dyadic
// refinements splitting mass in proportions p : (1-p); length 2^k, total
// mass exactly 1.
std::vector<double> gen_binomial_measure(double p, int k);

struct TheoryCurves {
    std::vector<double> q_grid;
    std::vector<double> H;
    std::vector<double> T;  // T(q) = q H(q) - 1
};

// Closed-form scaling exponents of the binomial measure:
// H(q) = 1/q - log2[p^q + (1-p)^q]/q, with the analytic q -> 0 limit
// H(0) = -(log2 p + log2(1-p))/2.
TheoryCurves binomial_theory(double p, const std::vector<double>& q_grid);

// Cross curves of a pair of measures: H_xy = (H_xx + H_yy)/2 and
// T_xy = (T_xx + T_yy)/2.
TheoryCurves binomial_pair_theory(double px, double py, const std::vector<double>& q_grid);

struct FbmSpec {
    double hurst_x = 0.5;  // in (0, 1)
    double hurst_y = 0.5;
    double rho = 0.0;      // innovation cross-correlation, in [-1, 1]
    std::size_t length = 1 << 16;
    std::uint64_t seed = 0;

    void validate() const;
};

// gamma(k) = ( |k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H} ) / 2
double fgn_autocovariance(double hurst, std::size_t lag);

// Exact unit-variance fractional Gaussian noise via circulant embedding of
// the autocovariance, synthesized with complex Gaussian spectral weights.
std::vector<double> gen_fgn_circulant(double hurst, std::size_t n, std::uint64_t seed);

// Pair of fGn series with contemporaneous cross-correlation rho. For
// hurst_x = hurst_y the construction is exact (increments of a bivariate
// fractional Brownian motion); for unequal Hurst indices the marginals are
// exact fGn and the cross-structure is the shared-spectral-driver
// approximation.
SeriesPair gen_correlated_fbm_pair(const FbmSpec& spec);

}  // namespace mfdcca
