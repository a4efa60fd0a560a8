#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfdcca/estimator.hpp"

namespace mfdcca {

// Inclusive scale bounds for the log-log fit.
struct FitRange {
    double s_min;
    double s_max;
};

enum class Channel { xy, xx, yy };

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double residual_stderr = 0.0;
    int n_points = 0;
};

// Unweighted OLS of log10(F) on log10(s) over the scales inside the range.
// Requires >= 3 in-range scales and strictly positive F there.
LogLogFit fit_log_log(std::span<const int> scales, std::span<const double> f, FitRange range);

// h(q), tau(q) = q h(q) - D_f, and the Legendre pair (alpha, f_alpha).
struct ScalingResult {
    std::vector<double> q_grid;
    std::vector<double> h;
    std::vector<double> h_stderr;
    std::vector<double> intercept;
    std::vector<double> tau;
    std::vector<double> alpha;
    std::vector<double> f_alpha;
    double support_dim = 1.0;
};

ScalingResult fit_scaling_exponents(const FluctuationMatrix& fm, FitRange range,
                                    Channel channel = Channel::xy, double support_dim = 1.0);

std::vector<double> mass_exponents(std::span<const double> h, std::span<const double> q,
                                   double support_dim);

// alpha = dtau/dq by central differences (one-sided at the ends),
// f = q*alpha - tau. Requires >= 3 grid points.
void legendre_spectrum(std::span<const double> q, std::span<const double> tau,
                       std::vector<double>& alpha_out, std::vector<double>& f_out);

struct ExponentDelta {
    std::vector<double> q_grid;
    std::vector<double> delta_h;
    std::vector<double> delta_tau;
};

ExponentDelta exponent_delta(const ScalingResult& est, std::span<const double> theory_h,
                             std::span<const double> theory_tau);

// sup-norm deviation from h_xy = (h_xx + h_yy)/2 over a common grid
double half_sum_check(std::span<const double> hxx, std::span<const double> hyy,
                      std::span<const double> hxy);

}  // namespace mfdcca
