#include "mfdcca/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "mfdcca/errors.hpp"

namespace mfdcca {

LogLogFit fit_log_log(std::span<const int> scales, std::span<const double> f, FitRange range) {
    if (scales.size() != f.size()) {
        throw DataError("scale/value length mismatch");
    }
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double s = static_cast<double>(scales[i]);
        if (s < range.s_min || s > range.s_max) continue;
        if (!(f[i] > 0.0) || !std::isfinite(f[i])) {
            throw DegeneracyError("non-positive fluctuation value in fit range");
        }
        lx.push_back(std::log10(s));
        ly.push_back(std::log10(f[i]));
    }
    const std::size_t n = lx.size();
    if (n < 3) {
        throw DataError("fewer than 3 scales in fit range");
    }

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }

    LogLogFit fit;
    fit.n_points = static_cast<int>(n);
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ssr += r * r;
    }
    const double sigma2 = ssr / static_cast<double>(n - 2);
    fit.residual_stderr = std::sqrt(sigma2);
    fit.slope_stderr = std::sqrt(sigma2 / sxx);
    return fit;
}

namespace {

std::span<const double> channel_values(const FluctuationMatrix& fm, Channel ch) {
    switch (ch) {
        case Channel::xy: return fm.f_xy;
        case Channel::xx: return fm.f_xx;
        case Channel::yy: return fm.f_yy;
    }
    return fm.f_xy;
}

}  // namespace

ScalingResult fit_scaling_exponents(const FluctuationMatrix& fm, FitRange range, Channel channel,
                                    double support_dim) {
    const std::span<const double> values = channel_values(fm, channel);
    ScalingResult sr;
    sr.q_grid = fm.q_grid;
    sr.support_dim = support_dim;
    sr.h.resize(fm.n_q());
    sr.h_stderr.resize(fm.n_q());
    sr.intercept.resize(fm.n_q());
    for (std::size_t qi = 0; qi < fm.n_q(); ++qi) {
        const LogLogFit fit =
            fit_log_log(fm.scale_grid, values.subspan(qi * fm.n_s(), fm.n_s()), range);
        sr.h[qi] = fit.slope;
        sr.h_stderr[qi] = fit.slope_stderr;
        sr.intercept[qi] = fit.intercept;
    }
    sr.tau = mass_exponents(sr.h, sr.q_grid, support_dim);
    if (sr.q_grid.size() >= 3) {
        legendre_spectrum(sr.q_grid, sr.tau, sr.alpha, sr.f_alpha);
    }
    return sr;
}

std::vector<double> mass_exponents(std::span<const double> h, std::span<const double> q,
                                   double support_dim) {
    if (h.size() != q.size()) {
        throw DataError("grid mismatch");
    }
    std::vector<double> tau(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        tau[i] = q[i] * h[i] - support_dim;
    }
    return tau;
}

void legendre_spectrum(std::span<const double> q, std::span<const double> tau,
                       std::vector<double>& alpha_out, std::vector<double>& f_out) {
    const std::size_t n = q.size();
    if (tau.size() != n) {
        throw DataError("grid mismatch");
    }
    if (n < 3) {
        throw DataError("q grid needs at least 3 points");
    }
    alpha_out.resize(n);
    f_out.resize(n);
    alpha_out[0] = (tau[1] - tau[0]) / (q[1] - q[0]);
    alpha_out[n - 1] = (tau[n - 1] - tau[n - 2]) / (q[n - 1] - q[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        alpha_out[i] = (tau[i + 1] - tau[i - 1]) / (q[i + 1] - q[i - 1]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        f_out[i] = q[i] * alpha_out[i] - tau[i];
    }
}

ExponentDelta exponent_delta(const ScalingResult& est, std::span<const double> theory_h,
                             std::span<const double> theory_tau) {
    const std::size_t n = est.q_grid.size();
    if (theory_h.size() != n || theory_tau.size() != n) {
        throw DataError("grid mismatch");
    }
    ExponentDelta delta;
    delta.q_grid = est.q_grid;
    delta.delta_h.resize(n);
    delta.delta_tau.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        delta.delta_h[i] = est.h[i] - theory_h[i];
        delta.delta_tau[i] = est.tau[i] - theory_tau[i];
    }
    return delta;
}

double half_sum_check(std::span<const double> hxx, std::span<const double> hyy,
                      std::span<const double> hxy) {
    if (hxx.size() != hxy.size() || hyy.size() != hxy.size()) {
        throw DataError("grid mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < hxy.size(); ++i) {
        worst = std::max(worst, std::fabs(hxy[i] - 0.5 * (hxx[i] + hyy[i])));
    }
    return worst;
}

}  // namespace mfdcca
