#include "mfdcca/detrend.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "mfdcca/errors.hpp"

namespace mfdcca {

namespace {

// floor with a snap to the nearest integer, so that window spans derived
// from values like (n-1)*0.7 = 6.999999... land on the intended integer.
int snapped_floor(double v) {
    const double r = std::round(v);
    if (std::fabs(v - r) < 1e-9 * std::max(1.0, std::fabs(v))) {
        return static_cast<int>(r);
    }
    return static_cast<int>(std::floor(v));
}

}  // namespace

MAWindow::MAWindow(int n_, double theta_) : n(n_), theta(theta_) {
    if (n < 1) {
        throw DataError("window size must be positive");
    }
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw DataError("theta outside [0, 1]");
    }
}

int MAWindow::future_span() const {
    return snapped_floor((n - 1) * theta);
}

int MAWindow::past_span() const {
    // equals ceil((n-1)(1-theta)) and keeps past + future = n - 1 exactly
    return (n - 1) - future_span();
}

std::vector<double> moving_average(const std::vector<double>& profile, const MAWindow& w) {
    const std::size_t len = profile.size();
    const std::size_t n = static_cast<std::size_t>(w.n);
    if (n > len) {
        throw DataError("scale exceeds series");
    }
    // Prefix sums give every window sum without incremental drift.
    std::vector<double> prefix(len + 1, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
        prefix[i + 1] = prefix[i] + profile[i];
    }
    std::vector<double> out(len - n + 1);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k + n <= len; ++k) {
        out[k] = (prefix[k + n] - prefix[k]) * inv_n;
    }
    return out;
}

int dma_origin_offset(int s, double theta, MAAlignment a) {
    if (a == MAAlignment::matlab) {
        // exactly as the reference code: floor((s-1)*theta), raw floating point
        return static_cast<int>(std::floor((s - 1) * theta));
    }
    return MAWindow(s, theta).past_span();
}

ResidualPair dma_residual_pair(const std::vector<double>& px, const std::vector<double>& py,
                               int s, double theta, MAAlignment a) {
    if (px.size() != py.size()) {
        throw DataError("pair length mismatch");
    }
    const MAWindow window(s, theta);
    const int offset = dma_origin_offset(s, theta, a);
    const std::vector<double> max = moving_average(px, window);
    const std::vector<double> may = moving_average(py, window);

    ResidualPair rp;
    rp.origin_offset = offset;
    const std::size_t m = max.size();  // px.size() - s + 1
    rp.eps_x.resize(m);
    rp.eps_y.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        rp.eps_x[k] = px[k + offset] - max[k];
        rp.eps_y[k] = py[k + offset] - may[k];
    }
    return rp;
}

PolyDetrender::PolyDetrender(int segment_length, int order)
    : s_(segment_length), order_(order), ncols_(order + 1) {
    if (order < 1 || order > 4) {
        throw DataError("unsupported order");
    }
    if (s_ <= order + 1) {
        throw DataError("degenerate fit");
    }

    // Column-major design [t^order, ..., t, 1] over t = 1..s.
    qr_.assign(static_cast<std::size_t>(s_) * ncols_, 0.0);
    for (int j = 0; j < ncols_; ++j) {
        const int power = order_ - j;
        for (int i = 0; i < s_; ++i) {
            qr_[static_cast<std::size_t>(j) * s_ + i] = std::pow(static_cast<double>(i + 1), power);
        }
    }

    // In-place Householder QR.
    tau_.assign(ncols_, 0.0);
    std::vector<double> v(s_);
    for (int j = 0; j < ncols_; ++j) {
        double* col = &qr_[static_cast<std::size_t>(j) * s_];
        double sigma = 0.0;
        for (int i = j + 1; i < s_; ++i) sigma += col[i] * col[i];
        const double x0 = col[j];
        double beta = 0.0;
        double v0 = 1.0;
        if (sigma != 0.0) {
            const double mu = std::sqrt(x0 * x0 + sigma);
            v0 = (x0 <= 0.0) ? x0 - mu : -sigma / (x0 + mu);
            beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
        }
        v[j] = 1.0;
        for (int i = j + 1; i < s_; ++i) v[i] = col[i] / v0;
        tau_[j] = beta;
        for (int c = j; c < ncols_; ++c) {
            double* cc = &qr_[static_cast<std::size_t>(c) * s_];
            double w = 0.0;
            for (int i = j; i < s_; ++i) w += v[i] * cc[i];
            w *= beta;
            for (int i = j; i < s_; ++i) cc[i] -= w * v[i];
        }
        for (int i = j + 1; i < s_; ++i) col[i] = v[i];
        if (col[j] == 0.0) {
            throw DataError("degenerate fit");
        }
    }
}

void PolyDetrender::residuals(std::span<const double> segment, std::span<double> out) const {
    if (static_cast<int>(segment.size()) != s_ || static_cast<int>(out.size()) != s_) {
        throw DataError("segment length mismatch");
    }
    // out doubles as the Q^T y work buffer
    for (int i = 0; i < s_; ++i) out[i] = segment[i];
    for (int j = 0; j < ncols_; ++j) {
        const double* col = &qr_[static_cast<std::size_t>(j) * s_];
        double w = out[j];
        for (int i = j + 1; i < s_; ++i) w += col[i] * out[i];
        w *= tau_[j];
        out[j] -= w;
        for (int i = j + 1; i < s_; ++i) out[i] -= w * col[i];
    }
    double coeff[5] = {0, 0, 0, 0, 0};
    for (int k = ncols_ - 1; k >= 0; --k) {
        double acc = out[k];
        for (int c = k + 1; c < ncols_; ++c) {
            acc -= qr_[static_cast<std::size_t>(c) * s_ + k] * coeff[c];
        }
        coeff[k] = acc / qr_[static_cast<std::size_t>(k) * s_ + k];
    }
    // residual = segment - fitted polynomial (Horner, coeff[0] on t^order)
    for (int i = 0; i < s_; ++i) {
        const double t = static_cast<double>(i + 1);
        double fit = coeff[0];
        for (int k = 1; k < ncols_; ++k) fit = fit * t + coeff[k];
        out[i] = segment[i] - fit;
    }
}

std::vector<double> PolyDetrender::residuals(std::span<const double> segment) const {
    std::vector<double> out(segment.size());
    residuals(segment, out);
    return out;
}

std::pair<std::vector<double>, std::vector<double>>
polyfit_residuals(std::span<const double> box_x, std::span<const double> box_y, int order) {
    if (box_x.size() != box_y.size()) {
        throw DataError("pair length mismatch");
    }
    const PolyDetrender det(static_cast<int>(box_x.size()), order);
    return {det.residuals(box_x), det.residuals(box_y)};
}

}  // namespace mfdcca
