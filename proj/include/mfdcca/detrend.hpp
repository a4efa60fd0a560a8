#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mfdcca {

// Moving-average window of size n positioned by theta in [0, 1]: the window
// around index t covers ceil((n-1)(1-theta)) points in the past and
// floor((n-1)theta) points in the future. theta = 0 is the backward average,
// theta = 0.5 centered, theta = 1 forward.
struct MAWindow {
    int n;
    double theta;

    MAWindow(int n_, double theta_);
    int past_span() const;
    int future_span() const;
};

// Sliding means of windows of size w.n: output[k] is the mean of
// profile[k .. k+n-1]; output length = profile length - n + 1. theta decides
// which index each mean detrends, not the mean values themselves.
std::vector<double> moving_average(const std::vector<double>& profile, const MAWindow& w);

// Residual alignment. `reference` subtracts from each point the window mean
// positioned per MAWindow above. `matlab` reproduces the original MATLAB
// MF-X-DMA code, whose window position is mirrored in theta (its theta = 0
// subtracts the mean of the n - 1 points ahead instead of behind).
enum class MAAlignment { reference, matlab };

// Index of the first detrended profile sample, i.e. residual[k] =
// profile[k + offset] - mean(profile[k .. k+s-1]).
int dma_origin_offset(int s, double theta, MAAlignment a);

struct ResidualPair {
    std::vector<double> eps_x;
    std::vector<double> eps_y;
    int origin_offset = 0;
};

ResidualPair dma_residual_pair(const std::vector<double>& px, const std::vector<double>& py,
                               int s, double theta, MAAlignment a = MAAlignment::reference);

// Least-squares polynomial detrender over t = 1..s with the monomial basis
// [t^order, ..., t, 1]. The design matrix is factored once (Householder QR)
// and applied to many segments; residuals() is const and thread-safe.
class PolyDetrender {
public:
    PolyDetrender(int segment_length, int order);

    int segment_length() const { return s_; }
    int order() const { return order_; }

    // out may alias nothing; it must have segment_length() entries.
    void residuals(std::span<const double> segment, std::span<double> out) const;
    std::vector<double> residuals(std::span<const double> segment) const;

private:
    int s_;
    int order_;
    int ncols_;
    std::vector<double> qr_;   // s x ncols, column-major Householder factors
    std::vector<double> tau_;  // Householder scalars
};

// One-shot residuals of a segment pair; x and y fits are independent.
std::pair<std::vector<double>, std::vector<double>>
polyfit_residuals(std::span<const double> box_x, std::span<const double> box_y, int order);

}  // namespace mfdcca
