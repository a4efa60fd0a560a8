#pragma once

#include <cstddef>
#include <vector>

#include "mfdcca/estimator.hpp"

namespace mfdcca {

struct Field2D {
    std::size_t n1 = 0, n2 = 0;        // extents along i1 (rows) and i2 (cols)
    std::vector<double> values;        // row-major

    Field2D() = default;
    Field2D(std::size_t rows, std::size_t cols, double fill = 0.0)
        : n1(rows), n2(cols), values(rows * cols, fill) {}

    double& at(std::size_t i, std::size_t j) { return values[i * n2 + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * n2 + j]; }
};

struct Field3D {
    std::size_t n1 = 0, n2 = 0, n3 = 0;
    std::vector<double> values;

    Field3D() = default;
    Field3D(std::size_t a, std::size_t b, std::size_t c, double fill = 0.0)
        : n1(a), n2(b), n3(c), values(a * b * c, fill) {}

    double& at(std::size_t i, std::size_t j, std::size_t k) {
        return values[(i * n2 + j) * n3 + k];
    }
    double at(std::size_t i, std::size_t j, std::size_t k) const {
        return values[(i * n2 + j) * n3 + k];
    }
};

// Four-term difference of a doubly cumulated field (entries outside the
// grid count as zero); inverse of cumulate_field_2d.
Field2D difference_field_2d(const Field2D& Z);
Field2D cumulate_field_2d(const Field2D& z);

// Eight-term alternating-sign difference; slices at i3 = 1 reduce to the
// two-dimensional formula.
Field3D difference_field_3d(const Field3D& Z);
Field3D cumulate_field_3d(const Field3D& z);

struct Hd2dConfig {
    int s1 = 4, s2 = 4;                // window sizes, >= 2
    double theta1 = 0.0, theta2 = 0.0; // position parameters in [0, 1]
    std::vector<double> q_grid;        // empty = default

    double effective_scale() const;    // sqrt((s1^2 + s2^2)/2)
};

struct Hd2dFluctuation {
    double scale = 0.0;
    std::vector<double> q_grid;
    std::vector<double> f_xy, f_xx, f_yy;
};

// Planar detrending-moving-average cross-correlation at one window-size
// pair: windowed moving averages of local cumulative sums, trailing-window
// sums, residual partition into disjoint s1 x s2 boxes, and the q-th order
// aggregation of per-box products.
Hd2dFluctuation mfxdma_2d(const Field2D& zx, const Field2D& zy, const Hd2dConfig& config);

// Square-window sweep packaged for the scaling module (support_dim = 2).
FluctuationMatrix mfxdma_2d_sweep(const Field2D& zx, const Field2D& zy,
                                  const std::vector<int>& scales, double theta,
                                  const std::vector<double>& q_grid);

}  // namespace mfdcca
