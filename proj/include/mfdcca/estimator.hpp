#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfdcca/detrend.hpp"
#include "mfdcca/series.hpp"

namespace mfdcca {

enum class Method { mf_x_dfa, mf_x_dma };
enum class Coverage { forward_only, both_ends };
enum class CovMode { signed_product, absolute_product };

struct EstimatorConfig {
    Method method = Method::mf_x_dma;
    double theta = 0.0;           // DMA position parameter
    int poly_order = 1;           // DFA detrending order, 1..4
    std::vector<double> q_grid;   // sorted distinct moment orders; empty = default
    std::vector<int> scale_grid;  // sorted distinct scales; empty = default for the input length
    Coverage coverage = Coverage::both_ends;
    CovMode cov_mode = CovMode::signed_product;
    MAAlignment alignment = MAAlignment::reference;  // matlab under --compat

    void validate() const;
};

// -4 : 0.5 : 4
std::vector<double> default_q_grid();

// round(10^(1.3 + 0.1 k)) while <= n/4, duplicates removed; n >= 80.
std::vector<int> default_scale_grid(std::size_t n);

// Size-s boxes covering a residual sequence. forward_only: disjoint boxes
// from the left end, remainder discarded. both_ends: when the length is not
// a multiple of s, the forward boxes plus as many boxes aligned to the right
// end (the two sets overlap in the middle).
struct BoxLayout {
    std::vector<std::size_t> starts;
    std::size_t size = 0;

    std::size_t count() const { return starts.size(); }
};

BoxLayout partition_boxes(std::size_t length, std::size_t s, Coverage coverage);

// Per-box cross-correlation: mean of eps_x*eps_y (signed_product, may be
// negative) or of |eps_x|*|eps_y| (absolute_product).
double box_covariance(std::span<const double> eps_x, std::span<const double> eps_y, CovMode mode);

// q-th order aggregation of per-box values: [mean |F_v|^(q/2)]^(1/q) for
// q != 0 and exp(mean ln|F_v| / 2) for q = 0. A zero box under q <= 0 throws
// DegeneracyError.
double fluctuation_function(std::span<const double> box_values, double q);

// F(q, s) surfaces for the cross channel and both auto channels.
struct FluctuationMatrix {
    std::vector<double> q_grid;
    std::vector<int> scale_grid;
    std::vector<double> f_xy, f_xx, f_yy;  // |q| x |s|, scale index fastest

    std::size_t n_q() const { return q_grid.size(); }
    std::size_t n_s() const { return scale_grid.size(); }
    double& xy(std::size_t qi, std::size_t si) { return f_xy[qi * n_s() + si]; }
    double& xx(std::size_t qi, std::size_t si) { return f_xx[qi * n_s() + si]; }
    double& yy(std::size_t qi, std::size_t si) { return f_yy[qi * n_s() + si]; }
    double xy(std::size_t qi, std::size_t si) const { return f_xy[qi * n_s() + si]; }
    double xx(std::size_t qi, std::size_t si) const { return f_xx[qi * n_s() + si]; }
    double yy(std::size_t qi, std::size_t si) const { return f_yy[qi * n_s() + si]; }
};

FluctuationMatrix run_mfxdma(const SeriesPair& pair, const EstimatorConfig& config);
FluctuationMatrix run_mfxdfa(const SeriesPair& pair, const EstimatorConfig& config);

// Dispatch on config.method.
FluctuationMatrix run_estimator(const SeriesPair& pair, const EstimatorConfig& config);

}  // namespace mfdcca
