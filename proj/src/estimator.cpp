#include "mfdcca/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfdcca/errors.hpp"

namespace mfdcca {

namespace {

void check_sorted_distinct(const std::vector<double>& grid, const char* what) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw DataError(std::string(what) + " must be sorted and distinct");
        }
    }
}

std::string annotate(const char* what, double q, int s) {
    return std::string(what) + " at (q=" + std::to_string(q) + ", s=" + std::to_string(s) + ")";
}

}  // namespace

void EstimatorConfig::validate() const {
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw DataError("theta outside [0, 1]");
    }
    if (poly_order < 1 || poly_order > 4) {
        throw DataError("unsupported order");
    }
    check_sorted_distinct(q_grid, "q grid");
    for (std::size_t i = 0; i < scale_grid.size(); ++i) {
        if (scale_grid[i] < 4) {
            throw DataError("scales must be >= 4");
        }
        if (i > 0 && scale_grid[i] <= scale_grid[i - 1]) {
            throw DataError("scale grid must be sorted and distinct");
        }
    }
    if (method == Method::mf_x_dfa) {
        for (int s : scale_grid) {
            if (s < poly_order + 2) {
                throw DataError("degenerate fit");
            }
        }
    }
}

std::vector<double> default_q_grid() {
    std::vector<double> q;
    for (int k = 0; k <= 16; ++k) {
        q.push_back(-4.0 + 0.5 * k);
    }
    return q;
}

std::vector<int> default_scale_grid(std::size_t n) {
    if (n < 80) {
        throw DataError("series too short for default grid");
    }
    std::vector<int> scales;
    const double cap = static_cast<double>(n) / 4.0;
    for (int k = 0;; ++k) {
        const int s = static_cast<int>(std::round(std::pow(10.0, 1.3 + 0.1 * k)));
        if (static_cast<double>(s) > cap) break;
        if (scales.empty() || s != scales.back()) {
            scales.push_back(s);
        }
    }
    return scales;
}

BoxLayout partition_boxes(std::size_t length, std::size_t s, Coverage coverage) {
    if (s == 0 || s > length) {
        throw DataError("scale exceeds residual length");
    }
    BoxLayout layout;
    layout.size = s;
    const std::size_t m = length / s;
    layout.starts.reserve(coverage == Coverage::both_ends ? 2 * m : m);
    for (std::size_t v = 0; v < m; ++v) {
        layout.starts.push_back(v * s);
    }
    const std::size_t remainder = length - m * s;
    if (coverage == Coverage::both_ends && remainder != 0) {
        for (std::size_t v = 0; v < m; ++v) {
            layout.starts.push_back(remainder + v * s);
        }
    }
    return layout;
}

double box_covariance(std::span<const double> eps_x, std::span<const double> eps_y, CovMode mode) {
    if (eps_x.size() != eps_y.size() || eps_x.empty()) {
        throw DataError("pair length mismatch");
    }
    double acc = 0.0;
    if (mode == CovMode::signed_product) {
        for (std::size_t k = 0; k < eps_x.size(); ++k) {
            acc += eps_x[k] * eps_y[k];
        }
    } else {
        for (std::size_t k = 0; k < eps_x.size(); ++k) {
            acc += std::fabs(eps_x[k]) * std::fabs(eps_y[k]);
        }
    }
    return acc / static_cast<double>(eps_x.size());
}

double fluctuation_function(std::span<const double> box_values, double q) {
    if (box_values.empty()) {
        throw DataError("no boxes");
    }
    const double inv_m = 1.0 / static_cast<double>(box_values.size());
    if (q == 0.0) {
        double acc = 0.0;
        for (double v : box_values) {
            const double a = std::fabs(v);
            if (a == 0.0) {
                throw DegeneracyError("degenerate zero box");
            }
            acc += std::log(a);
        }
        return std::exp(0.5 * inv_m * acc);
    }
    double acc = 0.0;
    for (double v : box_values) {
        const double a = std::fabs(v);
        if (a == 0.0 && q < 0.0) {
            throw DegeneracyError("degenerate zero box");
        }
        acc += std::pow(a, 0.5 * q);
    }
    const double mean = acc * inv_m;
    if (q < 0.0) {
        return std::exp(std::log(mean) / q);
    }
    return std::pow(mean, 1.0 / q);
}

namespace {

struct BoxAccumulator {
    std::vector<double> xy, xx, yy;

    void reserve(std::size_t m) {
        xy.reserve(m);
        xx.reserve(m);
        yy.reserve(m);
    }
    void add(std::span<const double> ex, std::span<const double> ey, CovMode mode) {
        xy.push_back(box_covariance(ex, ey, mode));
        xx.push_back(box_covariance(ex, ex, mode));
        yy.push_back(box_covariance(ey, ey, mode));
    }
};

void aggregate_scale(FluctuationMatrix& fm, std::size_t si, const BoxAccumulator& boxes) {
    for (std::size_t qi = 0; qi < fm.n_q(); ++qi) {
        const double q = fm.q_grid[qi];
        try {
            fm.xy(qi, si) = fluctuation_function(boxes.xy, q);
            fm.xx(qi, si) = fluctuation_function(boxes.xx, q);
            fm.yy(qi, si) = fluctuation_function(boxes.yy, q);
        } catch (const DegeneracyError& e) {
            throw DegeneracyError(annotate(e.what(), q, fm.scale_grid[si]));
        }
    }
}

FluctuationMatrix prepare(const SeriesPair& pair, EstimatorConfig& config) {
    validate_pair(pair);
    if (config.q_grid.empty()) config.q_grid = default_q_grid();
    if (config.scale_grid.empty()) config.scale_grid = default_scale_grid(pair.x.size());
    config.validate();

    FluctuationMatrix fm;
    fm.q_grid = config.q_grid;
    fm.scale_grid = config.scale_grid;
    fm.f_xy.assign(fm.n_q() * fm.n_s(), 0.0);
    fm.f_xx.assign(fm.n_q() * fm.n_s(), 0.0);
    fm.f_yy.assign(fm.n_q() * fm.n_s(), 0.0);
    return fm;
}

}  // namespace

FluctuationMatrix run_mfxdma(const SeriesPair& pair, const EstimatorConfig& config_in) {
    EstimatorConfig config = config_in;
    FluctuationMatrix fm = prepare(pair, config);

    const std::vector<double> px = build_profile(pair.x);
    const std::vector<double> py = build_profile(pair.y);
    for (std::size_t si = 0; si < fm.n_s(); ++si) {
        const int s = fm.scale_grid[si];
        if (static_cast<std::size_t>(s) > px.size()) {
            throw DataError("scale exceeds series");
        }
        const ResidualPair rp = dma_residual_pair(px, py, s, config.theta, config.alignment);
        const BoxLayout layout = partition_boxes(rp.eps_x.size(), s, config.coverage);
        BoxAccumulator boxes;
        boxes.reserve(layout.count());
        for (std::size_t start : layout.starts) {
            boxes.add(std::span(rp.eps_x).subspan(start, s), std::span(rp.eps_y).subspan(start, s),
                      config.cov_mode);
        }
        aggregate_scale(fm, si, boxes);
    }
    return fm;
}

FluctuationMatrix run_mfxdfa(const SeriesPair& pair, const EstimatorConfig& config_in) {
    EstimatorConfig config = config_in;
    FluctuationMatrix fm = prepare(pair, config);

    const std::vector<double> px = build_profile(pair.x);
    const std::vector<double> py = build_profile(pair.y);
    std::vector<double> rx, ry;
    for (std::size_t si = 0; si < fm.n_s(); ++si) {
        const int s = fm.scale_grid[si];
        if (static_cast<std::size_t>(s) > px.size()) {
            throw DataError("scale exceeds series");
        }
        const BoxLayout layout = partition_boxes(px.size(), s, config.coverage);
        const PolyDetrender detrender(s, config.poly_order);
        rx.resize(s);
        ry.resize(s);
        BoxAccumulator boxes;
        boxes.reserve(layout.count());
        for (std::size_t start : layout.starts) {
            detrender.residuals(std::span(px).subspan(start, s), rx);
            detrender.residuals(std::span(py).subspan(start, s), ry);
            boxes.add(rx, ry, config.cov_mode);
        }
        aggregate_scale(fm, si, boxes);
    }
    return fm;
}

FluctuationMatrix run_estimator(const SeriesPair& pair, const EstimatorConfig& config) {
    return config.method == Method::mf_x_dma ? run_mfxdma(pair, config) : run_mfxdfa(pair, config);
}

}  // namespace mfdcca
