#include "mfdcca/highdim.hpp"

#include <algorithm>
#include <cmath>

#include "mfdcca/errors.hpp"

namespace mfdcca {

namespace {

int snapped_floor(double v) {
    const double r = std::round(v);
    if (std::fabs(v - r) < 1e-9 * std::max(1.0, std::fabs(v))) {
        return static_cast<int>(r);
    }
    return static_cast<int>(std::floor(v));
}

void check_shape_2d(const Field2D& f) {
    if (f.n1 < 2 || f.n2 < 2 || f.values.size() != f.n1 * f.n2) {
        throw DataError("field must be at least 2 x 2");
    }
}

}  // namespace

Field2D difference_field_2d(const Field2D& Z) {
    check_shape_2d(Z);
    Field2D z(Z.n1, Z.n2);
    for (std::size_t i = 0; i < Z.n1; ++i) {
        for (std::size_t j = 0; j < Z.n2; ++j) {
            double v = Z.at(i, j);
            if (i > 0) v -= Z.at(i - 1, j);
            if (j > 0) v -= Z.at(i, j - 1);
            if (i > 0 && j > 0) v += Z.at(i - 1, j - 1);
            z.at(i, j) = v;
        }
    }
    return z;
}

Field2D cumulate_field_2d(const Field2D& z) {
    check_shape_2d(z);
    Field2D Z(z.n1, z.n2);
    for (std::size_t i = 0; i < z.n1; ++i) {
        for (std::size_t j = 0; j < z.n2; ++j) {
            double v = z.at(i, j);
            if (i > 0) v += Z.at(i - 1, j);
            if (j > 0) v += Z.at(i, j - 1);
            if (i > 0 && j > 0) v -= Z.at(i - 1, j - 1);
            Z.at(i, j) = v;
        }
    }
    return Z;
}

Field3D difference_field_3d(const Field3D& Z) {
    if (Z.n1 < 2 || Z.n2 < 2 || Z.n3 < 2 || Z.values.size() != Z.n1 * Z.n2 * Z.n3) {
        throw DataError("field must be at least 2 x 2 x 2");
    }
    Field3D z(Z.n1, Z.n2, Z.n3);
    auto zval = [&Z](std::size_t i, std::size_t j, std::size_t k, bool di, bool dj, bool dk) {
        if ((di && i == 0) || (dj && j == 0) || (dk && k == 0)) return 0.0;
        return Z.at(i - (di ? 1 : 0), j - (dj ? 1 : 0), k - (dk ? 1 : 0));
    };
    for (std::size_t i = 0; i < Z.n1; ++i) {
        for (std::size_t j = 0; j < Z.n2; ++j) {
            for (std::size_t k = 0; k < Z.n3; ++k) {
                z.at(i, j, k) = zval(i, j, k, false, false, false) -
                                zval(i, j, k, true, true, true) + zval(i, j, k, true, true, false) +
                                zval(i, j, k, true, false, true) +
                                zval(i, j, k, false, true, true) - zval(i, j, k, true, false, false) -
                                zval(i, j, k, false, true, false) - zval(i, j, k, false, false, true);
            }
        }
    }
    return z;
}

Field3D cumulate_field_3d(const Field3D& z) {
    if (z.n1 < 2 || z.n2 < 2 || z.n3 < 2 || z.values.size() != z.n1 * z.n2 * z.n3) {
        throw DataError("field must be at least 2 x 2 x 2");
    }
    Field3D Z(z.n1, z.n2, z.n3);
    auto Zval = [&Z](std::size_t i, std::size_t j, std::size_t k, bool di, bool dj, bool dk) {
        if ((di && i == 0) || (dj && j == 0) || (dk && k == 0)) return 0.0;
        return Z.at(i - (di ? 1 : 0), j - (dj ? 1 : 0), k - (dk ? 1 : 0));
    };
    for (std::size_t i = 0; i < z.n1; ++i) {
        for (std::size_t j = 0; j < z.n2; ++j) {
            for (std::size_t k = 0; k < z.n3; ++k) {
                Z.at(i, j, k) = z.at(i, j, k) + Zval(i, j, k, true, false, false) +
                                Zval(i, j, k, false, true, false) +
                                Zval(i, j, k, false, false, true) - Zval(i, j, k, true, true, false) -
                                Zval(i, j, k, true, false, true) - Zval(i, j, k, false, true, true) +
                                Zval(i, j, k, true, true, true);
            }
        }
    }
    return Z;
}

double Hd2dConfig::effective_scale() const {
    return std::sqrt(0.5 * (static_cast<double>(s1) * s1 + static_cast<double>(s2) * s2));
}

namespace {

// Padded prefix table: P(i, j) holds the sum of w over the 1-based index
// rectangle [1, i] x [1, j].
struct PrefixTable {
    std::size_t n1, n2;
    std::vector<double> p;

    PrefixTable(const Field2D& f, int weight_mode)
        : n1(f.n1), n2(f.n2), p((f.n1 + 1) * (f.n2 + 1), 0.0) {
        for (std::size_t i = 1; i <= n1; ++i) {
            for (std::size_t j = 1; j <= n2; ++j) {
                double w = f.at(i - 1, j - 1);
                if (weight_mode == 1) w *= static_cast<double>(i);
                if (weight_mode == 2) w *= static_cast<double>(j);
                if (weight_mode == 3) w *= static_cast<double>(i) * static_cast<double>(j);
                at(i, j) = w + at(i - 1, j) + at(i, j - 1) - at(i - 1, j - 1);
            }
        }
    }

    double& at(std::size_t i, std::size_t j) { return p[i * (n2 + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return p[i * (n2 + 1) + j]; }

    // sum over 1-based rectangle [a1, b1] x [a2, b2]
    double rect(std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2) const {
        return at(b1, b2) - at(a1 - 1, b2) - at(b1, a2 - 1) + at(a1 - 1, a2 - 1);
    }
};

// Residual field of one input: trailing-window sums minus the positioned
// moving average of window-local cumulative sums. Defined on the 1-based
// region [s_j, N_j - future_j]; outside entries stay zero.
Field2D residual_field(const Field2D& z, const Hd2dConfig& cfg, int fut1, int fut2) {
    const PrefixTable t0(z, 0), t1(z, 1), t2(z, 2), t12(z, 3);
    const int s1 = cfg.s1, s2 = cfg.s2;
    const int past1 = s1 - 1 - fut1, past2 = s2 - 1 - fut2;
    const double inv_area = 1.0 / (static_cast<double>(s1) * s2);

    Field2D eps(z.n1, z.n2);
    const std::size_t hi1 = z.n1 - static_cast<std::size_t>(fut1);
    const std::size_t hi2 = z.n2 - static_cast<std::size_t>(fut2);
    for (std::size_t i1 = static_cast<std::size_t>(s1); i1 <= hi1; ++i1) {
        for (std::size_t i2 = static_cast<std::size_t>(s2); i2 <= hi2; ++i2) {
            const std::size_t a1 = i1 - past1, b1 = i1 + fut1;
            const std::size_t a2 = i2 - past2, b2 = i2 + fut2;
            // mean over the window of its corner-anchored cumulative sums:
            // cell (l1, l2) enters with weight (b1+1-l1)(b2+1-l2)
            const double A = static_cast<double>(b1 + 1);
            const double B = static_cast<double>(b2 + 1);
            const double weighted = A * B * t0.rect(a1, b1, a2, b2) -
                                    A * t2.rect(a1, b1, a2, b2) - B * t1.rect(a1, b1, a2, b2) +
                                    t12.rect(a1, b1, a2, b2);
            const double trend = weighted * inv_area;
            const double q_sum = t0.rect(i1 - s1 + 1, i1, i2 - s2 + 1, i2);
            eps.at(i1 - 1, i2 - 1) = q_sum - trend;
        }
    }
    return eps;
}

}  // namespace

Hd2dFluctuation mfxdma_2d(const Field2D& zx, const Field2D& zy, const Hd2dConfig& config) {
    check_shape_2d(zx);
    check_shape_2d(zy);
    if (zx.n1 != zy.n1 || zx.n2 != zy.n2) {
        throw DataError("pair shape mismatch");
    }
    if (config.s1 < 2 || config.s2 < 2) {
        throw DataError("window sizes must be >= 2");
    }
    if (!(config.theta1 >= 0.0 && config.theta1 <= 1.0) ||
        !(config.theta2 >= 0.0 && config.theta2 <= 1.0)) {
        throw DataError("theta outside [0, 1]");
    }
    const std::vector<double> q_grid = config.q_grid.empty() ? default_q_grid() : config.q_grid;

    const int fut1 = snapped_floor((config.s1 - 1) * config.theta1);
    const int fut2 = snapped_floor((config.s2 - 1) * config.theta2);
    const int boxes1 =
        snapped_floor((static_cast<double>(zx.n1) - config.s1 * (1.0 + config.theta1)) / config.s1);
    const int boxes2 =
        snapped_floor((static_cast<double>(zx.n2) - config.s2 * (1.0 + config.theta2)) / config.s2);
    if (boxes1 < 1 || boxes2 < 1 || static_cast<std::size_t>(config.s1) + fut1 > zx.n1 ||
        static_cast<std::size_t>(config.s2) + fut2 > zx.n2) {
        throw DataError("scale exceeds field");
    }

    const Field2D ex = residual_field(zx, config, fut1, fut2);
    const Field2D ey = residual_field(zy, config, fut1, fut2);

    std::vector<double> covs_xy, covs_xx, covs_yy;
    covs_xy.reserve(static_cast<std::size_t>(boxes1) * boxes2);
    covs_xx.reserve(covs_xy.capacity());
    covs_yy.reserve(covs_xy.capacity());
    const double inv_area = 1.0 / (static_cast<double>(config.s1) * config.s2);
    for (int v1 = 1; v1 <= boxes1; ++v1) {
        for (int v2 = 1; v2 <= boxes2; ++v2) {
            // 1-based cells (v1*s1 + k1, v2*s2 + k2), k_j = 1..s_j
            double acc_xy = 0.0, acc_xx = 0.0, acc_yy = 0.0;
            for (int k1 = 1; k1 <= config.s1; ++k1) {
                const std::size_t row = static_cast<std::size_t>(v1 * config.s1 + k1) - 1;
                for (int k2 = 1; k2 <= config.s2; ++k2) {
                    const std::size_t col = static_cast<std::size_t>(v2 * config.s2 + k2) - 1;
                    const double vx = ex.at(row, col);
                    const double vy = ey.at(row, col);
                    acc_xy += vx * vy;
                    acc_xx += vx * vx;
                    acc_yy += vy * vy;
                }
            }
            covs_xy.push_back(acc_xy * inv_area);
            covs_xx.push_back(acc_xx * inv_area);
            covs_yy.push_back(acc_yy * inv_area);
        }
    }

    Hd2dFluctuation out;
    out.scale = config.effective_scale();
    out.q_grid = q_grid;
    out.f_xy.resize(q_grid.size());
    out.f_xx.resize(q_grid.size());
    out.f_yy.resize(q_grid.size());
    for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
        out.f_xy[qi] = fluctuation_function(covs_xy, q_grid[qi]);
        out.f_xx[qi] = fluctuation_function(covs_xx, q_grid[qi]);
        out.f_yy[qi] = fluctuation_function(covs_yy, q_grid[qi]);
    }
    return out;
}

FluctuationMatrix mfxdma_2d_sweep(const Field2D& zx, const Field2D& zy,
                                  const std::vector<int>& scales, double theta,
                                  const std::vector<double>& q_grid) {
    if (scales.empty()) {
        throw DataError("empty scale grid");
    }
    FluctuationMatrix fm;
    fm.q_grid = q_grid.empty() ? default_q_grid() : q_grid;
    fm.scale_grid = scales;
    fm.f_xy.assign(fm.n_q() * fm.n_s(), 0.0);
    fm.f_xx.assign(fm.n_q() * fm.n_s(), 0.0);
    fm.f_yy.assign(fm.n_q() * fm.n_s(), 0.0);
    for (std::size_t si = 0; si < scales.size(); ++si) {
        Hd2dConfig cfg;
        cfg.s1 = cfg.s2 = scales[si];
        cfg.theta1 = cfg.theta2 = theta;
        cfg.q_grid = fm.q_grid;
        const Hd2dFluctuation f = mfxdma_2d(zx, zy, cfg);
        for (std::size_t qi = 0; qi < fm.n_q(); ++qi) {
            fm.xy(qi, si) = f.f_xy[qi];
            fm.xx(qi, si) = f.f_xx[qi];
            fm.yy(qi, si) = f.f_yy[qi];
        }
    }
    return fm;
}

}  // namespace mfdcca
