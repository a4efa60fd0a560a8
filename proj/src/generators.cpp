#include "mfdcca/generators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fft.hpp"
#include "mfdcca/errors.hpp"
#include "mfdcca/rng.hpp"

namespace mfdcca {

namespace {

void check_memory_parameter(double d) {
    if (!(d > 0.0 && d < 0.5)) {
        throw DataError("memory parameter d outside (0, 0.5)");
    }
}

}  // namespace

void ArfimaSpec::validate() const {
    check_memory_parameter(d1);
    check_memory_parameter(d2);
    if (!(coupling >= 0.5 && coupling <= 1.0)) {
        throw DataError("coupling weight outside [0.5, 1]");
    }
    if (cutoff < 1) {
        throw DataError("cutoff must be >= 1");
    }
    if (length == 0) {
        throw DataError("empty series");
    }
}

std::vector<double> arfima_weights(double d, int cutoff) {
    check_memory_parameter(d);
    if (cutoff < 1) {
        throw DataError("cutoff must be >= 1");
    }
    std::vector<double> a(cutoff);
    a[0] = d;
    for (int n = 1; n < cutoff; ++n) {
        a[n] = a[n - 1] * (static_cast<double>(n) - d) / static_cast<double>(n + 1);
    }
    return a;
}

namespace {

// Shared recursion for both two-component forms. At each step the memory
// terms X and Y are truncated dot products of the weights with each
// component's own past; the first `cutoff` samples are burn-in.
SeriesPair arfima_recursion(const ArfimaSpec& spec) {
    spec.validate();
    const int m = spec.cutoff;
    const std::size_t total = spec.length + static_cast<std::size_t>(m);

    // weights reversed so each step is a contiguous forward dot product
    std::vector<double> wx = arfima_weights(spec.d1, m);
    std::vector<double> wy = arfima_weights(spec.d2, m);
    std::reverse(wx.begin(), wx.end());
    std::reverse(wy.begin(), wy.end());

    std::vector<double> x(total), y(total);
    GaussianRng rng(spec.seed);
    const double w = spec.coupling;
    for (std::size_t t = 0; t < total; ++t) {
        const std::size_t lags = std::min<std::size_t>(t, static_cast<std::size_t>(m));
        double mem_x = 0.0, mem_y = 0.0;
        const double* ax = wx.data() + (m - lags);
        const double* ay = wy.data() + (m - lags);
        const double* hx = x.data() + (t - lags);
        const double* hy = y.data() + (t - lags);
        for (std::size_t i = 0; i < lags; ++i) {
            mem_x += ax[i] * hx[i];
            mem_y += ay[i] * hy[i];
        }
        if (spec.common_noise) {
            const double eps = rng.gaussian();
            x[t] = mem_x + eps;
            y[t] = mem_y + eps;
        } else {
            const double eps_x = rng.gaussian();
            const double eps_y = rng.gaussian();
            x[t] = w * mem_x + (1.0 - w) * mem_y + eps_x;
            y[t] = (1.0 - w) * mem_x + w * mem_y + eps_y;
        }
    }
    SeriesPair pair;
    pair.x.assign(x.begin() + m, x.end());
    pair.y.assign(y.begin() + m, y.end());
    return pair;
}

}  // namespace

SeriesPair gen_two_component_arfima(const ArfimaSpec& spec) {
    if (spec.common_noise) {
        throw DataError("common_noise spec passed to the coupled generator");
    }
    return arfima_recursion(spec);
}

SeriesPair gen_common_noise_arfima(const ArfimaSpec& spec) {
    if (!spec.common_noise) {
        throw DataError("coupled spec passed to the common-noise generator");
    }
    return arfima_recursion(spec);
}

std::vector<double> gen_binomial_measure(double p, int k) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DataError("multiplier p outside (0, 1)");
    }
    if (k < 1 || k > 26) {
        throw DataError("iteration count outside 1..26");
    }
    std::vector<double> z{1.0};
    std::vector<double> next;
    for (int iter = 0; iter < k; ++iter) {
        next.resize(z.size() * 2);
        for (std::size_t i = 0; i < z.size(); ++i) {
            next[2 * i] = p * z[i];
            next[2 * i + 1] = (1.0 - p) * z[i];
        }
        z.swap(next);
    }
    return z;
}

TheoryCurves binomial_theory(double p, const std::vector<double>& q_grid) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DataError("multiplier p outside (0, 1)");
    }
    const double log2_ = std::log(2.0);
    TheoryCurves curves;
    curves.q_grid = q_grid;
    curves.H.resize(q_grid.size());
    curves.T.resize(q_grid.size());
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        const double q = q_grid[i];
        double h;
        if (q == 0.0) {
            h = -0.5 * (std::log2(p) + std::log2(1.0 - p));
        } else {
            h = 1.0 / q - std::log(std::pow(p, q) + std::pow(1.0 - p, q)) / (q * log2_);
        }
        curves.H[i] = h;
        curves.T[i] = q * h - 1.0;
    }
    return curves;
}

TheoryCurves binomial_pair_theory(double px, double py, const std::vector<double>& q_grid) {
    const TheoryCurves cx = binomial_theory(px, q_grid);
    const TheoryCurves cy = binomial_theory(py, q_grid);
    TheoryCurves curves;
    curves.q_grid = q_grid;
    curves.H.resize(q_grid.size());
    curves.T.resize(q_grid.size());
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        curves.H[i] = 0.5 * (cx.H[i] + cy.H[i]);
        curves.T[i] = 0.5 * (cx.T[i] + cy.T[i]);
    }
    return curves;
}

void FbmSpec::validate() const {
    if (!(hurst_x > 0.0 && hurst_x < 1.0) || !(hurst_y > 0.0 && hurst_y < 1.0)) {
        throw DataError("Hurst index outside (0, 1)");
    }
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw DataError("rho outside [-1, 1]");
    }
    if (length < 2) {
        throw DataError("length must be >= 2");
    }
}

double fgn_autocovariance(double hurst, std::size_t lag) {
    const double k = static_cast<double>(lag);
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
                  std::pow(std::fabs(k - 1.0), two_h));
}

namespace {

// Spectral driver: one real Gaussian for modes 0 and m/2, one complex
// Gaussian for each mode in between; drawn in that fixed order.
struct SpectralDriver {
    double dc;
    double nyquist;
    std::vector<std::complex<double>> modes;  // k = 1 .. m/2 - 1
};

SpectralDriver draw_driver(std::size_t m, GaussianRng& rng) {
    SpectralDriver d;
    d.dc = rng.gaussian();
    d.nyquist = rng.gaussian();
    d.modes.resize(m / 2 - 1);
    for (auto& z : d.modes) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        z = {re, im};
    }
    return d;
}

// Eigenvalues of the circulant embedding of the fGn covariance, clipped at
// zero; indefinite embeddings (below -1e-9) are rejected.
std::vector<double> circulant_eigenvalues(double hurst, std::size_t m) {
    std::vector<std::complex<double>> c(m);
    for (std::size_t j = 0; j < m; ++j) {
        c[j] = fgn_autocovariance(hurst, std::min(j, m - j));
    }
    detail::fft_pow2(c, false);
    std::vector<double> lambda(m);
    for (std::size_t j = 0; j < m; ++j) {
        double v = c[j].real();
        if (v < -1e-9) {
            throw DegeneracyError("embedding not nonnegative-definite");
        }
        lambda[j] = std::max(v, 0.0);
    }
    return lambda;
}

std::vector<double> synthesize(const std::vector<double>& lambda, const SpectralDriver& driver,
                               std::size_t n) {
    const std::size_t m = lambda.size();
    std::vector<std::complex<double>> a(m);
    const double inv_m = 1.0 / static_cast<double>(m);
    a[0] = std::sqrt(lambda[0] * inv_m) * driver.dc;
    a[m / 2] = std::sqrt(lambda[m / 2] * inv_m) * driver.nyquist;
    for (std::size_t k = 1; k < m / 2; ++k) {
        const double w = std::sqrt(0.5 * lambda[k] * inv_m);
        a[k] = w * driver.modes[k - 1];
        a[m - k] = std::conj(a[k]);
    }
    detail::fft_pow2(a, false);
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        out[t] = a[t].real();
    }
    return out;
}

std::size_t embedding_size(std::size_t n) {
    return std::max<std::size_t>(detail::next_pow2(2 * (n - 1)), 4);
}

}  // namespace

std::vector<double> gen_fgn_circulant(double hurst, std::size_t n, std::uint64_t seed) {
    if (!(hurst > 0.0 && hurst < 1.0)) {
        throw DataError("Hurst index outside (0, 1)");
    }
    if (n < 2) {
        throw DataError("length must be >= 2");
    }
    const std::size_t m = embedding_size(n);
    const std::vector<double> lambda = circulant_eigenvalues(hurst, m);
    GaussianRng rng(seed);
    const SpectralDriver driver = draw_driver(m, rng);
    return synthesize(lambda, driver, n);
}

SeriesPair gen_correlated_fbm_pair(const FbmSpec& spec) {
    spec.validate();
    const std::size_t m = embedding_size(spec.length);
    const std::vector<double> lx = circulant_eigenvalues(spec.hurst_x, m);
    const std::vector<double> ly = circulant_eigenvalues(spec.hurst_y, m);

    GaussianRng rng1(GaussianRng::substream(spec.seed, 0));
    GaussianRng rng2(GaussianRng::substream(spec.seed, 1));
    SpectralDriver z1 = draw_driver(m, rng1);
    const SpectralDriver z2 = draw_driver(m, rng2);

    // Symmetric mixing with a^2 + b^2 = 1 and 2ab = rho: each output driver
    // stays standard Gaussian and the pair correlates at rho.
    const double a = 0.5 * (std::sqrt(1.0 + spec.rho) + std::sqrt(1.0 - spec.rho));
    const double b = 0.5 * (std::sqrt(1.0 + spec.rho) - std::sqrt(1.0 - spec.rho));
    SpectralDriver w1, w2;
    w1.dc = a * z1.dc + b * z2.dc;
    w2.dc = b * z1.dc + a * z2.dc;
    w1.nyquist = a * z1.nyquist + b * z2.nyquist;
    w2.nyquist = b * z1.nyquist + a * z2.nyquist;
    w1.modes.resize(z1.modes.size());
    w2.modes.resize(z1.modes.size());
    for (std::size_t k = 0; k < z1.modes.size(); ++k) {
        w1.modes[k] = a * z1.modes[k] + b * z2.modes[k];
        w2.modes[k] = b * z1.modes[k] + a * z2.modes[k];
    }

    SeriesPair pair;
    pair.x = synthesize(lx, w1, spec.length);
    pair.y = synthesize(ly, w2, spec.length);
    return pair;
}

}  // namespace mfdcca
