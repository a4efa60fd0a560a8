#include "mfdcca/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "mfdcca/csv.hpp"
#include "mfdcca/errors.hpp"
#include "mfdcca/generators.hpp"
#include "mfdcca/rng.hpp"

namespace mfdcca {

const std::vector<Algorithm>& standard_algorithms() {
    static const std::vector<Algorithm> algos = {
        {"mfxdma-backward", Method::mf_x_dma, 0.0, 1},
        {"mfxdma-centered", Method::mf_x_dma, 0.5, 1},
        {"mfxdma-forward", Method::mf_x_dma, 1.0, 1},
        {"mfxdfa-1", Method::mf_x_dfa, 0.0, 1},
    };
    return algos;
}

Preset preset_from_string(const std::string& name) {
    if (name == "bfbm-sweep") return Preset::bfbm_sweep;
    if (name == "arfima-coupled") return Preset::arfima_coupled;
    if (name == "arfima-common") return Preset::arfima_common;
    if (name == "binomial") return Preset::binomial;
    if (name == "returns-volatility-template") return Preset::returns_volatility_template;
    throw DataError("unknown preset: " + name);
}

std::string to_string(Preset p) {
    switch (p) {
        case Preset::bfbm_sweep: return "bfbm-sweep";
        case Preset::arfima_coupled: return "arfima-coupled";
        case Preset::arfima_common: return "arfima-common";
        case Preset::binomial: return "binomial";
        case Preset::returns_volatility_template: return "returns-volatility-template";
    }
    std::abort();
}

void ExperimentSpec::validate() const {
    if (repetitions < 1) {
        throw DataError("repetitions must be >= 1");
    }
    if (preset == Preset::returns_volatility_template && input_csv.empty()) {
        throw DataError("returns-volatility-template needs an input file");
    }
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 0) {
        jobs = static_cast<int>(std::thread::hardware_concurrency());
        if (jobs <= 0) jobs = 1;
    }
    jobs = std::min(jobs, count);
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

FitRange preset_fit_range(const Algorithm& algo, std::size_t series_length) {
    // Moving-average trends are undefined near the ends, which bends the
    // fluctuation function down at large scales; keep those fits inside two
    // orders of magnitude. The polynomial pipeline tolerates large scales
    // but warms up slowly at small ones.
    if (algo.method == Method::mf_x_dma) {
        return {20.0, 2000.0};
    }
    return {50.0, static_cast<double>(series_length) / 4.0};
}

std::vector<int> binomial_scale_grid(const Algorithm& algo) {
    const double base = (algo.method == Method::mf_x_dma) ? 4.0 : 8.0;
    std::vector<int> scales;
    for (int k = 0; k <= 28; ++k) {
        const int s = static_cast<int>(std::round(std::pow(2.0, base + 0.25 * k)));
        if (scales.empty() || s != scales.back()) scales.push_back(s);
    }
    return scales;
}

FitRange binomial_fit_range(const Algorithm& algo) {
    if (algo.method == Method::mf_x_dma) {
        return {16.0, 2048.0};
    }
    return {256.0, 32768.0};
}

namespace {

struct RepResult {
    // h and tau per algorithm, each over the default q grid
    std::vector<std::vector<double>> h;
    std::vector<std::vector<double>> tau;
};

RepResult analyze_pair_all(const SeriesPair& pair, const std::vector<int>& scale_grid,
                           const std::function<FitRange(const Algorithm&)>& range_for,
                           const std::function<std::vector<int>(const Algorithm&)>& grid_for) {
    const auto& algos = standard_algorithms();
    RepResult result;
    result.h.resize(algos.size());
    result.tau.resize(algos.size());
    for (std::size_t ai = 0; ai < algos.size(); ++ai) {
        EstimatorConfig config;
        config.method = algos[ai].method;
        config.theta = algos[ai].theta;
        config.poly_order = algos[ai].poly_order;
        config.scale_grid = grid_for ? grid_for(algos[ai]) : scale_grid;
        const FluctuationMatrix fm = run_estimator(pair, config);
        const ScalingResult sr = fit_scaling_exponents(fm, range_for(algos[ai]));
        result.h[ai] = sr.h;
        result.tau[ai] = sr.tau;
    }
    return result;
}

struct Aggregate {
    std::vector<double> h_mean, h_sd, dh_mean, dh_sd, dt_mean, dt_sd;
};

// mean/sd across repetitions, plus deltas against optional theory curves
Aggregate aggregate_reps(const std::vector<RepResult>& reps, std::size_t algo_index,
                         const TheoryCurves* theory, std::size_t n_q) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    Aggregate agg;
    agg.h_mean.assign(n_q, 0.0);
    agg.h_sd.assign(n_q, 0.0);
    agg.dh_mean.assign(n_q, nan);
    agg.dh_sd.assign(n_q, nan);
    agg.dt_mean.assign(n_q, nan);
    agg.dt_sd.assign(n_q, nan);
    const double n = static_cast<double>(reps.size());
    for (std::size_t qi = 0; qi < n_q; ++qi) {
        double sum = 0.0;
        for (const RepResult& r : reps) sum += r.h[algo_index][qi];
        const double mean = sum / n;
        double ss = 0.0;
        for (const RepResult& r : reps) {
            const double d = r.h[algo_index][qi] - mean;
            ss += d * d;
        }
        agg.h_mean[qi] = mean;
        agg.h_sd[qi] = reps.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        if (theory) {
            agg.dh_mean[qi] = mean - theory->H[qi];
            agg.dh_sd[qi] = agg.h_sd[qi];
            double tsum = 0.0;
            for (const RepResult& r : reps) tsum += r.tau[algo_index][qi];
            const double tmean = tsum / n;
            double tss = 0.0;
            for (const RepResult& r : reps) {
                const double d = r.tau[algo_index][qi] - tmean;
                tss += d * d;
            }
            agg.dt_mean[qi] = tmean - theory->T[qi];
            agg.dt_sd[qi] = reps.size() > 1 ? std::sqrt(tss / (n - 1.0)) : 0.0;
        }
    }
    return agg;
}

void emit_rows(ExperimentReport& report, const std::string& preset, const std::string& params,
               const std::vector<RepResult>& reps, const TheoryCurves* theory,
               const std::vector<double>& q_grid) {
    const auto& algos = standard_algorithms();
    for (std::size_t ai = 0; ai < algos.size(); ++ai) {
        const Aggregate agg = aggregate_reps(reps, ai, theory, q_grid.size());
        for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
            ExperimentRow row;
            row.preset = preset;
            row.algorithm = algos[ai].name;
            row.params = params;
            row.q = q_grid[qi];
            row.h_mean = agg.h_mean[qi];
            row.h_sd = agg.h_sd[qi];
            row.delta_h_mean = agg.dh_mean[qi];
            row.delta_h_sd = agg.dh_sd[qi];
            row.delta_tau_mean = agg.dt_mean[qi];
            row.delta_tau_sd = agg.dt_sd[qi];
            row.reps = static_cast<int>(reps.size());
            report.rows.push_back(row);
        }
    }
}

std::string format_param(double v) {
    std::string s = format_double(v);
    return s;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const std::vector<double> q_grid = default_q_grid();
    ExperimentReport report;
    const std::string preset_name = to_string(spec.preset);

    switch (spec.preset) {
        case Preset::bfbm_sweep: {
            const double hurst = spec.hurst.value_or(0.8);
            const std::vector<double> rhos = spec.rhos.value_or(std::vector<double>{0.1, 0.5, 0.9});
            const std::size_t length = spec.length.value_or(std::size_t{1} << 16);
            // monofractal theory: H(q) constant
            TheoryCurves theory;
            theory.q_grid = q_grid;
            theory.H.assign(q_grid.size(), hurst);
            theory.T.resize(q_grid.size());
            for (std::size_t i = 0; i < q_grid.size(); ++i) theory.T[i] = q_grid[i] * hurst - 1.0;

            const std::vector<int> scales = default_scale_grid(length);
            for (double rho : rhos) {
                std::vector<RepResult> reps(spec.repetitions);
                parallel_for(spec.repetitions, spec.jobs, [&](int rep) {
                    FbmSpec fbm;
                    fbm.hurst_x = fbm.hurst_y = hurst;
                    fbm.rho = rho;
                    fbm.length = length;
                    // common seeds across rho so the sweep isolates rho
                    fbm.seed = GaussianRng::substream(spec.seed_base, static_cast<std::uint64_t>(rep));
                    const SeriesPair pair = gen_correlated_fbm_pair(fbm);
                    reps[rep] = analyze_pair_all(
                        pair, scales, [&](const Algorithm& a) { return preset_fit_range(a, length); },
                        nullptr);
                });
                const std::string params = "H=" + format_param(hurst) + ";rho=" + format_param(rho) +
                                           ";N=" + std::to_string(length);
                emit_rows(report, preset_name, params, reps, &theory, q_grid);
            }
            break;
        }
        case Preset::arfima_coupled:
        case Preset::arfima_common: {
            const bool common = spec.preset == Preset::arfima_common;
            const double d1 = spec.d1.value_or(common ? 0.1 : 0.4);
            const double d2 = spec.d2.value_or(0.4);
            const double coupling = spec.coupling.value_or(0.8);
            const std::size_t length = spec.length.value_or(std::size_t{1} << 15);

            // H_xy = (H_xx + H_yy)/2 = 0.5 + (d1 + d2)/2; for the coupled form
            // this is exact only when d1 = d2 (then it holds for any W).
            const TheoryCurves* theory_ptr = nullptr;
            TheoryCurves theory;
            if (common || d1 == d2) {
                const double h = 0.5 + 0.5 * (d1 + d2);
                theory.q_grid = q_grid;
                theory.H.assign(q_grid.size(), h);
                theory.T.resize(q_grid.size());
                for (std::size_t i = 0; i < q_grid.size(); ++i) theory.T[i] = q_grid[i] * h - 1.0;
                theory_ptr = &theory;
            }

            const std::vector<int> scales = default_scale_grid(length);
            std::vector<RepResult> reps(spec.repetitions);
            parallel_for(spec.repetitions, spec.jobs, [&](int rep) {
                ArfimaSpec arfima;
                arfima.d1 = d1;
                arfima.d2 = d2;
                arfima.coupling = common ? 1.0 : coupling;
                arfima.common_noise = common;
                arfima.length = length;
                arfima.seed = GaussianRng::substream(spec.seed_base, static_cast<std::uint64_t>(rep));
                const SeriesPair pair =
                    common ? gen_common_noise_arfima(arfima) : gen_two_component_arfima(arfima);
                reps[rep] = analyze_pair_all(
                    pair, scales, [&](const Algorithm& a) { return preset_fit_range(a, length); },
                    nullptr);
            });
            std::string params = "d1=" + format_param(d1) + ";d2=" + format_param(d2);
            if (!common) params += ";W=" + format_param(coupling);
            params += ";N=" + std::to_string(length);
            emit_rows(report, preset_name, params, reps, theory_ptr, q_grid);
            break;
        }
        case Preset::binomial: {
            const double px = spec.p_x.value_or(0.3);
            const double py = spec.p_y.value_or(0.4);
            const int k = spec.cascade_k.value_or(16);
            SeriesPair pair;
            pair.x = gen_binomial_measure(px, k);
            pair.y = gen_binomial_measure(py, k);
            const TheoryCurves theory = binomial_pair_theory(px, py, q_grid);
            const std::size_t n = pair.x.size();

            // deterministic: repetitions collapse to one evaluation
            std::vector<RepResult> reps(1);
            reps[0] =
                analyze_pair_all(pair, {}, [&](const Algorithm& a) { return binomial_fit_range(a); },
                                 [&](const Algorithm& a) {
                                     std::vector<int> grid;
                                     for (int s : binomial_scale_grid(a)) {
                                         if (static_cast<std::size_t>(s) <= n / 2) grid.push_back(s);
                                     }
                                     return grid;
                                 });
            const std::string params =
                "px=" + format_param(px) + ";py=" + format_param(py) + ";k=" + std::to_string(k);
            emit_rows(report, preset_name, params, reps, &theory, q_grid);
            break;
        }
        case Preset::returns_volatility_template: {
            const SeriesPair levels = load_series_csv(spec.input_csv);
            for (Transform t : {Transform::log_return, Transform::abs_log_return}) {
                const SeriesPair pair = apply_transform(levels, t);
                const std::vector<int> scales = default_scale_grid(pair.x.size());
                std::vector<RepResult> reps(1);
                reps[0] = analyze_pair_all(
                    pair, scales,
                    [&](const Algorithm& a) { return preset_fit_range(a, pair.x.size()); }, nullptr);
                emit_rows(report, preset_name, "transform=" + to_string(t), reps, nullptr, q_grid);
            }
            break;
        }
    }
    return report;
}

void write_experiment_csv(const std::string& path, const ExperimentReport& report) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write file: " + path);
    }
    out << "preset,algorithm,params,q,h_mean,h_sd,delta_h_mean,delta_h_sd,delta_tau_mean,"
           "delta_tau_sd,reps\n";
    for (const ExperimentRow& r : report.rows) {
        out << r.preset << "," << r.algorithm << "," << r.params << "," << format_double(r.q) << ","
            << format_double(r.h_mean) << "," << format_double(r.h_sd) << ","
            << format_double(r.delta_h_mean) << "," << format_double(r.delta_h_sd) << ","
            << format_double(r.delta_tau_mean) << "," << format_double(r.delta_tau_sd) << ","
            << r.reps << "\n";
    }
}

}  // namespace mfdcca
