#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mfdcca/estimator.hpp"
#include "mfdcca/scaling.hpp"
#include "mfdcca/series.hpp"

namespace mfdcca {

// The four estimators compared throughout: backward, centered and forward
// detrending-moving-average variants plus first-order detrended analysis.
struct Algorithm {
    std::string name;
    Method method;
    double theta = 0.0;   // DMA only
    int poly_order = 1;   // DFA only
};

const std::vector<Algorithm>& standard_algorithms();

enum class Preset {
    bfbm_sweep,
    arfima_coupled,
    arfima_common,
    binomial,
    returns_volatility_template,
};

Preset preset_from_string(const std::string& name);
std::string to_string(Preset p);

struct ExperimentSpec {
    Preset preset = Preset::binomial;
    int repetitions = 1;
    std::uint64_t seed_base = 0;
    int jobs = 0;                    // 0 = hardware concurrency
    std::string input_csv;           // returns-volatility template only

    // Overridable process parameters (preset defaults applied when unset).
    std::optional<double> hurst;                  // bfbm equal-H level
    std::optional<std::vector<double>> rhos;      // bfbm cross-correlations
    std::optional<double> d1, d2, coupling;       // ARFIMA
    std::optional<double> p_x, p_y;               // binomial multipliers
    std::optional<int> cascade_k;                 // binomial iterations
    std::optional<std::size_t> length;

    void validate() const;
};

// One aggregate row per (algorithm, parameter combination, q).
struct ExperimentRow {
    std::string preset;
    std::string algorithm;
    std::string params;   // "key=value;key=value", no commas
    double q = 0.0;
    double h_mean = 0.0;
    double h_sd = 0.0;
    double delta_h_mean = 0.0;  // NaN when no theory curve applies
    double delta_h_sd = 0.0;
    double delta_tau_mean = 0.0;
    double delta_tau_sd = 0.0;
    int reps = 0;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
};

ExperimentReport run_experiment(const ExperimentSpec& spec);

// columns: preset,algorithm,params,q,h_mean,h_sd,delta_h_mean,delta_h_sd,
//          delta_tau_mean,delta_tau_sd,reps
void write_experiment_csv(const std::string& path, const ExperimentReport& report);

// Scaling ranges used by the presets (and by the validation suite): the
// moving-average estimators are fitted over a shorter span than the
// polynomial one, whose large scales stay unbiased.
FitRange preset_fit_range(const Algorithm& algo, std::size_t series_length);

// Same, for the deterministic binomial experiment with its quarter-power-
// of-two scale grids.
std::vector<int> binomial_scale_grid(const Algorithm& algo);
FitRange binomial_fit_range(const Algorithm& algo);

// Repetition helper: runs fn(rep) for rep = 0..count-1 on `jobs` threads
// (0 = hardware concurrency); results are aggregated by the caller in rep
// order so output is independent of scheduling.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

}  // namespace mfdcca
