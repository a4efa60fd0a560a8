// Command-line surface: CSV/generator ingestion, MF-X-DMA / MF-X-DFA runs,
// planar analysis, and the canned validation experiments.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mfdcca/csv.hpp"
#include "mfdcca/errors.hpp"
#include "mfdcca/estimator.hpp"
#include "mfdcca/experiment.hpp"
#include "mfdcca/generators.hpp"
#include "mfdcca/highdim.hpp"
#include "mfdcca/scaling.hpp"
#include "mfdcca/series.hpp"

namespace {

using nlohmann::json;

// files created by the current command, removed again on failure
std::vector<std::string> g_written;

std::ofstream create_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw mfdcca::DataError("cannot write file: " + path);
    g_written.push_back(path);
    return out;
}

void note_output(const std::string& path) { g_written.push_back(path); }

void remove_partial_outputs() {
    for (const std::string& path : g_written) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
}

struct QGridOpts {
    double q_min = -4.0;
    double q_max = 4.0;
    double q_step = 0.5;

    std::vector<double> build() const {
        if (!(q_step > 0.0) || q_max < q_min) throw mfdcca::DataError("invalid q grid");
        std::vector<double> q;
        for (int k = 0;; ++k) {
            const double v = q_min + k * q_step;
            if (v > q_max + 0.5 * q_step) break;
            q.push_back(v);
        }
        return q;
    }
};

// "a,b,c" = explicit scales; "lo:hi" = default grid restricted to [lo, hi]
std::vector<int> parse_scales(const std::string& text, std::size_t series_length) {
    if (text.empty()) return mfdcca::default_scale_grid(series_length);
    std::vector<int> scales;
    if (text.find(':') != std::string::npos) {
        const auto pos = text.find(':');
        const int lo = std::stoi(text.substr(0, pos));
        const int hi = std::stoi(text.substr(pos + 1));
        for (int s : mfdcca::default_scale_grid(series_length)) {
            if (s >= lo && s <= hi) scales.push_back(s);
        }
        if (scales.empty()) throw mfdcca::DataError("no default-grid scales in range " + text);
        return scales;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) scales.push_back(std::stoi(tok));
    }
    if (scales.empty()) throw mfdcca::DataError("empty scale list");
    return scales;
}

struct GeneratorOpts {
    std::string kind;  // binomial | arfima-coupled | arfima-common | fgn | fbm-pair
    double p_x = 0.3, p_y = 0.4;
    int cascade_k = 16;
    double d1 = 0.4, d2 = 0.4, coupling = 1.0;
    double hurst = 0.5, hurst_x = 0.5, hurst_y = 0.5, rho = 0.0;
    std::size_t length = 1 << 14;
    int cutoff = 10000;
    std::uint64_t seed = 0;

    mfdcca::SeriesPair generate() const {
        using namespace mfdcca;
        if (kind == "binomial") {
            return SeriesPair{gen_binomial_measure(p_x, cascade_k),
                              gen_binomial_measure(p_y, cascade_k)};
        }
        if (kind == "arfima-coupled" || kind == "arfima-common") {
            ArfimaSpec spec;
            spec.d1 = d1;
            spec.d2 = d2;
            spec.common_noise = kind == "arfima-common";
            spec.coupling = spec.common_noise ? 1.0 : coupling;
            spec.length = length;
            spec.cutoff = cutoff;
            spec.seed = seed;
            return spec.common_noise ? gen_common_noise_arfima(spec)
                                     : gen_two_component_arfima(spec);
        }
        if (kind == "fgn") {
            FbmSpec spec;
            spec.hurst_x = spec.hurst_y = hurst;
            spec.rho = 0.0;
            spec.length = length;
            spec.seed = seed;
            return gen_correlated_fbm_pair(spec);
        }
        if (kind == "fbm-pair") {
            FbmSpec spec;
            spec.hurst_x = hurst_x;
            spec.hurst_y = hurst_y;
            spec.rho = rho;
            spec.length = length;
            spec.seed = seed;
            return gen_correlated_fbm_pair(spec);
        }
        throw mfdcca::DataError("unknown generator: " + kind);
    }

    // closed-form exponents, when the process has them
    std::optional<mfdcca::TheoryCurves> theory(const std::vector<double>& q_grid) const {
        using namespace mfdcca;
        if (kind == "binomial") {
            return binomial_pair_theory(p_x, p_y, q_grid);
        }
        std::optional<double> h;
        if (kind == "arfima-common" || (kind.rfind("arfima", 0) == 0 && d1 == d2)) {
            h = 0.5 + 0.5 * (d1 + d2);
        } else if (kind == "fgn") {
            h = hurst;
        } else if (kind == "fbm-pair" && hurst_x == hurst_y) {
            h = hurst_x;
        }
        if (!h) return std::nullopt;
        TheoryCurves curves;
        curves.q_grid = q_grid;
        curves.H.assign(q_grid.size(), *h);
        curves.T.resize(q_grid.size());
        for (std::size_t i = 0; i < q_grid.size(); ++i) curves.T[i] = q_grid[i] * *h - 1.0;
        return curves;
    }

    void add_options(CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--gen", kind,
                                    "generator: binomial, arfima-coupled, arfima-common, fgn, "
                                    "fbm-pair");
        if (required) opt->required();
        cmd->add_option("--p-x", p_x, "binomial multiplier for x");
        cmd->add_option("--p-y", p_y, "binomial multiplier for y");
        cmd->add_option("--k", cascade_k, "binomial iteration count");
        cmd->add_option("--d1", d1, "ARFIMA memory parameter of x");
        cmd->add_option("--d2", d2, "ARFIMA memory parameter of y");
        cmd->add_option("--w", coupling, "ARFIMA coupling weight in [0.5, 1]");
        cmd->add_option("--hurst", hurst, "Hurst index (fgn)");
        cmd->add_option("--hurst-x", hurst_x, "Hurst index of x (fbm-pair)");
        cmd->add_option("--hurst-y", hurst_y, "Hurst index of y (fbm-pair)");
        cmd->add_option("--rho", rho, "cross-correlation of the pair");
        cmd->add_option("--length", length, "series length");
        cmd->add_option("--cutoff", cutoff, "ARFIMA weight cutoff");
        cmd->add_option("--seed", seed, "random seed");
    }
};

struct AnalyzeOpts {
    std::string input;
    std::string columns;
    std::string transform = "none";
    std::string method = "dma";
    double theta = 0.0;
    int order = 1;
    QGridOpts q;
    std::string scales;
    double fit_min = 0.0, fit_max = 0.0;  // 0 = full grid
    std::string coverage = "both-ends";
    std::string cov_mode = "signed";
    std::string compat;
    std::string out = "mfdcca";
    std::string emit = "fluctuations,exponents";
    std::string json_path;
    GeneratorOpts gen;
};

std::pair<std::string, std::string> split_columns(const std::string& columns) {
    if (columns.empty()) return {"", ""};
    const auto pos = columns.find(',');
    if (pos == std::string::npos) throw mfdcca::DataError("--columns needs two selectors");
    return {columns.substr(0, pos), columns.substr(pos + 1)};
}

bool emits(const std::string& emit, const std::string& what) {
    std::stringstream ss(emit);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == what) return true;
    }
    return false;
}

json fits_to_json(const mfdcca::ScalingResult& sr) {
    json arr = json::array();
    for (std::size_t i = 0; i < sr.q_grid.size(); ++i) {
        arr.push_back({{"q", sr.q_grid[i]},
                       {"h", sr.h[i]},
                       {"h_stderr", sr.h_stderr[i]},
                       {"intercept", sr.intercept[i]},
                       {"tau", sr.tau[i]},
                       {"alpha", sr.alpha[i]},
                       {"f_alpha", sr.f_alpha[i]}});
    }
    return arr;
}

int run_analyze(const AnalyzeOpts& opts) {
    using namespace mfdcca;
    if (opts.input.empty() == opts.gen.kind.empty()) {
        std::cerr << "exactly one of --input and --gen is required\n";
        return 1;
    }

    SeriesPair pair;
    if (!opts.input.empty()) {
        const auto [cx, cy] = split_columns(opts.columns);
        pair = load_series_csv(opts.input, cx, cy);
        if (pair.x.size() < 80 && opts.scales.empty()) {
            throw DataError("series too short for default grid (pass --scales to override)");
        }
    } else {
        pair = opts.gen.generate();
    }
    pair = apply_transform(pair, transform_from_string(opts.transform));

    EstimatorConfig config;
    config.method = opts.method == "dfa" ? Method::mf_x_dfa : Method::mf_x_dma;
    config.theta = opts.theta;
    config.poly_order = opts.order;
    config.q_grid = opts.q.build();
    config.scale_grid = parse_scales(opts.scales, pair.x.size());
    config.coverage =
        opts.coverage == "forward" ? Coverage::forward_only : Coverage::both_ends;
    config.cov_mode =
        opts.cov_mode == "absolute" ? CovMode::absolute_product : CovMode::signed_product;
    if (!opts.compat.empty()) {
        if (opts.compat != "matlab") throw DataError("unknown compat mode: " + opts.compat);
        config.alignment = MAAlignment::matlab;
        config.coverage = Coverage::both_ends;
        config.cov_mode = CovMode::absolute_product;
    }

    const FluctuationMatrix fm = run_estimator(pair, config);
    FitRange range{static_cast<double>(config.scale_grid.front()),
                   static_cast<double>(config.scale_grid.back())};
    if (opts.fit_min > 0.0) range.s_min = opts.fit_min;
    if (opts.fit_max > 0.0) range.s_max = opts.fit_max;
    const ScalingResult sr = fit_scaling_exponents(fm, range);

    json summary;
    summary["config"] = {{"method", opts.method},
                         {"theta", opts.theta},
                         {"order", opts.order},
                         {"q_grid", fm.q_grid},
                         {"scales", fm.scale_grid},
                         {"fit_min", range.s_min},
                         {"fit_max", range.s_max},
                         {"coverage", opts.coverage},
                         {"cov_mode", opts.cov_mode},
                         {"compat", opts.compat},
                         {"transform", opts.transform},
                         {"input", opts.input},
                         {"generator", opts.gen.kind},
                         {"seed", opts.gen.seed}};
    json files = json::array();

    if (emits(opts.emit, "fluctuations")) {
        const std::string path = opts.out + "_fluctuations.csv";
        note_output(path);
        write_fluctuation_csv(path, fm);
        files.push_back(path);
    }
    if (emits(opts.emit, "exponents") || emits(opts.emit, "spectrum")) {
        const std::string path = opts.out + "_exponents.csv";
        note_output(path);
        write_exponent_csv(path, sr);
        files.push_back(path);
    }
    if (emits(opts.emit, "deltas")) {
        std::optional<TheoryCurves> theory;
        if (!opts.gen.kind.empty()) theory = opts.gen.theory(fm.q_grid);
        if (!theory) {
            throw DataError("deltas need a generator input with closed-form exponents");
        }
        const ExponentDelta delta = exponent_delta(sr, theory->H, theory->T);
        const std::string path = opts.out + "_deltas.csv";
        note_output(path);
        write_delta_csv(path, delta);
        files.push_back(path);
    }
    summary["files"] = files;
    summary["fits"] = fits_to_json(sr);
    if (!opts.json_path.empty()) {
        std::ofstream jf = create_output(opts.json_path);
        jf << summary.dump(2) << "\n";
    }
    std::cout << "analyzed " << pair.x.size() << " samples over " << fm.n_s() << " scales; wrote "
              << files.size() << " table(s) with prefix " << opts.out << "\n";
    return 0;
}

struct Analyze2dOpts {
    std::string input_x, input_y;
    std::string scales = "4,8,16,32";
    double theta = 0.0;
    QGridOpts q;
    double fit_min = 0.0, fit_max = 0.0;
    std::string out = "mfdcca2d";
};

int run_analyze2d(const Analyze2dOpts& opts) {
    using namespace mfdcca;
    const Field2D zx = load_field_csv(opts.input_x);
    const Field2D zy = load_field_csv(opts.input_y);
    std::vector<int> scales;
    {
        std::stringstream ss(opts.scales);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) scales.push_back(std::stoi(tok));
        }
    }
    const FluctuationMatrix fm = mfxdma_2d_sweep(zx, zy, scales, opts.theta, opts.q.build());
    FitRange range{static_cast<double>(scales.front()), static_cast<double>(scales.back())};
    if (opts.fit_min > 0.0) range.s_min = opts.fit_min;
    if (opts.fit_max > 0.0) range.s_max = opts.fit_max;
    const ScalingResult sr = fit_scaling_exponents(fm, range, Channel::xy, 2.0);

    const std::string fpath = opts.out + "_fluctuations.csv";
    note_output(fpath);
    write_fluctuation_csv(fpath, fm);
    const std::string epath = opts.out + "_exponents.csv";
    note_output(epath);
    write_exponent_csv(epath, sr);
    std::cout << "wrote " << fpath << " and " << epath << "\n";
    return 0;
}

struct ExperimentOpts {
    std::string preset;
    int reps = 1;
    std::uint64_t seed = 0;
    int jobs = 0;
    std::string input;
    std::string out = "experiment.csv";
    // optional overrides
    double hurst = -1.0;
    std::string rhos;
    double d1 = -1.0, d2 = -1.0, coupling = -1.0;
    double p_x = -1.0, p_y = -1.0;
    int cascade_k = 0;
    std::size_t length = 0;
};

int run_experiment_cmd(const ExperimentOpts& opts) {
    using namespace mfdcca;
    ExperimentSpec spec;
    spec.preset = preset_from_string(opts.preset);
    spec.repetitions = opts.reps;
    spec.seed_base = opts.seed;
    spec.jobs = opts.jobs;
    spec.input_csv = opts.input;
    if (opts.hurst > 0.0) spec.hurst = opts.hurst;
    if (!opts.rhos.empty()) {
        std::vector<double> rhos;
        std::stringstream ss(opts.rhos);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) rhos.push_back(std::stod(tok));
        }
        spec.rhos = rhos;
    }
    if (opts.d1 > 0.0) spec.d1 = opts.d1;
    if (opts.d2 > 0.0) spec.d2 = opts.d2;
    if (opts.coupling > 0.0) spec.coupling = opts.coupling;
    if (opts.p_x > 0.0) spec.p_x = opts.p_x;
    if (opts.p_y > 0.0) spec.p_y = opts.p_y;
    if (opts.cascade_k > 0) spec.cascade_k = opts.cascade_k;
    if (opts.length > 0) spec.length = opts.length;

    const ExperimentReport report = run_experiment(spec);
    note_output(opts.out);
    write_experiment_csv(opts.out, report);
    std::cout << "wrote " << report.rows.size() << " rows to " << opts.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multifractal detrending-moving-average cross-correlation analysis"};
    app.require_subcommand(1);

    AnalyzeOpts an;
    CLI::App* analyze = app.add_subcommand("analyze", "run one estimator on a pair of series");
    analyze->set_config("--config", "", "key = value file mirroring the long options");
    analyze->add_option("--input", an.input, "two-column CSV input");
    analyze->add_option("--columns", an.columns, "column selectors, e.g. x,y or 0,1");
    analyze->add_option("--transform", an.transform, "none, log-return or abs-log-return");
    analyze->add_option("--method", an.method, "dma or dfa")
        ->check(CLI::IsMember({"dma", "dfa"}));
    analyze->add_option("--theta", an.theta, "DMA position parameter in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--order", an.order, "DFA polynomial order (1-4)")
        ->check(CLI::Range(1, 4));
    analyze->add_option("--q-min", an.q.q_min, "lowest moment order");
    analyze->add_option("--q-max", an.q.q_max, "highest moment order");
    analyze->add_option("--q-step", an.q.q_step, "moment order step");
    analyze->add_option("--scales", an.scales, "explicit list a,b,c or min:max on the default grid");
    analyze->add_option("--fit-min", an.fit_min, "lower fit bound (scale units)");
    analyze->add_option("--fit-max", an.fit_max, "upper fit bound (scale units)");
    analyze->add_option("--coverage", an.coverage, "both-ends or forward")
        ->check(CLI::IsMember({"both-ends", "forward"}));
    analyze->add_option("--cov-mode", an.cov_mode, "signed or absolute")
        ->check(CLI::IsMember({"signed", "absolute"}));
    analyze->add_option("--compat", an.compat, "matlab: reproduce the reference MATLAB pipeline");
    analyze->add_option("--out", an.out, "output path prefix");
    analyze->add_option("--emit", an.emit, "comma list of fluctuations,exponents,spectrum,deltas");
    analyze->add_option("--json", an.json_path, "machine-readable summary file");
    an.gen.add_options(analyze, false);

    GeneratorOpts gen;
    std::string gen_out = "pair.csv";
    CLI::App* generate = app.add_subcommand("generate", "write a generated series pair as CSV");
    gen.add_options(generate, true);
    generate->add_option("--out", gen_out, "output CSV path");

    Analyze2dOpts a2;
    CLI::App* analyze2d = app.add_subcommand("analyze2d", "planar analysis of two fields");
    analyze2d->add_option("--input-x", a2.input_x, "field CSV, rows = first index")->required();
    analyze2d->add_option("--input-y", a2.input_y, "field CSV")->required();
    analyze2d->add_option("--scales", a2.scales, "comma list of square window sizes");
    analyze2d->add_option("--theta", a2.theta, "position parameter in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    analyze2d->add_option("--q-min", a2.q.q_min, "lowest moment order");
    analyze2d->add_option("--q-max", a2.q.q_max, "highest moment order");
    analyze2d->add_option("--q-step", a2.q.q_step, "moment order step");
    analyze2d->add_option("--fit-min", a2.fit_min, "lower fit bound");
    analyze2d->add_option("--fit-max", a2.fit_max, "upper fit bound");
    analyze2d->add_option("--out", a2.out, "output path prefix");

    ExperimentOpts ex;
    CLI::App* experiment = app.add_subcommand("experiment", "run a canned validation preset");
    experiment
        ->add_option("--preset", ex.preset,
                     "bfbm-sweep, arfima-coupled, arfima-common, binomial, "
                     "returns-volatility-template")
        ->required();
    experiment->add_option("--reps", ex.reps, "repetitions (seeds)");
    experiment->add_option("--seed", ex.seed, "seed base");
    experiment->add_option("--jobs", ex.jobs, "parallel repetitions (0 = all cores)");
    experiment->add_option("--input", ex.input, "level CSV for returns-volatility-template");
    experiment->add_option("--out", ex.out, "output CSV path");
    experiment->add_option("--hurst", ex.hurst, "bfbm Hurst level");
    experiment->add_option("--rhos", ex.rhos, "comma list of cross-correlations");
    experiment->add_option("--d1", ex.d1, "ARFIMA memory parameter of x");
    experiment->add_option("--d2", ex.d2, "ARFIMA memory parameter of y");
    experiment->add_option("--w", ex.coupling, "ARFIMA coupling weight");
    experiment->add_option("--p-x", ex.p_x, "binomial multiplier of x");
    experiment->add_option("--p-y", ex.p_y, "binomial multiplier of y");
    experiment->add_option("--k", ex.cascade_k, "binomial iterations");
    experiment->add_option("--length", ex.length, "series length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze) return run_analyze(an);
        if (*generate) {
            mfdcca::write_series_csv(gen_out, gen.generate());
            std::cout << "wrote " << gen_out << "\n";
            return 0;
        }
        if (*analyze2d) return run_analyze2d(a2);
        if (*experiment) return run_experiment_cmd(ex);
    } catch (const mfdcca::DegeneracyError& e) {
        remove_partial_outputs();
        std::cerr << "numerical degeneracy: " << e.what() << "\n";
        return 3;
    } catch (const mfdcca::DataError& e) {
        remove_partial_outputs();
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        remove_partial_outputs();
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
