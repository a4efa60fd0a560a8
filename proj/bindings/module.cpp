// Python bindings for the core operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mfdcca/errors.hpp"
#include "mfdcca/estimator.hpp"
#include "mfdcca/experiment.hpp"
#include "mfdcca/generators.hpp"
#include "mfdcca/highdim.hpp"
#include "mfdcca/scaling.hpp"
#include "mfdcca/series.hpp"

namespace py = pybind11;
using namespace mfdcca;

namespace {

Method method_from_string(const std::string& name) {
    if (name == "dma") return Method::mf_x_dma;
    if (name == "dfa") return Method::mf_x_dfa;
    throw DataError("method must be dma or dfa");
}

EstimatorConfig make_config(const std::string& method, double theta, int order,
                            std::vector<double> q_grid, std::vector<int> scales,
                            const std::string& coverage, const std::string& cov_mode,
                            bool matlab_compat) {
    EstimatorConfig config;
    config.method = method_from_string(method);
    config.theta = theta;
    config.poly_order = order;
    config.q_grid = std::move(q_grid);
    config.scale_grid = std::move(scales);
    config.coverage = coverage == "forward" ? Coverage::forward_only : Coverage::both_ends;
    config.cov_mode = cov_mode == "absolute" ? CovMode::absolute_product : CovMode::signed_product;
    if (matlab_compat) {
        config.alignment = MAAlignment::matlab;
        config.coverage = Coverage::both_ends;
        config.cov_mode = CovMode::absolute_product;
    }
    return config;
}

Field2D field_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw DataError("empty field");
    Field2D f(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != f.n2) throw DataError("ragged field rows");
        for (std::size_t j = 0; j < f.n2; ++j) f.at(i, j) = rows[i][j];
    }
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "multifractal detrending moving average / detrended fluctuation "
              "cross-correlation analysis";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<DegeneracyError>(m, "DegeneracyError", PyExc_ArithmeticError);

    py::class_<FluctuationMatrix>(m, "FluctuationMatrix")
        .def_readonly("q_grid", &FluctuationMatrix::q_grid)
        .def_readonly("scale_grid", &FluctuationMatrix::scale_grid)
        .def_readonly("f_xy", &FluctuationMatrix::f_xy)
        .def_readonly("f_xx", &FluctuationMatrix::f_xx)
        .def_readonly("f_yy", &FluctuationMatrix::f_yy);

    py::class_<ScalingResult>(m, "ScalingResult")
        .def_readonly("q_grid", &ScalingResult::q_grid)
        .def_readonly("h", &ScalingResult::h)
        .def_readonly("h_stderr", &ScalingResult::h_stderr)
        .def_readonly("tau", &ScalingResult::tau)
        .def_readonly("alpha", &ScalingResult::alpha)
        .def_readonly("f_alpha", &ScalingResult::f_alpha)
        .def_readonly("support_dim", &ScalingResult::support_dim);

    py::class_<TheoryCurves>(m, "TheoryCurves")
        .def_readonly("q_grid", &TheoryCurves::q_grid)
        .def_readonly("H", &TheoryCurves::H)
        .def_readonly("T", &TheoryCurves::T);

    m.def("default_q_grid", &default_q_grid);
    m.def("default_scale_grid", &default_scale_grid, py::arg("n"));
    m.def("build_profile", &build_profile, py::arg("series"));

    m.def(
        "run_estimator",
        [](const std::vector<double>& x, const std::vector<double>& y, const std::string& method,
           double theta, int order, std::vector<double> q_grid, std::vector<int> scales,
           const std::string& coverage, const std::string& cov_mode, bool matlab_compat) {
            const EstimatorConfig config =
                make_config(method, theta, order, std::move(q_grid), std::move(scales), coverage,
                            cov_mode, matlab_compat);
            return run_estimator(SeriesPair{x, y}, config);
        },
        py::arg("x"), py::arg("y"), py::arg("method") = "dma", py::arg("theta") = 0.0,
        py::arg("order") = 1, py::arg("q_grid") = std::vector<double>{},
        py::arg("scales") = std::vector<int>{}, py::arg("coverage") = "both-ends",
        py::arg("cov_mode") = "signed", py::arg("matlab_compat") = false);

    m.def(
        "fit_scaling_exponents",
        [](const FluctuationMatrix& fm, double s_min, double s_max, const std::string& channel,
           double support_dim) {
            Channel ch = Channel::xy;
            if (channel == "xx") ch = Channel::xx;
            if (channel == "yy") ch = Channel::yy;
            return fit_scaling_exponents(fm, FitRange{s_min, s_max}, ch, support_dim);
        },
        py::arg("fm"), py::arg("s_min"), py::arg("s_max"), py::arg("channel") = "xy",
        py::arg("support_dim") = 1.0);

    m.def("half_sum_check", &half_sum_check, py::arg("hxx"), py::arg("hyy"), py::arg("hxy"));
    m.def(
        "legendre_spectrum",
        [](const std::vector<double>& q, const std::vector<double>& tau) {
            std::vector<double> alpha, f;
            legendre_spectrum(q, tau, alpha, f);
            return py::make_tuple(alpha, f);
        },
        py::arg("q"), py::arg("tau"));

    m.def("arfima_weights", &arfima_weights, py::arg("d"), py::arg("cutoff"));
    m.def(
        "gen_two_component_arfima",
        [](double d1, double d2, double coupling, std::size_t length, int cutoff,
           std::uint64_t seed) {
            ArfimaSpec spec;
            spec.d1 = d1;
            spec.d2 = d2;
            spec.coupling = coupling;
            spec.common_noise = false;
            spec.length = length;
            spec.cutoff = cutoff;
            spec.seed = seed;
            const SeriesPair pair = gen_two_component_arfima(spec);
            return py::make_tuple(pair.x, pair.y);
        },
        py::arg("d1"), py::arg("d2"), py::arg("coupling") = 1.0, py::arg("length") = 32768,
        py::arg("cutoff") = 10000, py::arg("seed") = 0);
    m.def(
        "gen_common_noise_arfima",
        [](double d1, double d2, std::size_t length, int cutoff, std::uint64_t seed) {
            ArfimaSpec spec;
            spec.d1 = d1;
            spec.d2 = d2;
            spec.common_noise = true;
            spec.length = length;
            spec.cutoff = cutoff;
            spec.seed = seed;
            const SeriesPair pair = gen_common_noise_arfima(spec);
            return py::make_tuple(pair.x, pair.y);
        },
        py::arg("d1"), py::arg("d2"), py::arg("length") = 32768, py::arg("cutoff") = 10000,
        py::arg("seed") = 0);

    m.def("gen_binomial_measure", &gen_binomial_measure, py::arg("p"), py::arg("k"));
    m.def("binomial_theory", &binomial_theory, py::arg("p"), py::arg("q_grid"));
    m.def("binomial_pair_theory", &binomial_pair_theory, py::arg("px"), py::arg("py"),
          py::arg("q_grid"));

    m.def("gen_fgn_circulant", &gen_fgn_circulant, py::arg("hurst"), py::arg("n"), py::arg("seed"));
    m.def(
        "gen_correlated_fbm_pair",
        [](double hurst_x, double hurst_y, double rho, std::size_t length, std::uint64_t seed) {
            FbmSpec spec;
            spec.hurst_x = hurst_x;
            spec.hurst_y = hurst_y;
            spec.rho = rho;
            spec.length = length;
            spec.seed = seed;
            const SeriesPair pair = gen_correlated_fbm_pair(spec);
            return py::make_tuple(pair.x, pair.y);
        },
        py::arg("hurst_x"), py::arg("hurst_y"), py::arg("rho") = 0.0, py::arg("length") = 65536,
        py::arg("seed") = 0);

    m.def(
        "mfxdma_2d_sweep",
        [](const std::vector<std::vector<double>>& zx, const std::vector<std::vector<double>>& zy,
           const std::vector<int>& scales, double theta, const std::vector<double>& q_grid) {
            return mfxdma_2d_sweep(field_from_rows(zx), field_from_rows(zy), scales, theta, q_grid);
        },
        py::arg("zx"), py::arg("zy"), py::arg("scales"), py::arg("theta") = 0.0,
        py::arg("q_grid") = std::vector<double>{});
}
