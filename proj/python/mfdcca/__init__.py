"""Multifractal detrending moving average / detrended fluctuation
cross-correlation analysis.

Thin wrapper over the compiled extension; see the functions on
:mod:`mfdcca._core` for the full surface.
"""

from ._core import (  # noqa: F401
    DataError,
    DegeneracyError,
    FluctuationMatrix,
    ScalingResult,
    TheoryCurves,
    arfima_weights,
    binomial_pair_theory,
    binomial_theory,
    build_profile,
    default_q_grid,
    default_scale_grid,
    fit_scaling_exponents,
    gen_binomial_measure,
    gen_common_noise_arfima,
    gen_correlated_fbm_pair,
    gen_fgn_circulant,
    gen_two_component_arfima,
    half_sum_check,
    legendre_spectrum,
    mfxdma_2d_sweep,
    run_estimator,
)

__all__ = [
    "DataError",
    "DegeneracyError",
    "FluctuationMatrix",
    "ScalingResult",
    "TheoryCurves",
    "arfima_weights",
    "binomial_pair_theory",
    "binomial_theory",
    "build_profile",
    "default_q_grid",
    "default_scale_grid",
    "fit_scaling_exponents",
    "gen_binomial_measure",
    "gen_common_noise_arfima",
    "gen_correlated_fbm_pair",
    "gen_fgn_circulant",
    "gen_two_component_arfima",
    "half_sum_check",
    "legendre_spectrum",
    "mfxdma_2d_sweep",
    "run_estimator",
]
