"""Exact computer algebra for Bessel operators, monomial Darboux
transformations, KP tau-functions and the bosonic W_(1+inf) action.

Everything is computed over Q (fractions.Fraction), on truncated weighted
power series and truncated wave series that carry explicit validity orders.
No floating point anywhere.
"""

from bispectral_lab.core import (
    Q,
    qq,
    Jet,
    QuasiMonomialSum,
    QuasiMonomialFraction,
    TauSeries,
    qm_derivative,
    schur_elementary,
    schur_function,
    miwa_shift,
    tau_mul,
)
from bispectral_lab.diffop import (
    DiffOp,
    ZOperator,
    bessel_operator,
    bessel_compose,
    bessel_power,
    bessel_kernel,
    formal_adjoint,
    right_divide,
    dz_to_monomials,
)
from bispectral_lab.wave import WaveSeries, BesselWave, bessel_wave, apply_x, apply_z

__all__ = [
    "Q",
    "qq",
    "Jet",
    "QuasiMonomialSum",
    "QuasiMonomialFraction",
    "TauSeries",
    "qm_derivative",
    "schur_elementary",
    "schur_function",
    "miwa_shift",
    "tau_mul",
    "DiffOp",
    "ZOperator",
    "bessel_operator",
    "bessel_compose",
    "bessel_power",
    "bessel_kernel",
    "formal_adjoint",
    "right_divide",
    "dz_to_monomials",
    "WaveSeries",
    "BesselWave",
    "bessel_wave",
    "apply_x",
    "apply_z",
]
