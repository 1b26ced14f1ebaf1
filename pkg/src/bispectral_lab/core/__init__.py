from bispectral_lab.core.jets import Jet, Q, log_jet, power_jet, qq, binomial_frac
from bispectral_lab.core.qm import (
    PoleAtOne,
    QuasiMonomialFraction,
    QuasiMonomialSum,
    qm_derivative,
    qm_det,
)
from bispectral_lab.core.series import (
    TauSeries,
    key_weight,
    miwa_shift,
    partitions_of,
    partitions_upto,
    schur_elementary,
    schur_function,
    schur_poly,
    tau_mul,
    trim,
)
from bispectral_lab.core import linalg

__all__ = [
    "Jet", "Q", "qq", "log_jet", "power_jet", "binomial_frac",
    "PoleAtOne", "QuasiMonomialFraction", "QuasiMonomialSum", "qm_derivative", "qm_det",
    "TauSeries", "key_weight", "miwa_shift", "partitions_of", "partitions_upto",
    "schur_elementary", "schur_function", "schur_poly", "tau_mul", "trim",
    "linalg",
]
