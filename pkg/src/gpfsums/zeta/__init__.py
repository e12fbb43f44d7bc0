"""
Zeta Package
"""

from .bernoulli import BERNOULLI, BernoulliTable
from .euler_maclaurin import DEFAULT_EM, EulerMaclaurinConfig, zeta_derivatives, zeta_em
from .prime_zeta import (
    DEFAULT_SPLIT,
    DerivedConstants,
    PrimeZetaSplit,
    derived_constants,
    derived_constants_mpf,
    mobius,
    prime_zeta,
    prime_zeta_all,
    prime_zeta_d1,
    prime_zeta_d2,
    prime_zeta_order,
)

__all__ = [
    "BERNOULLI",
    "BernoulliTable",
    "DEFAULT_EM",
    "EulerMaclaurinConfig",
    "zeta_derivatives",
    "zeta_em",
    "DEFAULT_SPLIT",
    "DerivedConstants",
    "PrimeZetaSplit",
    "derived_constants",
    "derived_constants_mpf",
    "mobius",
    "prime_zeta",
    "prime_zeta_all",
    "prime_zeta_d1",
    "prime_zeta_d2",
    "prime_zeta_order",
]
