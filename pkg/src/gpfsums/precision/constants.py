# src/gpfsums/precision/constants.py
"""
Compiled-in high-precision constants.

gamma and e^gamma are stored as decimal literals. e^(2 gamma) is the exact
decimal square of the e^gamma literal, rounded to 50 significant digits;
no transcendental function is evaluated anywhere on this path.
"""

from dataclasses import dataclass
from decimal import Decimal, localcontext

import mpmath

from .dd import DD

EULER_GAMMA_DIGITS = "0.57721566490153286060651209008240243104215933593992"
EXP_GAMMA_DIGITS = "1.78107241799019798523650410310717954916964521430343"


def _exact_square(literal: str, significant: int) -> str:
    with localcontext() as ctx:
        ctx.prec = significant
        return str(+(Decimal(literal) * Decimal(literal)))


EXP_2GAMMA_DIGITS = _exact_square(EXP_GAMMA_DIGITS, 50)


@dataclass(frozen=True)
class Constants:
    gamma: DD
    exp_gamma: DD
    exp_2gamma: DD


CONSTANTS = Constants(
    gamma=DD.of(EULER_GAMMA_DIGITS),
    exp_gamma=DD.of(EXP_GAMMA_DIGITS),
    exp_2gamma=DD.of(EXP_2GAMMA_DIGITS),
)


def constant_mpf(name: str) -> mpmath.mpf:
    """Full-literal value at the caller's mpmath precision"""
    literals = {
        "gamma": EULER_GAMMA_DIGITS,
        "exp_gamma": EXP_GAMMA_DIGITS,
        "exp_2gamma": EXP_2GAMMA_DIGITS,
    }
    if name not in literals:
        raise KeyError(f"Unknown constant: {name}")
    return mpmath.mpf(literals[name])
