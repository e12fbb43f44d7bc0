# src/gpfsums/zeta/bernoulli.py
"""
Exact Bernoulli numbers B_2 .. B_32.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict

MAX_INDEX = 32


@lru_cache(maxsize=None)
def _akiyama_tanigawa(n_max: int) -> Dict[int, Fraction]:
    values = {}
    row = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        values[m] = row[0]
    return values


@dataclass(frozen=True)
class BernoulliTable:
    """Even-index Bernoulli numbers as exact rationals"""

    values: Dict[int, Fraction] = field(
        default_factory=lambda: {
            n: b for n, b in _akiyama_tanigawa(MAX_INDEX).items() if n >= 2 and n % 2 == 0
        }
    )

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]


BERNOULLI = BernoulliTable()
