# src/gpfsums/engine/results.py
"""
Result records of the streaming engine and their structured form.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..precision import DD, ZERO, common_prefix, dd_to_decimal
from ..precision.rendering import MAX_DIGITS
from .remainders import Interval

KIND_SA = "Sa"
KIND_SB = "Sb"
MODE_RAW = "raw"
MODE_ACCELERATED = "accelerated"


def dd_record(value: DD, digits: int = MAX_DIGITS) -> Dict[str, Any]:
    """Hex-exact words plus a decimal rendering"""
    return {"hex": list(value.hex()), "decimal": dd_to_decimal(value, digits)}


def dd_from_record(record: Dict[str, Any]) -> DD:
    return DD.from_hex(record["hex"])


@dataclass(frozen=True)
class MertensState:
    """Running state of prod p/(p-1) after the prime p_last"""

    p_last: int
    product: DD
    ln_p: DD
    ln_anchor_count: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p_last": self.p_last,
            "product": dd_record(self.product),
            "ln_p": dd_record(self.ln_p),
            "ln_anchor_count": self.ln_anchor_count,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MertensState":
        return cls(
            p_last=int(data["p_last"]),
            product=dd_from_record(data["product"]),
            ln_p=dd_from_record(data["ln_p"]),
            ln_anchor_count=int(data["ln_anchor_count"]),
        )


@dataclass(frozen=True)
class Enclosure:
    """[lo, hi] holding a constant; hi is None for a one-sided lower bound"""

    lo: DD
    hi: Optional[DD] = None

    def __post_init__(self):
        if self.hi is not None and self.lo.to_fraction() > self.hi.to_fraction():
            raise ValueError(f"Enclosure endpoints out of order: {self.lo} > {self.hi}")

    @property
    def bounded(self) -> bool:
        return self.hi is not None

    @property
    def width(self) -> Optional[DD]:
        return None if self.hi is None else self.hi - self.lo

    def contains(self, value) -> bool:
        v = DD.of(value).to_fraction()
        if v < self.lo.to_fraction():
            return False
        return self.hi is None or v <= self.hi.to_fraction()

    def certified_digits(self, digits: int = MAX_DIGITS) -> str:
        """Longest decimal prefix shared by both endpoints; empty when unbounded"""
        if self.hi is None:
            return ""
        return common_prefix(dd_to_decimal(self.lo, digits), dd_to_decimal(self.hi, digits))

    def to_dict(self, digits: int = MAX_DIGITS) -> Dict[str, Any]:
        return {
            "lo": dd_record(self.lo, digits),
            "hi": None if self.hi is None else dd_record(self.hi, digits),
            "certified_digits": self.certified_digits(),
        }


@dataclass(frozen=True)
class Accumulation:
    """
    Streamed sums over the primes p <= x

    raw_sb = 1 + sum M(p)/p^2, raw_sa = 1 + sum w(p) M(p)^2,
    log_sb = sum ln p/p^2, log_sa = sum w(p) ln^2 p, theta = sum ln p,
    with w(p) = (2 - 1/p)/p^2 and M(p) the Mertens product through p.
    """

    x: int
    level: int
    primes_used: int
    blocks: int
    state: MertensState
    raw_sb: DD
    raw_sa: DD
    log_sb: DD
    log_sa: DD
    theta: DD
    max_ln_drift: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x": self.x,
            "level": self.level,
            "primes_used": self.primes_used,
            "blocks": self.blocks,
            "state": self.state.to_dict(),
            "raw_sb": dd_record(self.raw_sb),
            "raw_sa": dd_record(self.raw_sa),
            "log_sb": dd_record(self.log_sb),
            "log_sa": dd_record(self.log_sa),
            "theta": dd_record(self.theta),
        }


@dataclass(frozen=True)
class SumResult:
    kind: str
    mode: str
    x: int
    primes_used: int
    partial: DD
    constant: DD
    remainder: Optional[Interval]
    enclosure: Enclosure
    state: MertensState
    numerical_slack: DD = ZERO
    elapsed_ms: int = 0
    checkpoint: Dict[str, Any] = field(default_factory=dict)

    @property
    def value(self) -> DD:
        """constant + partial; in raw mode the lower bound itself"""
        return self.constant + self.partial

    def certified_digits(self) -> str:
        return self.enclosure.certified_digits()

    def to_dict(self, digits: int = MAX_DIGITS) -> Dict[str, Any]:
        """Structured form; elapsed_ms is the only timing field"""
        return {
            "kind": self.kind,
            "mode": self.mode,
            "x": self.x,
            "primes_used": self.primes_used,
            "partial": dd_record(self.partial, digits),
            "constant": dd_record(self.constant, digits),
            "remainder_lo": None if self.remainder is None else dd_record(self.remainder.lo, digits),
            "remainder_hi": None if self.remainder is None else dd_record(self.remainder.hi, digits),
            "numerical_slack": dd_record(self.numerical_slack, digits),
            "enclosure": self.enclosure.to_dict(digits),
            "state": self.state.to_dict(),
            "checkpoint": dict(self.checkpoint),
            "elapsed_ms": self.elapsed_ms,
        }
