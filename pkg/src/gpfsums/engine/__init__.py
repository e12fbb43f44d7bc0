"""
Engine Package
"""

from .checkpoint import CHECKPOINT_VERSION, Checkpoint, checkpoint_load, checkpoint_save
from .engine import SeriesEngine, numerical_slack
from .remainders import (
    TAIL_LEMMA_THRESHOLD,
    VALIDITY_THRESHOLD,
    Interval,
    ra_bounds,
    rb_bounds,
    tail_lemma,
)
from .results import (
    KIND_SA,
    KIND_SB,
    MODE_ACCELERATED,
    MODE_RAW,
    Accumulation,
    Enclosure,
    MertensState,
    SumResult,
    dd_from_record,
    dd_record,
)
from .stream import (
    ANCHOR_INTERVAL,
    BLOCK_SPAN,
    LEVEL_PRODUCT,
    LEVEL_SA,
    LEVEL_SB,
    BlockTotals,
    block_bounds,
    block_of,
    ordered_map,
    scan_block,
)

__all__ = [
    "CHECKPOINT_VERSION",
    "Checkpoint",
    "checkpoint_load",
    "checkpoint_save",
    "SeriesEngine",
    "numerical_slack",
    "TAIL_LEMMA_THRESHOLD",
    "VALIDITY_THRESHOLD",
    "Interval",
    "ra_bounds",
    "rb_bounds",
    "tail_lemma",
    "KIND_SA",
    "KIND_SB",
    "MODE_ACCELERATED",
    "MODE_RAW",
    "Accumulation",
    "Enclosure",
    "MertensState",
    "SumResult",
    "dd_from_record",
    "dd_record",
    "ANCHOR_INTERVAL",
    "BLOCK_SPAN",
    "LEVEL_PRODUCT",
    "LEVEL_SA",
    "LEVEL_SB",
    "BlockTotals",
    "block_bounds",
    "block_of",
    "ordered_map",
    "scan_block",
]
