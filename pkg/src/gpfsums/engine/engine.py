# src/gpfsums/engine/engine.py
"""
Series Engine
Streams the primes up to x block by block and reduces the block sums in
fixed order into the raw and accelerated forms of Sb and Sa.
"""

import logging
import math
import time
from contextlib import closing
from functools import partial
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

from ..errors import ConfigurationError, PreconditionError, RunInterrupted
from ..precision import CONSTANTS, DD, ONE, ZERO, dd_nudge
from ..sieve import SegmentPlan, base_primes
from ..zeta import derived_constants
from .checkpoint import Checkpoint, checkpoint_load, checkpoint_save
from .remainders import Interval, ra_bounds, rb_bounds
from .results import (
    KIND_SA,
    KIND_SB,
    MODE_ACCELERATED,
    MODE_RAW,
    Accumulation,
    Enclosure,
    MertensState,
    SumResult,
)
from .stream import (
    ANCHOR_INTERVAL,
    BLOCK_SPAN,
    LEVEL_PRODUCT,
    LEVEL_SA,
    LEVEL_SB,
    BlockTotals,
    block_count,
    ordered_map,
    scan_block,
)


logger = logging.getLogger(__name__)

MIN_BLOCK_SPAN = 2 ** 10
KIND_ACCUMULATE = "accumulate"

# per-prime bound on the accumulated double-word error, plus the error of
# the derived constant
SLACK_PER_PRIME = DD.of("1e-26")
SLACK_BASE = DD.of("1e-24")


def numerical_slack(primes_used: int) -> DD:
    return SLACK_BASE + SLACK_PER_PRIME * primes_used


class SeriesEngine:
    """
    Deterministic streaming evaluation of Sb and Sa

    Results depend on x, block_span and anchor_interval only; the thread
    count and the sieve segment size never change a single bit.
    """

    def __init__(
        self,
        threads: int = 1,
        segment_size: int = 2 ** 20,
        block_span: int = BLOCK_SPAN,
        anchor_interval: int = ANCHOR_INTERVAL,
        checkpoint_every: int = 1,
        halt_after_blocks: Optional[int] = None,
    ):
        if threads < 1:
            raise ConfigurationError(f"threads must be >= 1, got {threads}")
        if block_span & (block_span - 1) or block_span < MIN_BLOCK_SPAN:
            raise ConfigurationError(f"block_span must be a power of two >= {MIN_BLOCK_SPAN}, got {block_span}")
        if anchor_interval < 1:
            raise ConfigurationError(f"anchor_interval must be >= 1, got {anchor_interval}")
        if checkpoint_every < 1:
            raise ConfigurationError(f"checkpoint_every must be >= 1, got {checkpoint_every}")
        SegmentPlan(2, 3, segment_size)

        self.threads = threads
        self.segment_size = segment_size
        self.block_span = block_span
        self.anchor_interval = anchor_interval
        self.checkpoint_every = checkpoint_every
        self.halt_after_blocks = halt_after_blocks

    def iter_blocks(self, x: int, level: int, indices: Sequence[int]) -> Iterator[BlockTotals]:
        """Block totals for the given block indices of [2, x], in the given order"""
        scan = partial(
            scan_block,
            x=x,
            level=level,
            segment_size=self.segment_size,
            block_span=self.block_span,
            anchor_interval=self.anchor_interval,
            base=base_primes(math.isqrt(x)),
        )
        return ordered_map(scan, indices, self.threads)

    def block_count(self, x: int) -> int:
        return block_count(x, self.block_span)

    def accumulate(
        self,
        x: int,
        level: int = LEVEL_SA,
        checkpoint_path: Optional[Union[str, Path]] = None,
        resume: bool = False,
        kind: str = KIND_ACCUMULATE,
        mode: Optional[str] = None,
    ) -> Accumulation:
        """
        Stream every prime <= x and reduce the block sums in block order

        Args:
            x: inclusive upper limit, >= 2
            level: LEVEL_PRODUCT, LEVEL_SB or LEVEL_SA
            checkpoint_path: checkpoint written every checkpoint_every blocks
            resume: continue from checkpoint_path instead of starting over

        Returns:
            Accumulation with the raw sums, logarithmic sums and final state
        """
        if x < 2:
            raise PreconditionError(f"x must be >= 2, got {x}")
        if level not in (LEVEL_PRODUCT, LEVEL_SB, LEVEL_SA):
            raise ConfigurationError(f"Unknown accumulation level: {level}")
        if resume and checkpoint_path is None:
            raise ConfigurationError("--resume needs a checkpoint path")
        mode = mode or f"level-{level}"

        total_blocks = self.block_count(x)
        blocks_done = 0
        primes_used = 0
        prefix = ONE
        raw_sb, raw_sa = ONE, ONE
        log_sb, log_sa, theta = ZERO, ZERO, ZERO
        state = MertensState(p_last=0, product=ONE, ln_p=ZERO, ln_anchor_count=0)
        max_drift = 0.0

        if resume:
            saved = checkpoint_load(checkpoint_path)
            saved.check_compatible(kind, mode, x, self.block_span, self.anchor_interval)
            blocks_done = saved.blocks_done
            primes_used = saved.primes_used
            state = saved.state
            prefix = state.product
            raw_sb, raw_sa = saved.sums["raw_sb"], saved.sums["raw_sa"]
            log_sb, log_sa, theta = saved.sums["log_sb"], saved.sums["log_sa"], saved.sums["theta"]
            max_drift = saved.max_ln_drift
            logger.info(f"Resuming {kind}/{mode} at x = {x} from block {blocks_done} of {total_blocks}")

        logger.info(
            f"Streaming primes <= {x}: {total_blocks - blocks_done} blocks, "
            f"{self.threads} threads, level {level}"
        )
        blocks = self.iter_blocks(x, level, range(blocks_done, total_blocks))
        with closing(blocks):
            for totals in blocks:
                raw_sb = raw_sb + prefix * totals.a
                raw_sa = raw_sa + (prefix * prefix) * totals.a2
                log_sb = log_sb + totals.l
                log_sa = log_sa + totals.l2
                theta = theta + totals.theta
                prefix = prefix * totals.product
                primes_used += totals.primes
                max_drift = max(max_drift, totals.max_ln_drift)
                if totals.primes:
                    state = MertensState(
                        p_last=totals.last_prime,
                        product=prefix,
                        ln_p=totals.ln_last,
                        ln_anchor_count=totals.since_anchor,
                    )
                blocks_done += 1
                logger.debug(
                    f"Block {totals.index} [{totals.lo}, {totals.hi}]: {totals.primes} primes, "
                    f"{totals.anchors} anchors"
                )

                halting = (
                    self.halt_after_blocks is not None
                    and self.halt_after_blocks <= blocks_done < total_blocks
                )
                if checkpoint_path is not None and (
                    halting or blocks_done % self.checkpoint_every == 0 or blocks_done == total_blocks
                ):
                    checkpoint_save(
                        Checkpoint(
                            kind=kind,
                            mode=mode,
                            x=x,
                            block_span=self.block_span,
                            anchor_interval=self.anchor_interval,
                            blocks_done=blocks_done,
                            x_processed=totals.hi,
                            primes_used=primes_used,
                            state=state,
                            sums={
                                "raw_sb": raw_sb,
                                "raw_sa": raw_sa,
                                "log_sb": log_sb,
                                "log_sa": log_sa,
                                "theta": theta,
                            },
                            max_ln_drift=max_drift,
                        ),
                        checkpoint_path,
                    )

                if halting:
                    logger.info(f"Halting after {blocks_done} of {total_blocks} blocks")
                    raise RunInterrupted(
                        f"Run halted after {blocks_done} of {total_blocks} blocks", blocks_done=blocks_done
                    )

        logger.info(f"Streamed {primes_used} primes <= {x}; max ln drift {max_drift:.2e}")
        return Accumulation(
            x=x,
            level=level,
            primes_used=primes_used,
            blocks=total_blocks,
            state=state,
            raw_sb=raw_sb,
            raw_sa=raw_sa,
            log_sb=log_sb,
            log_sa=log_sa,
            theta=theta,
            max_ln_drift=max_drift,
        )

    def mertens_product(self, x: int) -> DD:
        """prod_{p <= x} p/(p-1)"""
        return self.accumulate(x, LEVEL_PRODUCT).state.product

    def theta(self, x: int) -> DD:
        """Chebyshev theta(x) = sum_{p <= x} ln p"""
        return self.accumulate(x, LEVEL_SB).theta

    def run_sb(
        self,
        x: int,
        mode: str = MODE_ACCELERATED,
        Cb: Optional[DD] = None,
        checkpoint_path: Optional[Union[str, Path]] = None,
        resume: bool = False,
    ) -> SumResult:
        """Sb = Cb + sum_{p<=x} (M(p) - e^gamma ln p)/p^2 + Rb(x), or the raw lower bound"""
        return self._run(KIND_SB, x, mode, Cb, checkpoint_path, resume)

    def run_sa(
        self,
        x: int,
        mode: str = MODE_ACCELERATED,
        Ca: Optional[DD] = None,
        checkpoint_path: Optional[Union[str, Path]] = None,
        resume: bool = False,
    ) -> SumResult:
        """Sa = Ca + sum_{p<=x} w(p) (M(p)^2 - e^(2 gamma) ln^2 p) + Ra(x), or the raw lower bound"""
        return self._run(KIND_SA, x, mode, Ca, checkpoint_path, resume)

    def _run(self, kind, x, mode, constant, checkpoint_path, resume) -> SumResult:
        if mode not in (MODE_RAW, MODE_ACCELERATED):
            raise ConfigurationError(f"mode must be '{MODE_RAW}' or '{MODE_ACCELERATED}', got {mode!r}")

        remainder: Optional[Interval] = None
        if mode == MODE_ACCELERATED:
            # refuse before any sieving
            remainder = rb_bounds(x) if kind == KIND_SB else ra_bounds(x)

        started = time.perf_counter()
        level = LEVEL_SB if kind == KIND_SB else LEVEL_SA
        acc = self.accumulate(x, level, checkpoint_path, resume, kind=kind, mode=mode)
        raw = acc.raw_sb if kind == KIND_SB else acc.raw_sa
        slack = numerical_slack(acc.primes_used)

        if mode == MODE_ACCELERATED:
            if constant is None:
                constants = derived_constants()
                constant = constants.Cb if kind == KIND_SB else constants.Ca
            if kind == KIND_SB:
                partial_sum = (raw - ONE) - CONSTANTS.exp_gamma * acc.log_sb
            else:
                partial_sum = (raw - ONE) - CONSTANTS.exp_2gamma * acc.log_sa
            center = constant + partial_sum
            enclosure = Enclosure(
                lo=dd_nudge(center + remainder.lo - slack, -1),
                hi=dd_nudge(center + remainder.hi + slack, +1),
            )
        else:
            constant = ZERO
            partial_sum = raw
            enclosure = Enclosure(lo=dd_nudge(raw - slack, -1))

        elapsed_ms = int((time.perf_counter() - started) * 1000)
        checkpoint = {}
        if checkpoint_path is not None:
            checkpoint = {"path": str(checkpoint_path), "blocks": acc.blocks, "resumed": bool(resume)}

        result = SumResult(
            kind=kind,
            mode=mode,
            x=x,
            primes_used=acc.primes_used,
            partial=partial_sum,
            constant=constant,
            remainder=remainder,
            enclosure=enclosure,
            state=acc.state,
            numerical_slack=slack,
            elapsed_ms=elapsed_ms,
            checkpoint=checkpoint,
        )
        logger.info(
            f"{kind} {mode} at x = {x}: {acc.primes_used} primes, "
            f"certified '{result.certified_digits()}' in {elapsed_ms} ms"
        )
        return result
