# src/gpfsums/engine/checkpoint.py
"""
Versioned, integrity-hashed checkpoints of a streaming run.

Every binary64 word is stored as its lowercase big-endian hex bit pattern,
so a load reproduces the saved state bit for bit. The sha256 covers the
canonical JSON of every other field.
"""

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Union

from ..errors import CheckpointError
from ..precision import DD
from .results import MertensState, dd_from_record, dd_record


logger = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1
SUM_FIELDS = ("raw_sb", "raw_sa", "log_sb", "log_sa", "theta")


@dataclass(frozen=True)
class Checkpoint:
    kind: str
    mode: str
    x: int
    block_span: int
    anchor_interval: int
    blocks_done: int
    x_processed: int
    primes_used: int
    state: MertensState
    sums: Dict[str, DD]
    max_ln_drift: float = 0.0
    version: int = field(default=CHECKPOINT_VERSION)

    def payload(self) -> Dict[str, Any]:
        return {
            "version": self.version,
            "kind": self.kind,
            "mode": self.mode,
            "x": self.x,
            "block_span": self.block_span,
            "anchor_interval": self.anchor_interval,
            "blocks_done": self.blocks_done,
            "x_processed": self.x_processed,
            "primes_used": self.primes_used,
            "state": self.state.to_dict(),
            "sums": {name: dd_record(self.sums[name]) for name in SUM_FIELDS},
            "max_ln_drift": float(self.max_ln_drift).hex(),
        }

    def check_compatible(self, kind: str, mode: str, x: int, block_span: int, anchor_interval: int):
        """Refuse to resume a run with different parameters"""
        expected = {
            "kind": kind,
            "mode": mode,
            "x": x,
            "block_span": block_span,
            "anchor_interval": anchor_interval,
        }
        found = {name: getattr(self, name) for name in expected}
        mismatched = [name for name in expected if expected[name] != found[name]]
        if mismatched:
            details = ", ".join(f"{n}: saved {found[n]!r}, requested {expected[n]!r}" for n in mismatched)
            logger.warning(f"Resume refused: {details}")
            raise CheckpointError(f"Checkpoint does not match this run ({details})")


def _digest(payload: Dict[str, Any]) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def checkpoint_save(checkpoint: Checkpoint, path: Union[str, Path]) -> Path:
    """
    Write a checkpoint atomically (temporary file, then rename)

    Raises:
        CheckpointError: the path cannot be written
    """
    path = Path(path)
    payload = checkpoint.payload()
    document = dict(payload, sha256=_digest(payload))
    tmp_path = path.with_name(path.name + ".tmp")
    try:
        with open(tmp_path, "w") as f:
            json.dump(document, f, sort_keys=True, indent=2)
            f.write("\n")
        os.replace(tmp_path, path)
    except OSError as e:
        logger.error(f"Failed to write checkpoint {path}: {e}")
        raise CheckpointError(f"Cannot write checkpoint {path}: {e}") from e

    logger.info(
        f"Checkpoint written to {path}: {checkpoint.blocks_done} blocks, x_processed = {checkpoint.x_processed}"
    )
    return path


def checkpoint_load(path: Union[str, Path]) -> Checkpoint:
    """
    Read and verify a checkpoint

    Raises:
        CheckpointError: missing or unreadable file, version or hash mismatch
    """
    path = Path(path)
    if not path.exists():
        logger.error(f"Checkpoint not found: {path}")
        raise CheckpointError(f"Checkpoint not found: {path}")
    try:
        with open(path, "r") as f:
            document = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Failed to read checkpoint {path}: {e}")
        raise CheckpointError(f"Cannot read checkpoint {path}: {e}") from e

    if not isinstance(document, dict) or "sha256" not in document:
        raise CheckpointError(f"Checkpoint {path} has no integrity hash")
    saved_hash = document.pop("sha256")
    if document.get("version") != CHECKPOINT_VERSION:
        logger.warning(f"Resume refused: checkpoint version {document.get('version')}")
        raise CheckpointError(
            f"Checkpoint version {document.get('version')} is not supported (expected {CHECKPOINT_VERSION})"
        )
    if _digest(document) != saved_hash:
        logger.warning(f"Resume refused: hash mismatch in {path}")
        raise CheckpointError(f"Checkpoint {path} failed its integrity check")

    try:
        return Checkpoint(
            kind=document["kind"],
            mode=document["mode"],
            x=int(document["x"]),
            block_span=int(document["block_span"]),
            anchor_interval=int(document["anchor_interval"]),
            blocks_done=int(document["blocks_done"]),
            x_processed=int(document["x_processed"]),
            primes_used=int(document["primes_used"]),
            state=MertensState.from_dict(document["state"]),
            sums={name: dd_from_record(document["sums"][name]) for name in SUM_FIELDS},
            max_ln_drift=float.fromhex(document["max_ln_drift"]),
            version=int(document["version"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise CheckpointError(f"Checkpoint {path} is malformed: {e}") from e
