# src/gpfsums/errors.py
"""
Exception hierarchy for the gpfsums package.
Each class carries the exit code the command line reports for it.
"""

from typing import Optional


class GpfSumsError(Exception):
    """Base class for every failure raised by the package"""

    exit_code = 1


class ConfigurationError(GpfSumsError):
    """Invalid flags, settings or segment plans"""

    exit_code = 2


class PreconditionError(GpfSumsError):
    """Argument outside the range where a result is proven or defined"""

    exit_code = 3


class OracleMemoryError(PreconditionError):
    """Requested table would exceed the configured memory cap"""

    def __init__(self, message: str, advisory: str):
        super().__init__(f"{message} ({advisory})")
        self.advisory = advisory


class CheckpointError(GpfSumsError):
    """Checkpoint cannot be written, read or trusted"""

    exit_code = 4


class ComputationError(GpfSumsError):
    """Numerical computation failed to meet its contract"""

    exit_code = 1


class PrecisionError(ComputationError):
    """Double-word kernel produced a non-finite value"""


class ConvergenceError(ComputationError):
    """Euler-Maclaurin error bound above the requested tolerance"""


class TruncationError(ComputationError):
    """Moebius series needs more terms than configured"""

    def __init__(self, message: str, required_k_max: Optional[int] = None):
        super().__init__(message)
        self.required_k_max = required_k_max


class FitError(ComputationError):
    """Asymptote fit could not be determined from the data"""


class RunInterrupted(GpfSumsError):
    """Streaming run halted on request after writing a checkpoint"""

    def __init__(self, message: str, blocks_done: int):
        super().__init__(message)
        self.blocks_done = blocks_done
