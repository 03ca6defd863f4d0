"""Exceptions and resource limits shared by the whole engine.

Exit-code contract for the command line harness:
0 = all checks pass, 1 = an identity check failed, 2 = input error,
3 = hypothesis violation, 4 = resource limit exceeded.
"""

import os
from dataclasses import dataclass


class EngineError(Exception):
    """Base class for engine-raised errors."""


class InputError(EngineError):
    """Malformed scenario, polynomial string, or argument (exit code 2)."""


class HypothesisViolation(EngineError):
    """A construction-time invariant failed; carries the invariant name (exit 3)."""

    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        super().__init__(f"hypothesis violation [{invariant}] {detail}".rstrip())


class ResourceLimitError(EngineError):
    """A configured ceiling (degree, basis size, time) was exceeded (exit 4)."""


class ExactDivisionError(EngineError):
    """An exact division failed where the algebra guarantees it; engine bug."""


@dataclass
class Limits:
    """Resource ceilings.  Environment variables EXTQUOT_LIMIT_{DEGREE,GB,SECONDS}
    override the defaults; scenarios may override per run."""

    degree: int = 40
    gb: int = 500
    seconds: float = 60.0

    @staticmethod
    def from_env():
        lim = Limits()
        if "EXTQUOT_LIMIT_DEGREE" in os.environ:
            lim.degree = int(os.environ["EXTQUOT_LIMIT_DEGREE"])
        if "EXTQUOT_LIMIT_GB" in os.environ:
            lim.gb = int(os.environ["EXTQUOT_LIMIT_GB"])
        if "EXTQUOT_LIMIT_SECONDS" in os.environ:
            lim.seconds = float(os.environ["EXTQUOT_LIMIT_SECONDS"])
        return lim


DEFAULT_LIMITS = Limits.from_env()


class WorkCounter:
    """Deterministic work accounting (reduction steps, S-pairs).

    Used in certificates instead of wall-clock timing so that reruns of the
    same scenario are byte-identical.
    """

    def __init__(self):
        self.reductions = 0
        self.spolys = 0

    def snapshot(self):
        return {"reductions": self.reductions, "spolys": self.spolys}


WORK = WorkCounter()
