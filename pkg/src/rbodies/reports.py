"""Structured pass/fail verdicts shared by the grid, cone and reach checks."""

from __future__ import annotations

from dataclasses import dataclass, field


class EmptyBodyError(ValueError):
    """Raised when an operation requires a nonempty foreground."""


class NoInteriorError(ValueError):
    """Raised when an operation requires a mask with interior pixels."""


class NotSupportingError(ValueError):
    """Raised when a direction fails the supporting-ball inequality."""


class InputError(ValueError):
    """Malformed file, inconsistent lattice header, or bad parameter."""


def _jsonable(v):
    import numpy as np

    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    return v


@dataclass
class CheckReport:
    """Verdict for one identity / certification check with its evidence."""

    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: dict | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed, "details": _jsonable(self.details)}
        if self.witness is not None:
            d["witness"] = _jsonable(self.witness)
        return d


CERTIFIED = "certified-ge-R"
REFUTED = "refuted"
INCONCLUSIVE_PASS = "inconclusive-pass"
INCONCLUSIVE = "inconclusive"


@dataclass
class ReachReport:
    """Outcome of a reach >= R certification attempt.

    verdict is one of certified-ge-R / refuted / inconclusive-pass /
    inconclusive; a refutation always carries a witness.
    """

    verdict: str
    method: str
    witness: dict | None = None
    flags: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """No refutation found (certified, or sampled without a witness)."""
        return self.verdict != REFUTED

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict, "method": self.method, "flags": _jsonable(self.flags)}
        if self.witness is not None:
            d["witness"] = _jsonable(self.witness)
        return d
