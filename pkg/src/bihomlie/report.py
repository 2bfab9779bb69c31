"""Verification reports.

A report is an ordered list of named checks.  A failing check carries the
first offending basis tuple (lexicographic order on indices, rendered as
basis labels) and the nonzero residual, so every failure can be re-checked by
hand.  Rendering is deterministic.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graded import dense, render_scalar


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: tuple | None = None
    residual: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": "pass" if self.passed else "fail"}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        if self.residual is not None:
            d["residual"] = _render(self.residual)
        if self.detail:
            d["detail"] = self.detail
        return d


def _render(x):
    if isinstance(x, (tuple, list)):
        return [_render(y) for y in x]
    return render_scalar(x)


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    checks: tuple = ()
    notes: tuple = ()

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.overall

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def extend(self, checks: Iterable[Check] = (), notes: Iterable[str] = ()) -> "VerificationReport":
        return VerificationReport(self.subject, self.checks + tuple(checks),
                                  self.notes + tuple(notes))

    def merge(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        checks = tuple(Check(prefix + c.name, c.passed, c.witness, c.residual, c.detail)
                       for c in other.checks)
        return VerificationReport(self.subject, self.checks + checks,
                                  self.notes + other.notes)

    def to_dict(self) -> dict:
        d = {"subject": self.subject,
             "overall": "pass" if self.overall else "fail",
             "checks": [c.to_dict() for c in self.checks]}
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def passed(name: str, detail: str = "") -> Check:
    return Check(name, True, detail=detail)


def failed(name: str, witness=None, residual=None, detail: str = "") -> Check:
    return Check(name, False, witness, residual, detail)


def labels(names: Sequence[str], idx: Iterable[int]) -> tuple:
    return tuple(names[i] for i in idx)


def from_residuals(name: str, residuals: dict, names: Sequence[str], dim: int) -> Check:
    """Check built from a map tuple -> nonzero sparse residual vector."""
    if not residuals:
        return passed(name)
    key = min(residuals)
    return failed(name, labels(names, key), dense(residuals[key], dim))


def thread_count() -> int:
    try:
        n = int(os.environ.get("BIHOMLIE_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def sweep(name: str, keys: Sequence[tuple], residual: Callable, names: Sequence[str],
          render: Callable | None = None) -> Check:
    """Evaluate ``residual`` on each key (in order) and report the first nonzero one.

    ``residual`` returns a falsy value for a passing key.  With
    BIHOMLIE_THREADS > 1 the keys are split into contiguous chunks evaluated
    concurrently; the reported witness is still the first in key order.
    """
    keys = list(keys)
    workers = thread_count()

    def scan(chunk):
        for k in chunk:
            r = residual(k)
            if r:
                return k, r
        return None

    if workers == 1 or len(keys) < 64:
        hit = scan(keys)
    else:
        size = -(-len(keys) // workers)
        chunks = [keys[i:i + size] for i in range(0, len(keys), size)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = list(pool.map(scan, chunks))
        hit = next((h for h in hits if h is not None), None)
    if hit is None:
        return passed(name)
    k, r = hit
    return failed(name, labels(names, k), render(r) if render else r)
