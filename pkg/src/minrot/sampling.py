"""Deterministic samples: construction and verification.

A deterministic sample of a string s of length n and period d is a tuple
``(delta; i_0, ..., i_{l-1})`` with

1. ``0 <= delta < floor(n/2)``,
2. ``i_k - delta in [0, n)`` for every witness ``i_k``,
3. for every shift ``j in [0, floor(n/2))`` with ``j != delta (mod d)``
   there is a witness with ``i_k - j in [0, n)`` and
   ``s[i_k - j] != s[i_k - delta]``.

Witness positions live on a shared coordinate line on which a copy of s
shifted by ``j`` occupies ``[j, j + n)``; condition 3 says the witnesses
eliminate every candidate shift in the half-open window except those
congruent to ``delta`` modulo the period.  Samples of logarithmic size
always exist, and ``build_ds`` constructs one with
``l <= 2*ceil(log2 n) + 2`` by pairwise candidate elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ledger import QueryLedger
from .strings import period

__all__ = ["DeterministicSample", "size_cap", "verify_ds", "build_ds"]


@dataclass(frozen=True)
class DeterministicSample:
    delta: int
    witnesses: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.witnesses)

    def to_dict(self) -> dict:
        return {"delta": self.delta, "witnesses": list(self.witnesses)}

    @classmethod
    def from_dict(cls, d: dict) -> "DeterministicSample":
        return cls(int(d["delta"]), tuple(int(w) for w in d["witnesses"]))


def size_cap(n: int) -> int:
    """Concrete witness-count bound guaranteed by build_ds."""
    return 2 * math.ceil(math.log2(n)) + 2


def verify_ds(s: bytes, ds: DeterministicSample) -> bool:
    """Exhaustively check the three sample conditions.

    Malformed witness indices make condition 2 fail and yield False rather
    than raising.
    """
    n = len(s)
    if n < 2:
        raise ValueError("deterministic samples need n >= 2")
    half = n // 2
    if not 0 <= ds.delta < half:
        return False
    for i in ds.witnesses:
        if not 0 <= i - ds.delta < n:
            return False
    d = period(s)
    arr = np.frombuffer(s, dtype=np.uint8)
    j = np.arange(half)
    must_eliminate = (j % d) != (ds.delta % d)
    if not must_eliminate.any():
        return True
    eliminated = np.zeros(half, dtype=bool)
    for i in ds.witnesses:
        pos = i - j
        readable = (pos >= 0) & (pos < n)
        hit = np.zeros(half, dtype=bool)
        hit[readable] = arr[pos[readable]] != s[i - ds.delta]
        eliminated |= hit
    return bool(np.all(eliminated[must_eliminate]))


def build_ds(
    s: bytes,
    seed: int = 0,
    ledger: QueryLedger | None = None,
    failure_budget: float | None = None,
) -> DeterministicSample:
    """Construct a deterministic sample of ``s``.

    Candidate shifts start as the full window ``[0, floor(n/2))``.  Each
    round locates a shared coordinate, readable by every surviving
    candidate, at which the candidates' copies of s do not all read the
    same symbol; that coordinate is recorded as a witness and only the
    smallest symbol class there is kept (ties broken toward the class
    holding the smallest shift).  Keeping the smallest class at least
    halves the candidate set, so at most ``ceil(log2(n/2))`` witnesses are
    recorded.  The surviving shifts are exactly one residue class mod the
    period and ``delta`` is their minimum; since every witness lies in
    ``[max C, min C + n)`` for the candidates C of its round, every
    survivor (delta in particular) can read every witness.

    Such a coordinate always exists while candidates span more than one
    residue class, and duelling the extreme candidates (falling back to the
    largest non-congruent one when the extremes are congruent) finds it:
    if a duel saw only agreement on the shared window, the disagreeing
    shift difference would be a full period of s that is not a multiple of
    the minimal period, which the periodicity lemma rules out.

    The construction is exact and deterministic; ``seed`` is accepted for
    interface uniformity with the randomized procedure being modeled, and
    ``failure_budget`` (default ``1/n``) only affects the modeled charge.
    """
    n = len(s)
    if n < 2:
        raise ValueError("deterministic samples need n >= 2")
    if failure_budget is None:
        failure_budget = 1.0 / n
    if ledger is not None:
        ledger.charge_ds_build(n, failure_budget)

    d = period(s)
    arr = np.frombuffer(s, dtype=np.uint8)
    cands = np.arange(n // 2, dtype=np.int64)
    witnesses: list[int] = []

    def duel(x: int, y: int, alpha: int, beta: int) -> int | None:
        # First coordinate of [beta, alpha + n) where the copies shifted by
        # x and y (x < y <= beta, alpha <= x) read different symbols.
        width = n + alpha - beta
        neq = arr[beta - x : beta - x + width] != arr[beta - y : beta - y + width]
        off = int(np.argmax(neq))
        if not neq[off]:
            return None
        return beta + off

    while True:
        res = cands % d
        alive = res != res[0]
        if not alive.any():
            break
        alpha = int(cands[0])
        beta = int(cands[-1])
        if (beta - alpha) % d != 0:
            u = duel(alpha, beta, alpha, beta)
        else:
            cstar = int(cands[alive][-1])
            u = duel(alpha, cstar, alpha, beta)
            if u is None:
                u = duel(cstar, beta, alpha, beta)
        if u is None:
            raise AssertionError("non-congruent candidates must disagree on the shared window")
        readings = arr[u - cands]
        values, counts = np.unique(readings, return_counts=True)
        tied = values[counts == counts.min()]
        if len(tied) == 1:
            keep_val = tied[0]
        else:
            keep_val = min(tied, key=lambda v: int(cands[readings == v][0]))
        cands = cands[readings == keep_val]
        witnesses.append(u)
    return DeterministicSample(int(cands[0]), tuple(witnesses))
