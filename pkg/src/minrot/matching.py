"""Leftmost/rightmost pattern occurrence search via deterministic samples.

``match_with_ds`` mirrors sample-assisted matching classically: candidate
alignments are pruned by the sample's witness tests (a true occurrence
always passes, so none is lost), and the survivors, at most one per
period-residue within any half-pattern window, are verified in full from
the appropriate end.  ``match_full`` first builds the pattern's sample and
then delegates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ledger import QueryLedger
from .sampling import DeterministicSample, build_ds

__all__ = ["MatchResult", "match_with_ds", "match_full"]


@dataclass(frozen=True)
class MatchResult:
    found: bool
    leftmost: int | None = None
    rightmost: int | None = None


def _validate_sample(ds: DeterministicSample, m: int) -> None:
    if not 0 <= ds.delta < m // 2:
        raise ValueError("sample anchor out of range for this pattern length")
    for i in ds.witnesses:
        if not 0 <= i - ds.delta < m:
            raise ValueError("sample witness out of range for this pattern length")


def match_with_ds(
    text: bytes,
    pattern: bytes,
    ds: DeterministicSample,
    ledger: QueryLedger | None = None,
) -> MatchResult:
    """Extremal occurrences of ``pattern`` in ``text`` given the pattern's
    deterministic sample (which must be valid for the pattern).

    A pattern longer than the text is simply not found.  Structurally
    malformed samples raise; semantic validity is the caller's contract and
    is checkable with :func:`minrot.sampling.verify_ds`.
    """
    n, m = len(text), len(pattern)
    if m < 2:
        raise ValueError("sample-based matching needs pattern length >= 2")
    _validate_sample(ds, m)
    if m > n:
        return MatchResult(False)
    if ledger is not None:
        ledger.charge_ds_match(n, m)

    tarr = np.frombuffer(text, dtype=np.uint8)
    width = n - m + 1
    mask = np.ones(width, dtype=bool)
    for i in ds.witnesses:
        off = i - ds.delta
        mask &= tarr[off : off + width] == pattern[off]
    survivors = np.flatnonzero(mask)
    if survivors.size == 0:
        return MatchResult(False)

    leftmost = None
    for c in survivors:
        c = int(c)
        if text[c : c + m] == pattern:
            leftmost = c
            break
    if leftmost is None:
        return MatchResult(False)
    rightmost = leftmost
    for c in survivors[::-1]:
        c = int(c)
        if c <= leftmost:
            break
        if text[c : c + m] == pattern:
            rightmost = c
            break
    return MatchResult(True, leftmost, rightmost)


def match_full(
    text: bytes,
    pattern: bytes,
    seed: int = 0,
    ledger: QueryLedger | None = None,
) -> MatchResult:
    """End-to-end matching: build the pattern's sample, then search.

    Length-1 patterns bypass sampling (their candidate window would be
    empty) and use a direct scan charged as one Grover-style search.
    """
    n, m = len(text), len(pattern)
    if m == 0:
        raise ValueError("empty pattern")
    if m > n:
        return MatchResult(False)
    if m == 1:
        if ledger is not None:
            ledger.charge_grover(n)
        left = text.find(pattern)
        if left < 0:
            return MatchResult(False)
        return MatchResult(True, left, text.rfind(pattern))
    ds = build_ds(pattern, seed, ledger)
    return match_with_ds(text, pattern, ds, ledger)
