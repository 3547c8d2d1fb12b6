"""Byte-string primitives: rotations, lexicographic comparison, periods,
and the linear-time / brute-force baselines for minimal string rotation.

Strings are plain ``bytes``; the alphabet is the 256 byte values with their
numeric order.  Smaller alphabets are just byte strings that happen to use
fewer symbol values.

Index conventions
-----------------
The candidate universe of the "minimal length-ell substring" problem on a
string of length n is ``{0, ..., n - ell - 1}``: the final start position
``n - ell`` is deliberately excluded.  Every solver in this package follows
that convention, so ``min_substrings_brute(s, ell)`` requires ``ell < n``.
"""

from __future__ import annotations

import enum
from typing import NamedTuple


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class MinSubstrings(NamedTuple):
    leftmost: int
    rightmost: int
    indices: tuple[int, ...]


def as_bytes(s) -> bytes:
    """Coerce ``str | bytes | bytearray`` to bytes (str is UTF-8 encoded)."""
    if isinstance(s, bytes):
        return s
    if isinstance(s, bytearray):
        return bytes(s)
    if isinstance(s, str):
        return s.encode("utf-8")
    raise TypeError(f"expected bytes-like or str, got {type(s).__name__}")


def rotation(s: bytes, i: int) -> bytes:
    """Rotation of ``s`` starting at index ``i``: ``s[i:] + s[:i]``."""
    n = len(s)
    if not 0 <= i < n:
        raise ValueError(f"rotation index {i} out of range for length {n}")
    return s[i:] + s[:i]


def lex_compare(a: bytes, b: bytes) -> Ordering:
    """Lexicographic comparison; a proper prefix is smaller than its extension."""
    if a == b:
        return Ordering.EQ
    return Ordering.LT if a < b else Ordering.GT


def prefix_function(s: bytes) -> list[int]:
    """KMP prefix function: pi[i] = length of the longest proper border of s[:i+1]."""
    n = len(s)
    pi = [0] * n
    k = 0
    for i in range(1, n):
        c = s[i]
        while k > 0 and c != s[k]:
            k = pi[k - 1]
        if c == s[k]:
            k += 1
        pi[i] = k
    return pi


def period(s: bytes) -> int:
    """Minimal d >= 1 with s[i] == s[i+d] for all i in [n-d].

    Returns n itself when no shorter shift works; a string is "periodic"
    exactly when the returned value is <= n/2.
    """
    n = len(s)
    if n == 0:
        raise ValueError("period of the empty string is undefined")
    return n - prefix_function(s)[n - 1]


def lmsr_booth(s: bytes) -> int:
    """Index of the lexicographically minimal rotation (smallest on ties).

    Booth's failure-function algorithm; O(n) symbol reads.
    """
    n = len(s)
    if n == 0:
        raise ValueError("empty string has no rotations")
    ss = s + s
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = ss[j]
        i = f[j - k - 1]
        while i != -1 and sj != ss[k + i + 1]:
            if sj < ss[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != ss[k + i + 1]:
            if sj < ss[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def lmsr_brute(s: bytes, *, max_n: int = 4096) -> int:
    """Ground-truth oracle: materialize all rotations, return the smallest
    index attaining the minimum.  Capped at ``max_n`` to keep tests honest
    about its quadratic cost."""
    n = len(s)
    if n == 0:
        raise ValueError("empty string has no rotations")
    if n > max_n:
        raise ValueError(f"brute-force oracle capped at n <= {max_n}")
    return min(range(n), key=lambda i: s[i:] + s[:i])


def min_substrings_brute(s: bytes, ell: int) -> MinSubstrings:
    """Exhaustive minimal length-``ell`` substring search over the universe
    ``{0, ..., n - ell - 1}``.

    Returns the leftmost and rightmost minimizing indices plus the full
    index set (sorted).  The last window start ``n - ell`` is not a
    candidate; ``ell == n`` therefore has an empty universe and is an error.
    """
    n = len(s)
    if ell < 1 or ell > n:
        raise ValueError(f"window length {ell} invalid for string of length {n}")
    u = n - ell
    if u == 0:
        raise ValueError("candidate universe {0,...,n-ell-1} is empty for ell == n")
    best = 0
    for i in range(1, u):
        if s[i : i + ell] < s[best : best + ell]:
            best = i
    w = s[best : best + ell]
    indices = tuple(i for i in range(u) if s[i : i + ell] == w)
    return MinSubstrings(indices[0], indices[-1], indices)
