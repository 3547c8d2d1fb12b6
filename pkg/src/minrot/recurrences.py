"""Numeric recurrence laboratory.

Iterates the divide-and-conquer cost recurrences with unit hidden constants
so their asymptotic envelopes become checkable numbers, classifies standard
master-theorem instances, and fits measured ledger totals against the
square-root-times-subexponential shape of the function solver.

Logs are base 2 and clamped below at 1; block counts here are real-valued
(no integer rounding), matching the analysis rather than the solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MasterSolution",
    "FitReport",
    "master_solve",
    "iterate_function_recurrence",
    "verify_limit",
    "iterate_decision_recurrence",
    "fit_scaling",
]


def _lg(x: float) -> float:
    return max(math.log2(x), 1.0)


@dataclass(frozen=True)
class MasterSolution:
    """Growth class O(n**exponent * log(n)**log_power)."""

    case: str  # "root_dominated" | "balanced" | "toll_dominated"
    exponent: float
    log_power: float

    def describe(self) -> str:
        if self.log_power == 0:
            return f"O(n^{self.exponent:g})"
        return f"O(n^{self.exponent:g} log^{self.log_power:g} n)"


def master_solve(a: float, b: float, c: float, p: float) -> MasterSolution:
    """Classify T(n) = a*T(n/b) + O(n^c log^p n)."""
    if a <= 0 or b <= 0 or c <= 0:
        raise ValueError("a, b, c must be positive")
    if b == 1:
        raise ValueError("division factor b must differ from 1")
    if p < 0:
        raise ValueError("log power p must be non-negative")
    crit = math.log(a, b)
    if math.isclose(crit, c, rel_tol=1e-9, abs_tol=1e-12):
        return MasterSolution("balanced", c, p + 1)
    if crit > c:
        return MasterSolution("root_dominated", crit, 0.0)
    return MasterSolution("toll_dominated", c, p)


def _check_pow2(n: int, kmax: int = 48) -> None:
    if n < 1 or n & (n - 1):
        raise ValueError("n must be a power of two")
    if n.bit_length() - 1 > kmax:
        raise ValueError(f"n limited to 2^{kmax}")


def iterate_function_recurrence(
    n: int,
    c: float = 2.0,
    d: float = 2.0,
    n0: float = 64.0,
) -> float:
    """Upper envelope of the function solver's cost recurrence

        T(x) = c * (sqrt(b) * T(x/b) + sqrt(b*x) + sqrt(x * log^3 x * loglog x))

    with real-valued b = 2**(d*sqrt(log2 x)), iterated down to the base
    region T(x) = x for x <= n0.
    """
    _check_pow2(n)
    if c <= 1:
        raise ValueError("recursion constant c must exceed 1")
    if d <= 0:
        raise ValueError("block exponent d must be positive")
    if n0 < 1:
        raise ValueError("base threshold must be >= 1")

    def step(x: float) -> float:
        if x <= n0:
            return x
        b = 2.0 ** (d * math.sqrt(_lg(x)))
        lg = _lg(x)
        toll = math.sqrt(b * x) + math.sqrt(x * lg**3 * _lg(lg))
        return c * (math.sqrt(b) * step(x / b) + toll)

    return step(float(n))


def verify_limit(c: float, n_grid: list[int]) -> list[float]:
    """Ratios r(n) = (b(n / b(n)) + 2*sqrt(b(n))) / b(n) along a grid.

    With d = 2*sqrt(log2 c) the recursion's self-consistency requires the
    ratio to fall below 1/c for large n; its limit is 2**(-d^2/2) = 1/c^2.
    """
    if c <= 1:
        raise ValueError("recursion constant c must exceed 1")
    if not n_grid:
        raise ValueError("empty grid")
    d = 2.0 * math.sqrt(math.log2(c))

    def b(x: float) -> float:
        return 2.0 ** (d * math.sqrt(_lg(x)))

    out = []
    for n in n_grid:
        if n < 2:
            raise ValueError("grid points must be >= 2")
        bn = b(float(n))
        out.append((b(n / bn) + 2.0 * math.sqrt(bn)) / bn)
    return out


def iterate_decision_recurrence(n: int, kind: str = "preprocessed") -> float:
    """Numeric iteration of the decision solver's squared-adversary
    recurrences with unit constants and base T(x) = x for x <= 2.

    ``preprocessed``: T(n) = 2 T(n/2) + n log n     (samples built up front)
    ``plain``:        T(n) = 2 T(n/2) + n log^3 n loglog n
    """
    _check_pow2(n)
    if kind not in ("preprocessed", "plain"):
        raise ValueError("kind must be 'preprocessed' or 'plain'")
    value = 2.0
    total_at = {1: 1.0, 2: 2.0}
    x = 4
    while x <= n:
        lg = _lg(x)
        toll = x * lg if kind == "preprocessed" else x * lg**3 * _lg(lg)
        total_at[x] = 2.0 * total_at[x // 2] + toll
        x *= 2
    return total_at[n]


@dataclass(frozen=True)
class FitReport:
    slope: float
    intercept: float
    r_squared: float
    residual_max: float


def fit_scaling(samples: list[tuple[int, float]]) -> FitReport:
    """Least-squares fit of log2(Q / sqrt(n)) against sqrt(log2 n).

    The slope estimates the subexponential exponent d in
    Q(n) ~ sqrt(n) * 2**(d*sqrt(log2 n)).  Requires at least five samples
    with strictly increasing n.  A perfectly flat series fits exactly with
    slope 0 and r_squared 1.
    """
    if len(samples) < 5:
        raise ValueError("need at least 5 samples")
    ns = [n for n, _ in samples]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("sample sizes must be strictly increasing")
    if any(q <= 0 for _, q in samples):
        raise ValueError("charges must be positive")
    x = np.array([math.sqrt(math.log2(n)) for n in ns])
    y = np.array([math.log2(q / math.sqrt(n)) for n, q in samples])
    if float(np.ptp(y)) < 1e-12:
        resid = float(np.max(np.abs(y - y.mean())))
        return FitReport(0.0, float(y.mean()), 1.0, resid)
    slope, intercept = np.polyfit(x, y, 1)
    yhat = slope * x + intercept
    ss_res = float(np.sum((y - yhat) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return FitReport(
        float(slope), float(intercept), float(r2), float(np.max(np.abs(y - yhat)))
    )
