"""Query-cost accounting for the rotation solvers.

The solvers in this package run classically but charge an idealized query
ledger as if their square-root-flavored quantum subroutines (Grover search,
minimum finding on bounded-error comparators, deterministic sampling, and
sample-assisted matching) had been executed.  Charges are pure functions of
the cost model and the arguments, so ledger totals are reproducible and
never influence control flow.

All logarithms are base 2 and every log or log-log factor is clamped below
at 1 so charges stay meaningful at tiny sizes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "CostKind",
    "CostModel",
    "QueryLedger",
    "NoisyComparator",
    "robust_minfind",
    "grover_charge",
    "minfind_charge",
    "ds_build_charge",
    "ds_match_charge",
    "base_scan_charge",
    "BUCKETS",
    "DEFAULT_REPS",
]

BUCKETS = ("grover", "minfind", "ds_build", "ds_match", "base")

# Repetitions per comparison in the classical surrogate of bounded-error
# minimum finding.  41 majority votes push the per-comparison error below
# 1/50 (0.0135 at error rate 1/3), which keeps a log-depth tournament above
# the 2/3 end-to-end success target.
DEFAULT_REPS = 41


class CostKind(enum.Enum):
    QUANTUM_IDEAL = "quantum"
    CLASSICAL = "classical"
    NONE = "none"

    @classmethod
    def from_name(cls, name: str) -> "CostKind":
        for kind in cls:
            if kind.value == name or kind.name == name:
                return kind
        raise ValueError(f"unknown cost model {name!r}")


@dataclass(frozen=True)
class CostModel:
    """Charge constants. c_g: Grover, c_m: minimum finding, c_d: sample
    construction, c_s: sample-assisted matching."""

    kind: CostKind = CostKind.QUANTUM_IDEAL
    c_g: float = 1.0
    c_m: float = 1.0
    c_d: float = 1.0
    c_s: float = 1.0

    def __post_init__(self):
        for name in ("c_g", "c_m", "c_d", "c_s"):
            if getattr(self, name) <= 0:
                raise ValueError(f"cost constant {name} must be positive")

    @classmethod
    def from_name(cls, name: str, **constants) -> "CostModel":
        return cls(kind=CostKind.from_name(name), **constants)


def _log2(x: float) -> float:
    return max(math.log2(x), 1.0)


def grover_charge(model: CostModel, m: int) -> float:
    """Charge for one Grover-style search/comparison over a domain of size m."""
    if m < 1:
        raise ValueError("domain size must be >= 1")
    if model.kind is CostKind.NONE:
        return 0.0
    if model.kind is CostKind.CLASSICAL:
        return model.c_g * m
    return model.c_g * math.ceil(math.sqrt(m))


def minfind_charge(model: CostModel, m: int, per_query_cost: float) -> float:
    """Charge for minimum finding over m items, each comparator query
    costing ``per_query_cost``."""
    if m < 1:
        raise ValueError("item count must be >= 1")
    if per_query_cost < 0:
        raise ValueError("per-query cost must be non-negative")
    if model.kind is CostKind.NONE:
        return 0.0
    if model.kind is CostKind.CLASSICAL:
        return model.c_m * m * per_query_cost
    return model.c_m * math.ceil(math.sqrt(m)) * per_query_cost


def ds_build_charge(model: CostModel, m: int, failure_budget: float) -> float:
    """Charge for constructing a deterministic sample of a length-m pattern
    with modeled failure probability ``failure_budget``."""
    if m < 2:
        raise ValueError("sample construction needs pattern length >= 2")
    if failure_budget <= 0:
        raise ValueError("failure budget must be positive")
    if model.kind is CostKind.NONE:
        return 0.0
    if model.kind is CostKind.CLASSICAL:
        return model.c_d * m
    lg = _log2(m)
    lglg = _log2(lg)
    return model.c_d * math.sqrt(m * lg * lglg) * _log2(max(1.0 / failure_budget, m))


def ds_match_charge(model: CostModel, n: int, m: int) -> float:
    """Charge for finding extremal occurrences of a length-m pattern in a
    length-n text when the pattern's deterministic sample is already known."""
    if not n >= m >= 2:
        raise ValueError("need text length >= pattern length >= 2")
    if model.kind is CostKind.NONE:
        return 0.0
    if model.kind is CostKind.CLASSICAL:
        return model.c_s * n
    return model.c_s * math.sqrt(n * _log2(m))


def base_scan_charge(model: CostModel, m: int) -> float:
    """Charge for a recursion-floor window scan over m positions."""
    if m < 1:
        raise ValueError("scan size must be >= 1")
    if model.kind is CostKind.NONE:
        return 0.0
    if model.kind is CostKind.CLASSICAL:
        return model.c_g * m
    return model.c_g * math.ceil(math.sqrt(m))


class QueryLedger:
    """Mutable tally of modeled oracle queries, partitioned by subroutine kind.

    Single-owner mutable; concurrent runs should use disjoint ledgers and
    merge them afterwards with :meth:`merge`.
    """

    def __init__(self, model: CostModel | None = None):
        self.model = model if model is not None else CostModel()
        self.buckets: dict[str, float] = {k: 0.0 for k in BUCKETS}

    @property
    def total(self) -> float:
        return sum(self.buckets.values())

    def deposit(self, kind: str, amount: float) -> float:
        if kind not in self.buckets:
            raise ValueError(f"unknown charge kind {kind!r}")
        if amount < 0:
            raise ValueError("charges are non-negative")
        self.buckets[kind] += amount
        return amount

    def charge_grover(self, m: int) -> float:
        return self.deposit("grover", grover_charge(self.model, m))

    def charge_minfind(self, m: int, per_query_cost: float) -> float:
        return self.deposit("minfind", minfind_charge(self.model, m, per_query_cost))

    def charge_ds_build(self, m: int, failure_budget: float) -> float:
        return self.deposit("ds_build", ds_build_charge(self.model, m, failure_budget))

    def charge_ds_match(self, n: int, m: int) -> float:
        return self.deposit("ds_match", ds_match_charge(self.model, n, m))

    def charge_base_scan(self, m: int) -> float:
        return self.deposit("base", base_scan_charge(self.model, m))

    def spawn(self) -> "QueryLedger":
        """Fresh empty ledger under the same cost model."""
        return QueryLedger(self.model)

    def merge(self, other: "QueryLedger") -> None:
        for k, v in other.buckets.items():
            self.buckets[k] += v

    def snapshot(self) -> dict[str, float]:
        out = dict(self.buckets)
        out["total"] = self.total
        return out


class NoisyComparator:
    """Bounded-error wrapper around an exact comparator.

    ``exact(i, j)`` must return 1 iff item i orders strictly before item j.
    Each :meth:`compare` invocation independently returns the exact bit with
    probability exactly ``p`` (flipped otherwise), drawn from the supplied
    generator, so runs are reproducible under a fixed seed.  ``p = 1`` is
    the noiseless limit and consumes no randomness.
    """

    def __init__(
        self,
        exact: Callable[[int, int], int],
        p: float = 1.0,
        rng: np.random.Generator | None = None,
    ):
        if not 2 / 3 <= p <= 1:
            raise ValueError("success probability must lie in [2/3, 1]")
        if p < 1 and rng is None:
            raise ValueError("a seeded generator is required when p < 1")
        self.exact = exact
        self.p = p
        self.rng = rng

    def compare(self, i: int, j: int) -> int:
        bit = 1 if self.exact(i, j) else 0
        if self.p >= 1.0:
            return bit
        if self.rng.random() >= self.p:
            bit ^= 1
        return bit

    def compare_majority(self, i: int, j: int, reps: int) -> int:
        """Majority vote over ``reps`` independent noisy invocations."""
        bit = 1 if self.exact(i, j) else 0
        if self.p >= 1.0:
            return bit
        flips = int(np.count_nonzero(self.rng.random(reps) >= self.p))
        votes_for_bit = reps - flips
        return bit if votes_for_bit * 2 > reps else bit ^ 1


def robust_minfind(
    items: Sequence[int],
    cmp: NoisyComparator,
    ledger: QueryLedger | None = None,
    per_query_cost: float = 1.0,
    *,
    reps: int = DEFAULT_REPS,
    modeled_count: int | None = None,
) -> int:
    """Minimum finding on a bounded-error comparator.

    Classical surrogate: a single-elimination tournament whose matches are
    decided by a majority of ``reps`` noisy comparisons; the left participant
    survives ties, which preserves leftmost-minimum semantics when the
    comparator is exact.  The ledger is charged the modeled square-root cost
    regardless of the surrogate's actual work.
    """
    if len(items) == 0:
        raise ValueError("cannot take the minimum of no items")
    if reps < 1 or reps % 2 == 0:
        raise ValueError("repetition count must be a positive odd integer")
    if ledger is not None:
        ledger.charge_minfind(
            modeled_count if modeled_count is not None else len(items),
            per_query_cost,
        )
    ring = list(items)
    while len(ring) > 1:
        nxt = []
        for a, b in zip(ring[0::2], ring[1::2]):
            nxt.append(b if cmp.compare_majority(b, a, reps) else a)
        if len(ring) % 2:
            nxt.append(ring[-1])
        ring = nxt
    return ring[0]
