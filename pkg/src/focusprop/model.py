"""Domains, instances and covers shared by the propagators, the oracle and the solver."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence


class Infeasible(Exception):
    """Raised when filtering wipes out a domain or proves the constraint unsatisfiable."""


class Disentailed(Infeasible):
    """Raised by the table builders when the cost budget is already negative."""


class Status(enum.Enum):
    FEASIBLE = "feasible"
    DISENTAILED = "disentailed"


@dataclass(frozen=True, order=True)
class IntInterval:
    """Closed integer interval ``[lo, hi]``.

    Any ``lo > hi`` pair is normalised to the canonical empty interval ``(1, 0)``
    so that emptiness compares equal regardless of how it was produced.
    """

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi and (self.lo, self.hi) != (1, 0):
            object.__setattr__(self, "lo", 1)
            object.__setattr__(self, "hi", 0)

    @classmethod
    def empty(cls) -> "IntInterval":
        return cls(1, 0)

    @classmethod
    def fixed(cls, v: int) -> "IntInterval":
        return cls(v, v)

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def is_fixed(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def __len__(self) -> int:
        return 0 if self.is_empty else self.hi - self.lo + 1

    def __repr__(self) -> str:
        if self.is_empty:
            return "[]"
        return f"[{self.lo},{self.hi}]"

    def issubset(self, other: "IntInterval") -> bool:
        return self.is_empty or (other.lo <= self.lo and self.hi <= other.hi)

    def intersect(self, other: "IntInterval") -> "IntInterval":
        return IntInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def raise_lo(self, v: int) -> "IntInterval":
        return self if v <= self.lo else IntInterval(v, self.hi)

    def lower_hi(self, v: int) -> "IntInterval":
        return self if v >= self.hi else IntInterval(self.lo, v)

    # threshold views
    def can_be_low(self, k: int) -> bool:
        return not self.is_empty and self.lo <= k

    def can_be_high(self, k: int) -> bool:
        return not self.is_empty and self.hi > k

    def low_part(self, k: int) -> "IntInterval":
        return self.lower_hi(k)

    def high_part(self, k: int) -> "IntInterval":
        return self.raise_lo(k + 1)


class VarLabel(enum.Enum):
    PENALIZING = "P"
    NEUTRAL = "N"
    UNDETERMINED = "U"


def label(x: IntInterval, k: int) -> VarLabel:
    if x.is_empty:
        raise ValueError("cannot label an empty domain")
    if x.lo > k:
        return VarLabel.PENALIZING
    if x.hi <= k:
        return VarLabel.NEUTRAL
    return VarLabel.UNDETERMINED


class Variant(enum.Enum):
    FOCUS = "focus"
    SPRINGY = "springy"
    WEIGHTED = "focusw"
    WEIGHTED_SPRINGY = "focuswh"

    @property
    def weighted(self) -> bool:
        return self in (Variant.WEIGHTED, Variant.WEIGHTED_SPRINGY)

    @property
    def springy(self) -> bool:
        return self in (Variant.SPRINGY, Variant.WEIGHTED_SPRINGY)


@dataclass(frozen=True)
class FocusParams:
    k: int
    length: int
    h: int = 0
    variant: Variant = Variant.FOCUS

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"len must be >= 1, got {self.length}")
        if self.variant.springy:
            if not 0 <= self.h <= self.length - 2:
                raise ValueError(f"h must satisfy 0 <= h <= len-2, got h={self.h}, len={self.length}")
        elif self.h != 0:
            raise ValueError(f"h must be 0 for variant {self.variant.value}")

    @property
    def tolerance(self) -> int:
        """Low values tolerated per sequence; 0 for the rigid variants."""
        return self.h if self.variant.springy else 0


@dataclass(frozen=True)
class FocusInstance:
    xs: tuple[IntInterval, ...]
    yc: IntInterval
    params: FocusParams
    zc: Optional[IntInterval] = None

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(self.xs))
        n = len(self.xs)
        if n < 1:
            raise ValueError("an instance needs at least one variable")
        if self.params.length > n:
            raise ValueError(f"len={self.params.length} exceeds n={n}")
        if any(x.is_empty for x in self.xs) or self.yc.is_empty:
            raise ValueError("domains must be non-empty on construction")
        if self.params.variant.weighted:
            if self.zc is None or self.zc.is_empty:
                raise ValueError("weighted variants need a non-empty zc")
        elif self.zc is not None:
            raise ValueError("zc only applies to weighted variants")

    @property
    def n(self) -> int:
        return len(self.xs)

    @property
    def k(self) -> int:
        return self.params.k

    def labels(self) -> list[VarLabel]:
        return [label(x, self.params.k) for x in self.xs]

    def n_penalizing(self) -> int:
        k = self.params.k
        return sum(1 for x in self.xs if x.lo > k)

    def with_domains(self, xs=None, yc=None, zc=None) -> "FocusInstance":
        return replace(
            self,
            xs=self.xs if xs is None else tuple(xs),
            yc=self.yc if yc is None else yc,
            zc=self.zc if zc is None else zc,
        )

    def domains(self) -> tuple:
        """Hashable snapshot of every domain, used to compare filtering results."""
        return (self.xs, self.yc, self.zc)

    def is_subsumed_by(self, other: "FocusInstance") -> bool:
        """True when every domain of ``self`` is contained in the matching domain of ``other``."""
        if not all(a.issubset(b) for a, b in zip(self.xs, other.xs)):
            return False
        if not self.yc.issubset(other.yc):
            return False
        return self.zc is None or self.zc.issubset(other.zc)


@dataclass(frozen=True)
class Cover:
    """Disjoint index sequences ``(i, j)``, inclusive, sorted by start."""

    seqs: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "seqs", tuple(tuple(s) for s in self.seqs))

    def __len__(self) -> int:
        return len(self.seqs)

    def __iter__(self):
        return iter(self.seqs)

    @property
    def weight(self) -> int:
        return sum(j - i + 1 for i, j in self.seqs)

    def covered(self) -> set[int]:
        return {l for i, j in self.seqs for l in range(i, j + 1)}


def cover_violation(inst: FocusInstance, assignment: Sequence[int], cover: Cover) -> Optional[str]:
    """Return ``None`` if ``cover`` witnesses the constraint for ``assignment``.

    Otherwise the returned string names the failing condition, numbered as in
    the definition of the instance's variant (``"structure"`` for covers that
    are not sorted, disjoint, in-range sequences).
    """
    n, p = inst.n, inst.params
    k, variant = p.k, p.variant
    if len(assignment) != n:
        raise ValueError("assignment length differs from n")
    for v, x in zip(assignment, inst.xs):
        if v not in x:
            raise ValueError(f"value {v} outside domain {x}")

    prev_end = -1
    for i, j in cover:
        if not (0 <= i <= j < n) or i <= prev_end:
            return "structure: sequences must be in range, sorted and disjoint"
        prev_end = j

    high = [v > k for v in assignment]
    covered = cover.covered()
    lows_ok = all(
        sum(1 for l in range(i, j + 1) if not high[l]) <= p.tolerance for i, j in cover
    )
    lengths_ok = all(j - i + 1 <= p.length for i, j in cover)
    ends_ok = all(high[i] and high[j] for i, j in cover)
    card_ok = len(cover) <= inst.yc.hi
    implies_ok = all(l in covered for l in range(n) if high[l])
    biconditional_ok = implies_ok and all(high[l] for l in covered)

    if variant is Variant.FOCUS:
        checks = [("1", card_ok), ("2", biconditional_ok), ("3", lengths_ok)]
    elif variant is Variant.SPRINGY:
        checks = [("1", card_ok), ("2", implies_ok), ("3", lengths_ok and ends_ok), ("4", lows_ok)]
    elif variant is Variant.WEIGHTED:
        checks = [("1", card_ok), ("2", biconditional_ok), ("3", lengths_ok),
                  ("4", cover.weight <= inst.zc.hi)]
    else:
        checks = [("1", card_ok), ("2", implies_ok), ("3", lows_ok), ("4", lengths_ok and ends_ok),
                  ("5", cover.weight <= inst.zc.hi)]
    for name, ok in checks:
        if not ok:
            return f"condition {name}"
    return None


def cover_is_valid(inst: FocusInstance, assignment: Sequence[int], cover: Cover) -> bool:
    return cover_violation(inst, assignment, cover) is None
