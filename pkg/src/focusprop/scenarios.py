"""Reproducible instance generators and the small scheduling toy."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .model import FocusInstance, FocusParams, IntInterval, Variant
from .solver import AmongSpec, RentalsInstance

BOOL_DOMAINS = (IntInterval(0, 0), IntInterval(1, 1), IntInterval(0, 1))


def random_instance(rng: random.Random, variant: Variant, n_max: int = 8, k: int = 0) -> FocusInstance:
    """Domains drawn from ``{[0,0],[1,1],[0,1]}`` shifted by ``k``; random len, h and budgets."""
    lo_n = 2 if variant.springy else 1
    n = rng.randint(lo_n, max(lo_n, n_max))
    xs = tuple(IntInterval(d.lo + k, d.hi + k) for d in (rng.choice(BOOL_DOMAINS) for _ in range(n)))
    length = rng.randint(lo_n, n)
    h = rng.randint(0, length - 2) if variant.springy else 0
    a, b = rng.randint(0, n), rng.randint(0, n)
    yc = IntInterval(min(a, b), max(a, b))
    zc = None
    if variant.weighted:
        c, d = rng.randint(0, n + 1), rng.randint(0, n + 1)
        zc = IntInterval(min(c, d), max(c, d))
    return FocusInstance(xs, yc, FocusParams(k, length, h, variant), zc)


def random_corpus(seed: int, variant: Variant, count: int, n_max: int = 8) -> list[FocusInstance]:
    rng = random.Random(f"{seed}:{variant.value}")
    return [random_instance(rng, variant, n_max) for _ in range(count)]


def random_rentals(seed: int, n: int = 10, length: int = 4, h: int = 1,
                   min_windows: int = 2, p_window: float = 0.5, min_span: int = 3,
                   max_tries: int = 1000) -> RentalsInstance:
    """Random AMONG windows over a horizon of ``n`` days; retried until satisfiable.

    Each window ``[s, e]`` with ``e >= s + min_span`` is kept with probability
    ``p_window``; its demand interval is drawn inside ``[0, e - s + 1]``.
    """
    from . import oracle

    rng = random.Random(seed)
    params = FocusParams(0, length, h, Variant.WEIGHTED_SPRINGY)
    for _ in range(max_tries):
        ambits = []
        for s in range(n):
            for e in range(s + min_span, n):
                if rng.random() < p_window:
                    size = e - s + 1
                    lo = rng.randint(0, size // 2)
                    hi = rng.randint(lo, min(size, lo + size // 2))
                    ambits.append(AmongSpec(s, e, lo, hi))
        if len(ambits) < min_windows:
            continue
        inst = RentalsInstance(n, length, h, tuple(ambits))
        try:
            oracle.rentals_frontier(inst.domains(), params, [(a.start, a.end, a.lo, a.hi) for a in ambits])
        except oracle.Infeasible:
            continue
        return inst
    raise RuntimeError("no satisfiable rentals instance found")


# --- scheduling toy ----------------------------------------------------------

@dataclass(frozen=True)
class SchedulingToy:
    """One machine of capacity ``capacity`` over ``horizon`` days with a fixed base
    load; one extra activity of ``duration`` days must start in ``starts``.

    Day ``t`` needs a rented machine when the load exceeds the capacity.
    """

    base_load: tuple[int, ...] = (2, 1, 2, 1, 1, 0, 0, 0, 0, 0)
    capacity: int = 1
    duration: int = 5
    starts: tuple[int, ...] = (1, 2, 3, 4, 5)

    @property
    def horizon(self) -> int:
        return len(self.base_load)

    def excess(self, start: int) -> tuple[int, ...]:
        """Per-day overload when the activity occupies days ``start .. start+duration-1`` (0-based)."""
        load = list(self.base_load)
        for t in range(start, min(self.horizon, start + self.duration)):
            load[t] += 1
        return tuple(max(0, v - self.capacity) for v in load)

    def instance(self, start: int, length: int, h: int = 0, yc: IntInterval = IntInterval(1, 1),
                 variant: Optional[Variant] = None, zc: Optional[IntInterval] = None) -> FocusInstance:
        """Fixed 0/1 overload flags for one start date."""
        variant = variant or (Variant.SPRINGY if h > 0 else Variant.FOCUS)
        if variant.weighted and zc is None:
            zc = IntInterval(0, self.horizon)
        xs = tuple(IntInterval.fixed(min(v, 1)) for v in self.excess(start))
        return FocusInstance(xs, yc, FocusParams(0, length, h, variant), zc)


def counterexample_instance() -> FocusInstance:
    """Five variables where the decomposition of weighted FOCUS misses a pruning."""
    I = IntInterval
    xs = (I(1, 1), I(0, 1), I(1, 1), I(0, 0), I(0, 1))
    return FocusInstance(xs, I(2, 2), FocusParams(0, 3, 0, Variant.WEIGHTED), I(0, 3))


def table_example(yc: IntInterval = IntInterval(2, 2)) -> FocusInstance:
    """Eight variables, len 5, total length exactly 7; reused by the DP table tests."""
    I = IntInterval
    xs = (I(1, 1), I(0, 1), I(1, 1), I(1, 1), I(0, 1), I(1, 1), I(0, 1), I(1, 1))
    return FocusInstance(xs, yc, FocusParams(0, 5, 0, Variant.WEIGHTED), I(7, 7))


def bi_objective_example() -> FocusInstance:
    """Six variables where fewest sequences and least total length disagree."""
    I = IntInterval
    xs = (I(1, 1), I(0, 1), I(1, 1), I(1, 1), I(0, 1), I(1, 1))
    return FocusInstance(xs, I(0, 6), FocusParams(0, 3, 0, Variant.WEIGHTED), I(0, 6))
