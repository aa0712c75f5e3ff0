"""Brute-force ground truth for small instances.

Nothing here shares code with the dynamic programs: instantiations are
enumerated over domain bounds, covers by plain recursion over sequence end
points, and bounds consistency by checking every bound against every
enumerated solution.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Optional

from .model import Cover, FocusInstance, FocusParams, Infeasible, IntInterval, Variant

DEFAULT_CAP = 12
DEFAULT_CLOSURE_CAP = 10


def enumerate_instantiations(inst: FocusInstance, cap: int = DEFAULT_CAP) -> Iterator[tuple[int, ...]]:
    """Yield every assignment taking each ``x_l`` at its lower or upper bound."""
    if inst.n > cap:
        raise ValueError(f"n={inst.n} exceeds the oracle cap {cap}")
    choices = [(x.lo,) if x.lo == x.hi else (x.lo, x.hi) for x in inst.xs]
    yield from itertools.product(*choices)


def _pareto(points) -> frozenset:
    pts = sorted(set(points))
    front = []
    best_w = None
    for q, w in pts:
        if best_w is None or w < best_w:
            front.append((q, w))
            best_w = w
    return frozenset(front)


@lru_cache(maxsize=None)
def _covers_of_pattern(high: tuple[bool, ...], length: int, tolerance: int, rigid: bool) -> tuple[Cover, ...]:
    n = len(high)
    out: list[Cover] = []

    def rec(pos: int, acc: list):
        if pos >= n:
            out.append(Cover(tuple(acc)))
            return
        if not high[pos]:
            rec(pos + 1, acc)
            return
        lows = 0
        for end in range(pos, min(n, pos + length)):
            if not high[end]:
                if rigid:
                    break
                lows += 1
                if lows > tolerance:
                    break
                continue
            acc.append((pos, end))
            rec(end + 1, acc)
            acc.pop()

    rec(0, [])
    return tuple(out)


def all_covers(assignment, params: FocusParams) -> tuple[Cover, ...]:
    """Every valid cover of a full assignment, ignoring the yc/zc budgets.

    Each sequence starts on a high value (forced: highs must be covered and
    sequences may not start low), then every admissible end point is tried.
    """
    high = tuple(v > params.k for v in assignment)
    return _covers_of_pattern(high, params.length, params.tolerance, not params.variant.springy)


@lru_cache(maxsize=None)
def _pareto_of_pattern(high: tuple[bool, ...], length: int, tolerance: int, rigid: bool) -> frozenset:
    return _pareto((len(c), c.weight) for c in _covers_of_pattern(high, length, tolerance, rigid))


def best_covers(assignment, params: FocusParams) -> frozenset:
    """Pareto-minimal ``(cardinality, total length)`` pairs over all valid covers."""
    high = tuple(v > params.k for v in assignment)
    return _pareto_of_pattern(high, params.length, params.tolerance, not params.variant.springy)


def dumb_best_covers(assignment, params: FocusParams) -> frozenset:
    """Same contract as :func:`best_covers` by labelling every position
    uncovered / starts-a-sequence / continues-a-sequence (3^n labellings) and
    filtering with the generic cover checker. Only practical for n <= 7."""
    from .model import cover_violation

    n = len(assignment)
    probe = FocusInstance(
        xs=tuple(IntInterval.fixed(v) for v in assignment),
        yc=IntInterval(0, n + 1),
        params=params,
        zc=IntInterval(0, n + 1) if params.variant.weighted else None,
    )
    pts = []
    for labels in itertools.product((0, 1, 2), repeat=n):
        seqs = []
        ok = True
        for l, lab in enumerate(labels):
            if lab == 1:
                seqs.append([l, l])
            elif lab == 2:
                if not seqs or seqs[-1][1] != l - 1:
                    ok = False
                    break
                seqs[-1][1] = l
        if not ok:
            continue
        cover = Cover(tuple(tuple(s) for s in seqs))
        if cover_violation(probe, assignment, cover) is None:
            pts.append((len(cover), cover.weight))
    return _pareto(pts)


def _fits(pairs, y_hi: int, z_hi: Optional[int]) -> bool:
    return any(q <= y_hi and (z_hi is None or w <= z_hi) for q, w in pairs)


def solutions(inst: FocusInstance, cap: int = DEFAULT_CAP):
    """Yield ``(assignment, pareto pairs)`` for every bound instantiation that
    admits a cover within ``max(yc)`` and ``max(zc)``."""
    z_hi = inst.zc.hi if inst.zc is not None else None
    for a in enumerate_instantiations(inst, cap):
        pairs = best_covers(a, inst.params)
        if _fits(pairs, inst.yc.hi, z_hi):
            yield a, pairs


def bc_closure(inst: FocusInstance, cap: int = DEFAULT_CLOSURE_CAP) -> FocusInstance:
    """Bounds-consistent closure of ``inst`` by exhaustive support search.

    Upper bounds of ``yc`` and ``zc`` are budgets and stay put whenever any
    solution exists.
    """
    if inst.n > cap:
        raise ValueError(f"n={inst.n} exceeds the closure cap {cap}")
    k = inst.k
    while True:
        y_hi = inst.yc.hi
        z_hi = inst.zc.hi if inst.zc is not None else None
        sols = list(solutions(inst, cap))
        if not sols:
            raise Infeasible("no instantiation admits a cover")
        xs = []
        for l, x in enumerate(inst.xs):
            low = x.can_be_low(k) and any(a[l] <= k for a, _ in sols)
            high = x.can_be_high(k) and any(a[l] > k for a, _ in sols)
            if low and high:
                xs.append(x)
            elif low:
                xs.append(x.low_part(k))
            elif high:
                xs.append(x.high_part(k))
            else:  # pragma: no cover - sols non-empty implies some class
                raise Infeasible(f"x{l} lost every value")
        min_q = min(q for _, pairs in sols for q, w in pairs if z_hi is None or w <= z_hi)
        yc = inst.yc.raise_lo(min_q)
        zc = inst.zc
        if zc is not None:
            min_w = min(w for _, pairs in sols for q, w in pairs if q <= y_hi)
            zc = zc.raise_lo(min_w)
            if zc.is_empty:
                raise Infeasible("zc emptied")
        if yc.is_empty:
            raise Infeasible("yc emptied")
        out = inst.with_domains(xs=xs, yc=yc, zc=zc)
        if out == inst:
            return out
        inst = out


def is_feasible(inst: FocusInstance, cap: int = DEFAULT_CAP) -> bool:
    return next(solutions(inst, cap), None) is not None


def min_cardinality(inst: FocusInstance, cap: int = DEFAULT_CAP) -> Optional[int]:
    """Smallest cover size over all bound instantiations, ignoring budgets."""
    best = None
    for a in enumerate_instantiations(inst, cap):
        for q, _ in best_covers(a, inst.params):
            best = q if best is None else min(best, q)
    return best


def pareto_frontier(points) -> list[tuple[int, int]]:
    """Non-dominated ``(yc, zc)`` points, sorted by ``yc``."""
    return sorted(_pareto(points))


def rentals_frontier(xs, params: FocusParams, windows, cap: int = DEFAULT_CAP) -> list[tuple[int, int]]:
    """Exhaustive ``(yc, zc)`` frontier for a rentals instance.

    ``windows`` holds ``(start, end, lo, hi)`` tuples with inclusive ends; an
    assignment qualifies when each window has between ``lo`` and ``hi`` values
    above ``k``.
    """
    if len(xs) > cap:
        raise ValueError(f"n={len(xs)} exceeds the oracle cap {cap}")
    k = params.k
    choices = [(x.lo,) if x.lo == x.hi else (x.lo, x.hi) for x in xs]
    pts = []
    for a in itertools.product(*choices):
        if all(lo <= sum(v > k for v in a[s:e + 1]) <= hi for s, e, lo, hi in windows):
            pts.extend(best_covers(a, params))
    if not pts:
        raise Infeasible("rentals instance is unsatisfiable")
    return pareto_frontier(pts)
