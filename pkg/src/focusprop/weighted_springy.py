"""Weighted springy FOCUS: the ``(q, l, h)`` table and its filtering.

Cost now counts every covered non-penalizing variable. The third field is
the number of neutral variables inside the last sequence; undetermined
variables covered by a sequence are taken high and never count.
"""
from __future__ import annotations

from typing import NamedTuple, Sequence

from .model import FocusInstance, FocusParams, IntInterval, Status, Variant
from .weighted import INF, DpTable, _budget, _disentailment, bc_core


class DpCell3(NamedTuple):
    q: float
    l: float
    hc: float

    @property
    def dummy(self) -> bool:
        return self.q == INF


DUMMY3 = DpCell3(INF, INF, INF)


def build_dp_wh(xs: Sequence[IntInterval], params: FocusParams, zc_hi: int,
                direction: str = "forward") -> DpTable:
    k, length, tol = params.k, params.length, params.tolerance
    zcu = _budget(xs, k, zc_hi)
    prev = [DUMMY3] * (zcu + 1)
    prev[0] = DpCell3(0, 0, 0)
    cols = [prev]
    for j, x in enumerate(xs):
        col = [DUMMY3] * (zcu + 1)
        top = min(j, zcu)
        if x.lo > k:
            for c in range(top + 1):
                q, l, hc = prev[c]
                if q == INF:
                    continue
                col[c] = DpCell3(q, l + 1, hc) if 1 <= l < length else DpCell3(q + 1, 1, 0)
        else:
            neutral = x.hi <= k
            for c in range(top + 1):
                q = prev[c][0]
                if c > 0:
                    q1, l1, h1 = prev[c - 1]
                    extendable = 1 <= l1 < length and (not neutral or h1 < tol)
                    if extendable and (q1 == q or q == INF):
                        col[c] = DpCell3(q1, l1 + 1, h1 + neutral)
                        continue
                if q != INF:
                    col[c] = DpCell3(q, INF, INF)
        cols.append(col)
        prev = col
    return DpTable(cols, zcu, direction)


def disentailment_wh(inst: FocusInstance) -> Status:
    if inst.params.variant is not Variant.WEIGHTED_SPRINGY:
        raise ValueError("disentailment_wh expects a weighted springy FOCUS instance")
    return _disentailment(inst, build_dp_wh)


def bc_filter_wh(inst: FocusInstance) -> FocusInstance:
    """Bounds consistency on ``X``, ``min(yc)`` and ``min(zc)``.

    Compared with the rigid weighted variant, a low ``x_i`` may also be
    covered when it glues the two side sequences into one, which spends one
    unit of cost and one unit of the low-value tolerance.
    """
    if inst.params.variant is not Variant.WEIGHTED_SPRINGY:
        raise ValueError("bc_filter_wh expects a weighted springy FOCUS instance")
    return bc_core(inst, build_dp_wh, allow_glue_low=True, shortcut=False)
