"""Weighted FOCUS: cost-indexed dynamic program, disentailment and bounds consistency.

Cell ``f[c][j]`` describes the best cover of prefix ``[x_0..x_j]`` covering
every penalizing variable with exactly ``c`` undetermined variables covered:
``q`` sequences, the last one of length ``l`` (``INF`` when it does not reach
``j``). Cells are compared on ``(q, l)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .model import Disentailed, FocusInstance, FocusParams, Infeasible, IntInterval, Status, Variant

INF = math.inf


class DpCell(NamedTuple):
    q: float
    l: float

    @property
    def dummy(self) -> bool:
        return self.q == INF


DUMMY = DpCell(INF, INF)


@dataclass
class DpTable:
    """Rows ``c in [0, zcU]`` (row -1 implicit dummy), columns ``j in [-1, n-1]``.

    ``cols[j + 1][c]`` holds cell ``(c, j)``. Cells may be :class:`DpCell` or
    triples from the weighted springy variant.
    """

    cols: list
    zcu: int
    direction: str = "forward"

    @property
    def n(self) -> int:
        return len(self.cols) - 1

    def cell(self, c: int, j: int):
        if c < 0 or c > self.zcu:
            proto = self.cols[0][0]
            return type(proto)(*([INF] * len(proto)))
        return self.cols[j + 1][c]

    def column(self, j: int) -> list:
        return self.cols[j + 1]

    def top(self, j: int) -> int:
        """Largest non-dummy row of column ``j``; rows ``0..top`` are non-dummy."""
        col = self.cols[j + 1]
        c = len(col) - 1
        while col[c][0] == INF:
            c -= 1
        return c

    def dump(self, xs: Sequence[IntInterval] | None = None) -> str:
        """Aligned text: one row per cost, one column per variable, dummies blank."""
        fmt = lambda v: "∞" if v == INF else str(int(v))
        header = ["c"] + [f"x{j}" for j in range(self.n)]
        lines = [header]
        if xs is not None:
            lines.append([""] + [repr(x) for x in xs])
        for c in range(self.zcu + 1):
            row = [str(c)]
            for j in range(self.n):
                cell = self.cols[j + 1][c]
                row.append("" if cell[0] == INF else "{" + ",".join(fmt(v) for v in cell) + "}")
            lines.append(row)
        widths = [max(len(r[i]) for r in lines) for i in range(len(header))]
        return "\n".join("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() for r in lines)


def _budget(xs: Sequence[IntInterval], k: int, zc_hi: int) -> int:
    zcu = zc_hi - sum(1 for x in xs if x.lo > k)
    if zcu < 0:
        raise Disentailed(f"max(zc)={zc_hi} is below the number of penalizing variables")
    return zcu


def build_dp_w(xs: Sequence[IntInterval], params: FocusParams, zc_hi: int,
               direction: str = "forward") -> DpTable:
    """Fill the ``(q, l)`` table column by column.

    Penalizing ``x_j`` extends the last sequence or opens a new one at the
    same cost; undetermined ``x_j`` is either covered by extending the cost
    ``c - 1`` cover or interrupts the cost ``c`` cover; neutral ``x_j``
    interrupts. Sequences never start on an undetermined variable.
    """
    k, length = params.k, params.length
    zcu = _budget(xs, k, zc_hi)
    prev = [DUMMY] * (zcu + 1)
    prev[0] = DpCell(0, 0)
    cols = [prev]
    for j, x in enumerate(xs):
        col = [DUMMY] * (zcu + 1)
        if x.lo > k:
            for c in range(min(j, zcu) + 1):
                q, l = prev[c]
                if q == INF:
                    continue
                col[c] = DpCell(q, l + 1) if 1 <= l < length else DpCell(q + 1, 1)
        elif x.hi > k:
            for c in range(min(j, zcu) + 1):
                q, l = prev[c]
                if c > 0:
                    q1, l1 = prev[c - 1]
                    extendable = 1 <= l1 < length
                    if extendable and (q1 == q or q == INF):
                        col[c] = DpCell(q1, l1 + 1)
                        continue
                if q != INF:
                    col[c] = DpCell(q, INF)
        else:
            for c in range(min(j, zcu) + 1):
                q = prev[c][0]
                if q != INF:
                    col[c] = DpCell(q, INF)
        cols.append(col)
        prev = col
    return DpTable(cols, zcu, direction)


def _last_column_summary(table: DpTable, y_hi: int):
    """``(min q, min c with q <= y_hi)`` over the last column; second is None if none."""
    col = table.column(table.n - 1)
    min_q = min(cell[0] for cell in col)
    first_c = next((c for c, cell in enumerate(col) if cell[0] <= y_hi), None)
    return min_q, first_c


def disentailment_w(inst: FocusInstance) -> Status:
    if inst.params.variant is not Variant.WEIGHTED:
        raise ValueError("disentailment_w expects a weighted FOCUS instance")
    return _disentailment(inst, build_dp_w)


def _disentailment(inst: FocusInstance, build) -> Status:
    try:
        table = build(inst.xs, inst.params, inst.zc.hi)
    except Disentailed:
        return Status.DISENTAILED
    _, first_c = _last_column_summary(table, inst.yc.hi)
    return Status.FEASIBLE if first_c is not None else Status.DISENTAILED


def _support_count(left, right, length: int, tolerance: int, x_low: bool) -> float:
    """Fewest sequences for ``left + x_i + right`` given the two side cells.

    ``x_low`` means ``x_i <= k`` and it is covered, which is only possible by
    gluing both sides into one sequence.
    """
    q1, l1 = left[0], left[1]
    q2, l2 = right[0], right[1]
    h1 = left[2] if len(left) > 2 else 0
    h2 = right[2] if len(right) > 2 else 0
    ext1 = 1 <= l1 < INF
    ext2 = 1 <= l2 < INF
    glue = ext1 and ext2 and l1 + l2 + 1 <= length and h1 + h2 + x_low <= tolerance
    if x_low:
        return q1 + q2 - 1 if glue else INF
    if glue:
        return q1 + q2 - 1
    if (ext1 and l1 + 1 <= length) or (ext2 and l2 + 1 <= length):
        return q1 + q2
    return q1 + q2 + 1


def _supported(fwd: DpTable, bwd: DpTable, i: int, budget: int, y_hi: int,
               length: int, tolerance: int, mode: str) -> bool:
    """Check one value class of ``x_i`` against every split ``c1 + c2 <= budget``.

    mode is ``"high"`` (x_i covered and > k), ``"gap"`` (x_i uncovered), or
    ``"glue"`` (x_i <= k but covered inside one glued sequence).
    """
    if budget < 0:
        return False
    n = fwd.n
    left = fwd.column(i - 1)
    right = bwd.column(n - i - 2)
    top_r = bwd.top(n - i - 2)
    top_l = fwd.top(i - 1)
    for c1 in range(min(top_l, budget) + 1):
        c2 = min(budget - c1, top_r)
        lc, rc = left[c1], right[c2]
        if mode == "gap":
            count = lc[0] + rc[0]
        else:
            count = _support_count(lc, rc, length, tolerance, mode == "glue")
        if count <= y_hi:
            return True
    return False


def bc_core(inst: FocusInstance, build: Callable, allow_glue_low: bool, shortcut: bool) -> FocusInstance:
    """Shared bounds-consistency pass for both weighted variants."""
    params = inst.params
    k, length, tol, n = params.k, params.length, params.tolerance, inst.n
    zc, yc = inst.zc, inst.yc
    n_pen = inst.n_penalizing()
    try:
        fwd = build(inst.xs, params, zc.hi)
    except Disentailed as exc:
        raise Infeasible(str(exc)) from None
    zcu = fwd.zcu
    min_q, first_c = _last_column_summary(fwd, yc.hi)
    if first_c is None:
        raise Infeasible("no cover fits both budgets")
    yc = yc.raise_lo(int(min_q))
    zc = zc.raise_lo(n_pen + first_c)
    if yc.is_empty or zc.is_empty:  # pragma: no cover - guarded by first_c
        raise Infeasible("cost bounds emptied")
    y_hi = yc.hi

    if shortcut:
        last = fwd.column(n - 1)
        if any(last[c][0] < y_hi for c in range(zcu)):
            return inst.with_domains(yc=yc, zc=zc)

    # the backward table is indexed from the right: column t covers [n-1-t .. n-1]
    bwd = build(inst.xs[::-1], params, zc.hi, direction="backward")
    xs = list(inst.xs)
    for i, x in enumerate(xs):
        is_pen = x.lo > k
        low = False
        if x.lo <= k:
            low = _supported(fwd, bwd, i, zcu, y_hi, length, tol, "gap")
            if not low and allow_glue_low:
                low = _supported(fwd, bwd, i, zcu - 1, y_hi, length, tol, "glue")
        high = False
        if x.hi > k:
            high = _supported(fwd, bwd, i, zcu - (0 if is_pen else 1), y_hi, length, tol, "high")
        if not low:
            x = x.high_part(k)
        if not high:
            x = x.low_part(k)
        if x.is_empty:
            raise Infeasible(f"x{i} has no supported value")
        xs[i] = x
    return inst.with_domains(xs=xs, yc=yc, zc=zc)


def bc_filter_w(inst: FocusInstance, shortcut: bool = True) -> FocusInstance:
    """Bounds consistency on ``X``, ``min(yc)`` and ``min(zc)`` for weighted FOCUS."""
    if inst.params.variant is not Variant.WEIGHTED:
        raise ValueError("bc_filter_w expects a weighted FOCUS instance")
    return bc_core(inst, build_dp_w, allow_glue_low=False, shortcut=shortcut)


def decompose_w(inst: FocusInstance):
    """Plain FOCUS, one 0/1 channel per variable and ``sum(b) <= zc``, as a solver network."""
    from .solver import decomposition_network

    return decomposition_network(inst)
