"""Linear-time bounds consistency for FOCUS and SpringyFocus.

``min_cards`` runs a single left-to-right pass; ``springy_filter`` runs it
on ``X`` and on ``X`` reversed and combines both tables at every index, with
a one-sequence regret whenever the two sides can merge across ``x_l``.
FOCUS is handled as the ``h = 0`` case.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Sequence

from .model import FocusInstance, FocusParams, Infeasible, IntInterval, Variant


@dataclass(frozen=True)
class PrefixCell:
    """Quantities for prefix ``[x_0..x_l]``; counts are ``n + 1`` when impossible.

    p_leq:  fewest sequences with ``x_l <= k`` and no sequence ending at ``l``
    ps_leq: fewest sequences with ``x_l <= k`` inside a sequence
    p_gt:   fewest sequences with ``x_l > k``
    plen:   length of the current sequence at ``l`` (0 if none)
    card:   low values in the current sequence, counted as if ``x_l > k``
    """

    p_leq: int
    ps_leq: int
    p_gt: int
    plen: int
    card: int


class PrefixTable:
    """One :class:`PrefixCell` per index, stored column-wise as five int arrays."""

    FIELDS = ("p_leq", "ps_leq", "p_gt", "plen", "card")

    def __init__(self, columns: Sequence[Sequence[int]], direction: str = "forward"):
        self.columns = tuple(array("q", col) for col in columns)
        self.direction = direction

    @classmethod
    def from_cells(cls, cells: Sequence[PrefixCell], direction: str = "forward") -> "PrefixTable":
        return cls([[getattr(c, f) for c in cells] for f in cls.FIELDS], direction)

    def __getitem__(self, i: int) -> PrefixCell:
        return PrefixCell(*(col[i] for col in self.columns))

    def __len__(self) -> int:
        return len(self.columns[0])

    def __eq__(self, other) -> bool:
        return isinstance(other, PrefixTable) and self.columns == other.columns

    @property
    def cells(self) -> tuple[PrefixCell, ...]:
        return tuple(PrefixCell(*row) for row in zip(*self.columns))

    @property
    def sentinel(self) -> int:
        return len(self) + 1

    def dump(self) -> str:
        big = self.sentinel
        fmt = lambda v: "-" if v == big else str(v)
        rows = [("l", "p<=", "pS<=", "p>", "plen", "card")]
        for l, c in enumerate(self.cells):
            rows.append((str(l), fmt(c.p_leq), fmt(c.ps_leq), fmt(c.p_gt), str(c.plen), str(c.card)))
        width = max(len(v) for r in rows for v in r)
        return "\n".join(" ".join(v.rjust(width) for v in r) for r in rows)


def _check_variant(params: FocusParams):
    if params.variant not in (Variant.FOCUS, Variant.SPRINGY):
        raise ValueError(f"springy propagation does not handle variant {params.variant.value}")


def min_cards(xs: Sequence[IntInterval], params: FocusParams, direction: str = "forward") -> PrefixTable:
    """Prefix table for ``xs``. Pass ``xs[::-1]`` for the suffix table."""
    _check_variant(params)
    n = len(xs)
    if n == 0:
        raise ValueError("empty sequence")
    k, length, h = params.k, params.length, params.tolerance
    big = n + 1

    x0 = xs[0]
    first = PrefixCell(
        p_leq=0 if x0.lo <= k else big,
        ps_leq=big,
        p_gt=1 if x0.hi > k else big,
        plen=1 if x0.hi > k else 0,
        card=0,
    )
    p_leq, ps_leq, p_gt, plen, card = first.p_leq, first.ps_leq, first.p_gt, first.plen, first.card
    c_leq, c_s, c_gt, c_plen, c_card = [p_leq], [ps_leq], [p_gt], [plen], [card]
    for x in xs[1:]:
        if x.lo <= k:
            t_leq = min(p_leq, p_gt)
            if plen == 0 or plen >= length - 1 or card == h:
                t_s = big
            else:
                t_s = min(ps_leq, p_gt)
        else:
            t_leq = t_s = big

        if x.hi <= k:
            t_gt = big
        elif plen == 0 or plen == length:
            t_gt = min(p_gt + 1, p_leq + 1, big)
        else:
            t_gt = min(p_gt, ps_leq, p_leq + 1, big)

        if min(ps_leq, p_gt) < p_leq + 1 and plen < length:
            t_plen = plen + 1
        elif t_gt < big:
            t_plen = 1
        else:
            t_plen = 0

        if t_plen == 1:
            t_card = 0
        elif t_gt == big:
            t_card = card + 1
        else:
            t_card = card

        p_leq, ps_leq, p_gt, plen, card = t_leq, t_s, t_gt, t_plen, t_card
        c_leq.append(p_leq)
        c_s.append(ps_leq)
        c_gt.append(p_gt)
        c_plen.append(plen)
        c_card.append(card)
    return PrefixTable((c_leq, c_s, c_gt, c_plen, c_card), direction)


def focus_cardinality(table: PrefixTable) -> int:
    """Least number of sequences over all bound instantiations (``n + 1`` if none)."""
    last = table[len(table) - 1]
    return min(last.p_leq, last.p_gt)


def springy_filter(inst: FocusInstance, fixed_yc_guard: bool = False) -> FocusInstance:
    """Bounds-consistent filtering of ``X`` and ``min(yc)``.

    With ``fixed_yc_guard`` the ``X`` pass only runs once ``yc`` is fixed,
    which is cheaper but no longer bounds consistent in general.
    """
    params = inst.params
    _check_variant(params)
    k, length, h, n = params.k, params.length, params.tolerance, inst.n

    pre = min_cards(inst.xs, params)
    yc = inst.yc.raise_lo(focus_cardinality(pre))
    if yc.is_empty:
        raise Infeasible(f"focus cardinality exceeds max(yc)={inst.yc.hi}")
    if fixed_yc_guard and not yc.is_fixed:
        return inst.with_domains(yc=yc)

    suf = min_cards(inst.xs[::-1], params, direction="backward")
    y_hi = yc.hi
    xs = list(inst.xs)
    f_leq, f_s, f_gt, f_plen, f_card = pre.columns
    b_leq, b_s, b_gt, b_plen, b_card = suf.columns
    for l in range(n):
        r = n - 1 - l
        x = xs[l]
        merge_len = f_plen[l] + b_plen[r] - 1 <= length
        card = f_card[l] + b_card[r]
        if f_leq[l] + b_leq[r] > y_hi:
            # x_l low and uncovered is too expensive; try it low inside a merged sequence
            add = (f_gt[l] <= f_s[l]) + (b_gt[r] <= b_s[r])
            regret = 1 if merge_len and card + add - 1 <= h else 0
            if f_s[l] + b_s[r] - regret > y_hi:
                x = x.high_part(k)
        regret = 1 if merge_len and card - 1 <= h else 0
        if f_gt[l] + b_gt[r] - regret > y_hi:
            x = x.low_part(k)
        if x.is_empty:
            raise Infeasible(f"x{l} has no supported value")
        xs[l] = x
    return inst.with_domains(xs=xs, yc=yc)
