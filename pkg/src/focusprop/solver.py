"""A small propagation solver: trailed interval domains, a fixpoint loop,
AMONG / channel / sum constraints, depth-first search, and the Pareto driver
for scheduling with rentals."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .model import FocusInstance, FocusParams, Infeasible, IntInterval, Variant
from .springy import springy_filter
from .weighted import bc_filter_w
from .weighted_springy import bc_filter_wh

log = logging.getLogger(__name__)


class Network:
    """Interval domains plus propagators; every write is trailed for backtracking."""

    def __init__(self):
        self.doms: list[IntInterval] = []
        self.names: list[str] = []
        self.propagators: list = []
        self.trail: list[tuple[int, IntInterval]] = []
        self._watch: list[list[int]] = []

    def add_var(self, dom: IntInterval, name: Optional[str] = None) -> int:
        if dom.is_empty:
            raise ValueError("variables need a non-empty domain")
        self.doms.append(dom)
        self.names.append(name or f"v{len(self.doms) - 1}")
        self._watch.append([])
        return len(self.doms) - 1

    def post(self, prop) -> None:
        idx = len(self.propagators)
        self.propagators.append(prop)
        for v in set(prop.scope):
            self._watch[v].append(idx)

    def set(self, v: int, dom: IntInterval) -> bool:
        old = self.doms[v]
        if dom == old:
            return False
        if dom.is_empty:
            raise Infeasible(f"{self.names[v]} wiped out")
        if not dom.issubset(old):
            raise ValueError(f"{self.names[v]}: {dom} is not a tightening of {old}")
        self.trail.append((v, old))
        self.doms[v] = dom
        return True

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            v, old = self.trail.pop()
            self.doms[v] = old

    def value_of(self, name: str) -> IntInterval:
        return self.doms[self.names.index(name)]


def propagate_fixpoint(net: Network, order: Optional[Sequence[int]] = None) -> Network:
    """Run propagators until none changes a domain. ``order`` sets the initial
    queue order (used to check that the fixpoint does not depend on it)."""
    queue = deque(order if order is not None else range(len(net.propagators)))
    queued = set(queue)
    while queue:
        p = queue.popleft()
        queued.discard(p)
        prop = net.propagators[p]
        before = [net.doms[v] for v in prop.scope]
        after = prop.filter(before)
        for v, old, new in zip(prop.scope, before, after):
            if new != old and net.set(v, new.intersect(net.doms[v])):
                for q in net._watch[v]:
                    if q != p and q not in queued:
                        queue.append(q)
                        queued.add(q)
    return net


# --- propagators -----------------------------------------------------------

@dataclass
class FocusPropagator:
    """Wraps the focus-family filters; scope is ``xs + [yc] (+ [zc])``."""

    xs: list[int]
    yc: int
    params: FocusParams
    zc: Optional[int] = None
    fixed_yc_guard: bool = False
    filter_fn: Optional[Callable] = None

    @property
    def scope(self) -> list[int]:
        return self.xs + [self.yc] + ([self.zc] if self.zc is not None else [])

    def filter(self, doms: list[IntInterval]) -> list[IntInterval]:
        n = len(self.xs)
        inst = FocusInstance(tuple(doms[:n]), doms[n], self.params,
                             doms[n + 1] if self.zc is not None else None)
        fn = self.filter_fn
        if fn is None:
            v = self.params.variant
            if v is Variant.WEIGHTED:
                fn = bc_filter_w
            elif v is Variant.WEIGHTED_SPRINGY:
                fn = bc_filter_wh
            else:
                fn = lambda i: springy_filter(i, fixed_yc_guard=self.fixed_yc_guard)
        out = fn(inst)
        return list(out.xs) + [out.yc] + ([out.zc] if out.zc is not None else [])


@dataclass(frozen=True)
class AmongSpec:
    """Between ``lo`` and ``hi`` of ``x_start..x_end`` (inclusive) take a value > k."""

    start: int
    end: int
    lo: int
    hi: int
    k: int = 0

    def __post_init__(self):
        size = self.end - self.start + 1
        if self.start < 0 or size < 1:
            raise ValueError(f"bad among window [{self.start},{self.end}]")
        if not 0 <= self.lo <= self.hi <= size:
            raise ValueError(f"among bounds must satisfy 0 <= lo <= hi <= {size}")


def among_filter(doms: Sequence[IntInterval], spec: AmongSpec) -> list[IntInterval]:
    """Bounds consistency for AMONG over the window of ``doms`` selected by ``spec``."""
    k = spec.k
    out = list(doms)
    window = range(spec.start, spec.end + 1)
    if spec.end >= len(doms):
        raise ValueError("among window exceeds the sequence")
    sure = sum(1 for i in window if doms[i].lo > k)
    possible = sum(1 for i in window if doms[i].hi > k)
    if sure > spec.hi or possible < spec.lo:
        raise Infeasible(f"among[{spec.start},{spec.end}] cannot hold")
    if sure == spec.hi:
        for i in window:
            if doms[i].lo <= k < doms[i].hi:
                out[i] = doms[i].low_part(k)
    elif possible == spec.lo:
        for i in window:
            if doms[i].lo <= k < doms[i].hi:
                out[i] = doms[i].high_part(k)
    return out


@dataclass
class AmongPropagator:
    xs: list[int]
    spec: AmongSpec

    @property
    def scope(self) -> list[int]:
        return self.xs

    def filter(self, doms):
        return among_filter(doms, self.spec)


@dataclass
class ChannelPropagator:
    """``(x <= k and b = 0) or (x > k and b = 1)``."""

    x: int
    b: int
    k: int

    @property
    def scope(self) -> list[int]:
        return [self.x, self.b]

    def filter(self, doms):
        x, b = doms
        b = b.intersect(IntInterval(0, 1))
        if not x.can_be_low(self.k):
            b = b.raise_lo(1)
        if not x.can_be_high(self.k):
            b = b.lower_hi(0)
        if b.is_empty:
            raise Infeasible("channel")
        if b.lo == 1:
            x = x.high_part(self.k)
        if b.hi == 0:
            x = x.low_part(self.k)
        if x.is_empty:
            raise Infeasible("channel")
        return [x, b]


@dataclass
class SumLeqPropagator:
    """``sum(terms) <= bound``."""

    terms: list[int]
    bound: int

    @property
    def scope(self) -> list[int]:
        return self.terms + [self.bound]

    def filter(self, doms):
        *ts, z = doms
        low = sum(t.lo for t in ts)
        z = z.raise_lo(low)
        if z.is_empty:
            raise Infeasible("sum exceeds its bound")
        out = [t.lower_hi(z.hi - (low - t.lo)) for t in ts]
        return out + [z]


# --- model builders --------------------------------------------------------

@dataclass
class FocusModel:
    """A network together with the indices of the focus variables."""

    net: Network
    xs: list[int]
    yc: int
    zc: Optional[int] = None
    extra: list[int] = field(default_factory=list)

    def instance(self, params: FocusParams) -> FocusInstance:
        d = self.net.doms
        return FocusInstance(tuple(d[i] for i in self.xs), d[self.yc], params,
                             d[self.zc] if self.zc is not None else None)


def focus_network(inst: FocusInstance, ambits: Sequence[AmongSpec] = (), fixed_yc_guard: bool = False) -> FocusModel:
    """Network holding the global propagator for ``inst`` plus optional AMONGs."""
    net = Network()
    xs = [net.add_var(x, f"x{i}") for i, x in enumerate(inst.xs)]
    yc = net.add_var(inst.yc, "yc")
    zc = net.add_var(inst.zc, "zc") if inst.zc is not None else None
    net.post(FocusPropagator(xs, yc, inst.params, zc, fixed_yc_guard))
    for spec in ambits:
        net.post(AmongPropagator(xs, spec))
    return FocusModel(net, xs, yc, zc)


def decomposition_network(inst: FocusInstance) -> FocusModel:
    """FOCUS on ``X`` + one boolean channel per variable + ``sum(b) <= zc``."""
    if inst.params.variant is not Variant.WEIGHTED:
        raise ValueError("the decomposition applies to weighted FOCUS")
    net = Network()
    xs = [net.add_var(x, f"x{i}") for i, x in enumerate(inst.xs)]
    yc = net.add_var(inst.yc, "yc")
    zc = net.add_var(inst.zc, "zc")
    bs = [net.add_var(IntInterval(0, 1), f"b{i}") for i in range(inst.n)]
    p = inst.params
    focus = FocusParams(p.k, p.length, 0, Variant.FOCUS)
    net.post(FocusPropagator(xs, yc, focus))
    for x, b in zip(xs, bs):
        net.post(ChannelPropagator(x, b, p.k))
    net.post(SumLeqPropagator(bs, zc))
    return FocusModel(net, xs, yc, zc, bs)


# --- search ----------------------------------------------------------------

@dataclass
class SearchStats:
    nodes: int = 0
    failures: int = 0
    solutions: int = 0


def search(net: Network, decision: Sequence[int], on_solution: Callable[[Network], Optional[bool]],
           stats: Optional[SearchStats] = None, before_node: Optional[Callable[[Network], None]] = None) -> SearchStats:
    """Depth-first search, static variable order, smallest value first.

    ``on_solution`` returning ``True`` stops the search. ``before_node`` may
    tighten domains (branch-and-bound) before each propagation.
    """
    stats = stats or SearchStats()

    def dfs() -> bool:
        stats.nodes += 1
        mark = net.mark()
        try:
            if before_node is not None:
                before_node(net)
            propagate_fixpoint(net)
        except Infeasible:
            stats.failures += 1
            net.undo(mark)
            return False
        var = next((v for v in decision if not net.doms[v].is_fixed), None)
        if var is None:
            stats.solutions += 1
            stop = bool(on_solution(net))
            net.undo(mark)
            return stop
        d = net.doms[var]
        for branch in (IntInterval(d.lo, d.lo), IntInterval(d.lo + 1, d.hi)):
            inner = net.mark()
            net.set(var, branch)
            if dfs():
                net.undo(mark)
                return True
            net.undo(inner)
        net.undo(mark)
        return False

    dfs()
    return stats


def all_solutions(net: Network, decision: Sequence[int]) -> tuple[set, SearchStats]:
    sols: set = set()
    stats = search(net, decision, lambda nt: sols.add(tuple(nt.doms[v].lo for v in decision)))
    return sols, stats


def minimize(net: Network, decision: Sequence[int], objective: int) -> tuple[Optional[int], Optional[tuple], SearchStats]:
    """Branch and bound on ``min(objective)``; returns ``(best, assignment, stats)``."""
    best: list = [None, None]

    def tighten(nt: Network):
        if best[0] is not None:
            nt.set(objective, nt.doms[objective].lower_hi(best[0] - 1))

    def record(nt: Network):
        value = nt.doms[objective].lo
        if best[0] is None or value < best[0]:
            best[0] = value
            best[1] = tuple(nt.doms[v].lo for v in decision)

    stats = search(net, decision, record, before_node=tighten)
    return best[0], best[1], stats


# --- scheduling with rentals -------------------------------------------------

@dataclass(frozen=True)
class RentalsInstance:
    """Horizon of ``n`` days; ``x_t > 0`` means the machine is rented on day ``t``."""

    n: int
    length: int
    h: int
    ambits: tuple[AmongSpec, ...]
    k: int = 0
    xs: Optional[tuple[IntInterval, ...]] = None

    def domains(self) -> tuple[IntInterval, ...]:
        return self.xs if self.xs is not None else tuple(IntInterval(0, 1) for _ in range(self.n))

    def params(self) -> FocusParams:
        return FocusParams(self.k, self.length, self.h, Variant.WEIGHTED_SPRINGY)


def rentals_model(inst: RentalsInstance, yc_hi: int, zc_hi: Optional[int] = None) -> FocusModel:
    n = inst.n
    focus = FocusInstance(inst.domains(), IntInterval(0, yc_hi), inst.params(),
                          IntInterval(0, n if zc_hi is None else zc_hi))
    return focus_network(focus, inst.ambits)


def pareto_rentals(inst: RentalsInstance) -> list[tuple[int, int]]:
    """Non-dominated ``(yc, zc)`` points: for each cardinality bound, minimise the total rented length."""
    n = inst.n
    model = rentals_model(inst, n)
    z_min, _, _ = minimize(model.net, model.xs, model.zc)
    if z_min is None:
        raise Infeasible("rentals instance is unsatisfiable")
    points = []
    for y in range(0, n + 1):
        model = rentals_model(inst, y)
        z, _, stats = minimize(model.net, model.xs, model.zc)
        log.debug("yc<=%d -> zc=%s (%d nodes)", y, z, stats.nodes)
        if z is None:
            continue
        if not points or z < points[-1][1]:
            points.append((y, z))
        if z == z_min:
            break
    return points
