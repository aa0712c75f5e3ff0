"""Line-oriented text format for instances.

::

    n 5
    k 0
    len 3
    h 0
    variant focusw
    yc 2 2
    zc 0 3
    x 1 1
    x 0 1
    ...
    among 0 4 1 2

Blank lines and ``#`` comments are ignored. ``zc`` is required for the
weighted variants and rejected otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .model import FocusInstance, FocusParams, IntInterval, Variant
from .solver import AmongSpec

SCALAR_KEYS = ("n", "k", "len", "h")
PAIR_KEYS = ("yc", "zc")


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class InstanceFile:
    instance: FocusInstance
    ambits: tuple[AmongSpec, ...] = ()


def _ints(parts: list[str], count: int, lineno: int, key: str) -> list[int]:
    if len(parts) != count:
        raise ParseError(f"line {lineno}: '{key}' takes {count} integer(s), got {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"line {lineno}: '{key}' expects integers") from None


def parse(text: str) -> InstanceFile:
    scalars: dict[str, int] = {}
    pairs: dict[str, IntInterval] = {}
    variant = None
    xs: list[IntInterval] = []
    raw_ambits: list[tuple[int, list[int]]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key in SCALAR_KEYS or key in PAIR_KEYS or key == "variant":
            if key in scalars or key in pairs or (key == "variant" and variant is not None):
                raise ParseError(f"line {lineno}: duplicate '{key}'")
        if key in SCALAR_KEYS:
            scalars[key] = _ints(rest, 1, lineno, key)[0]
        elif key in PAIR_KEYS:
            lo, hi = _ints(rest, 2, lineno, key)
            pairs[key] = _interval(lo, hi, lineno, key)
        elif key == "variant":
            if len(rest) != 1:
                raise ParseError(f"line {lineno}: 'variant' takes one word")
            try:
                variant = Variant(rest[0])
            except ValueError:
                choices = "|".join(v.value for v in Variant)
                raise ParseError(f"line {lineno}: variant must be one of {choices}") from None
        elif key == "x":
            lo, hi = _ints(rest, 2, lineno, key)
            xs.append(_interval(lo, hi, lineno, key))
        elif key == "among":
            raw_ambits.append((lineno, _ints(rest, 4, lineno, key)))
        else:
            raise ParseError(f"line {lineno}: unknown key '{key}'")

    missing = [key for key in SCALAR_KEYS if key not in scalars] + (["variant"] if variant is None else [])
    missing += [] if "yc" in pairs else ["yc"]
    if missing:
        raise ParseError("missing key(s): " + ", ".join(missing))
    n = scalars["n"]
    if n < 1:
        raise ParseError("n must be at least 1")
    if len(xs) != n:
        raise ParseError(f"expected {n} 'x' lines, got {len(xs)}")
    if variant.weighted and "zc" not in pairs:
        raise ParseError(f"variant {variant.value} requires a 'zc' line")
    if not variant.weighted and "zc" in pairs:
        raise ParseError(f"variant {variant.value} takes no 'zc' line")
    try:
        params = FocusParams(scalars["k"], scalars["len"], scalars["h"], variant)
        inst = FocusInstance(tuple(xs), pairs["yc"], params, pairs.get("zc"))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    ambits = []
    for lineno, (s, e, lo, hi) in raw_ambits:
        try:
            spec = AmongSpec(s, e, lo, hi, params.k)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if e >= n:
            raise ParseError(f"line {lineno}: among window ends past x{n - 1}")
        ambits.append(spec)
    return InstanceFile(inst, tuple(ambits))


def _interval(lo: int, hi: int, lineno: int, key: str) -> IntInterval:
    if lo > hi:
        raise ParseError(f"line {lineno}: empty '{key}' interval [{lo},{hi}]")
    return IntInterval(lo, hi)


def serialize(f: InstanceFile) -> str:
    inst = f.instance
    p = inst.params
    lines = [f"n {inst.n}", f"k {p.k}", f"len {p.length}", f"h {p.h}", f"variant {p.variant.value}",
             f"yc {inst.yc.lo} {inst.yc.hi}"]
    if inst.zc is not None:
        lines.append(f"zc {inst.zc.lo} {inst.zc.hi}")
    lines += [f"x {x.lo} {x.hi}" for x in inst.xs]
    lines += [f"among {a.start} {a.end} {a.lo} {a.hi}" for a in f.ambits]
    return "\n".join(lines) + "\n"


def load(path: str | Path) -> InstanceFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)
