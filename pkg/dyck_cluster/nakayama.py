"""
Linear Nakayama algebras through their Kupisch series.

The quiver is 1 -> 2 -> ... -> m with arrow x_a: a -> a+1. A Kupisch
series lists dim P(i) = c_i; its modules are the intervals [i, r] with
r <= i + c_i - 1, which sit inside S for n = m + 1.

The Dyck path of a series is the upper envelope of the module region
drawn with [i, j] at position i + j - 1 and height j - i + 1.
"""

import logging
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .dyckcore import DyckPath, PeakPath
from .errors import InvalidInputError, InvariantBreach
from .shiftcat import ARQuiver, ar_quiver, linear_subchain

logger = logging.getLogger(__name__)


def validate_kupisch(c: Sequence[int]) -> bool:
    m = len(c)
    if m == 0 or c[-1] != 1:
        return False
    for i, ci in enumerate(c, start=1):
        if not 1 <= ci <= m - i + 1:
            return False
    return all(c[i + 1] >= c[i] - 1 for i in range(m - 1))


@dataclass(frozen=True)
class KupischSeries:
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if not validate_kupisch(self.c):
            raise InvalidInputError(f"Not a Kupisch series of a linear Nakayama algebra: {list(self.c)}")

    @property
    def m(self) -> int:
        return len(self.c)

    def __str__(self) -> str:
        return ",".join(map(str, self.c))


@dataclass(frozen=True)
class NvSpec:
    """Partition vector v_i = n - (c_i + i - 1) of a Kupisch series."""
    n: int
    v: tuple[int, ...]

    def __post_init__(self):
        if len(self.v) != self.n:
            raise InvalidInputError(f"Expected {self.n} parts, got {len(self.v)}")
        for i, bound in enumerate(self.bounds(), start=1):
            if not 1 <= bound <= self.n - i + 1:
                raise InvalidInputError(f"Bound {bound} at position {i} outside 1..{self.n - i + 1}")

    def bounds(self) -> tuple[int, ...]:
        """The m(i, j_i), which equal the Kupisch entries c_i."""
        return tuple(self.n - vi - i + 1 for i, vi in enumerate(self.v, start=1))

    def is_partition(self) -> bool:
        return all(a >= b for a, b in zip(self.v, self.v[1:]))


def parse_kupisch(text: str) -> KupischSeries:
    try:
        values = [int(tok) for tok in text.replace("[", "").replace("]", "").split(",")]
    except ValueError:
        raise InvalidInputError(f"Kupisch series must be comma-separated integers: {text!r}")
    return KupischSeries(tuple(values))


def _envelope(k: KupischSeries) -> list[int]:
    heights = [0] * (2 * k.m + 1)
    for i, ci in enumerate(k.c, start=1):
        for h in range(1, ci + 1):
            p = 2 * i - 2 + h
            heights[p] = max(heights[p], h)
    return heights


def dyck_from_kupisch(k: KupischSeries) -> DyckPath:
    """[3,3,2,2,1] gives UUUDUDDUDD; [m, ..., 1] gives U^m D^m."""
    heights = _envelope(k)
    steps = "".join(
        "U" if b > a else "D" for a, b in zip(heights, heights[1:])
    )
    return DyckPath(steps)


def kupisch_from_dyck(p: DyckPath) -> KupischSeries:
    heights = [0]
    for step in p.steps:
        heights.append(heights[-1] + (1 if step == "U" else -1))
    m = p.n

    c = []
    for i in range(1, m + 1):
        best = 0
        for h in range(1, m - i + 2):
            if heights[2 * i - 2 + h] >= h:
                best = h
        c.append(best)
    if not validate_kupisch(c):
        raise InvalidInputError(f"{p} does not come from a Kupisch series")
    series = KupischSeries(tuple(c))
    if dyck_from_kupisch(series) != p:
        raise InvalidInputError(f"{p} does not come from a Kupisch series")
    return series


def enumerate_kupisch(m: int) -> list[KupischSeries]:
    """All Kupisch series with m entries (Catalan(m) of them), lexicographic."""
    if m < 1:
        raise InvalidInputError(f"Need m >= 1, got {m}")
    found: list[tuple[int, ...]] = []

    def extend(tail: tuple[int, ...]) -> None:
        i = m - len(tail)
        if i == 0:
            found.append(tail)
            return
        for ci in range(1, min(m - i + 1, tail[0] + 1) + 1):
            extend((ci,) + tail)

    extend((1,))
    return [KupischSeries(c) for c in sorted(found)]


def parse_relations(text: str) -> list[tuple[int, int]]:
    """"3-4,1-3" -> [(3, 4), (1, 3)]"""
    relations = []
    for raw in text.split(","):
        parts = raw.strip().split("-")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise InvalidInputError(f"Relation must look like 'a-b', got {raw!r}")
        relations.append((int(parts[0]), int(parts[1])))
    return relations


def kupisch_from_relations(m: int, relations: Iterable[tuple[int, int]]) -> KupischSeries:
    """
    Kupisch series of kQ/I for zero relations x_a ... x_b.

    A relation (a, b) kills the path from a to b + 1, so P(i) for i <= a
    stops at vertex b.
    """
    c = [m - i + 1 for i in range(1, m + 1)]
    for a, b in relations:
        if not 1 <= a < b <= m - 1:
            raise InvalidInputError(
                f"Relation x_{a}..x_{b} must have 1 <= a < b <= {m - 1}"
            )
        for i in range(1, a + 1):
            c[i - 1] = min(c[i - 1], b + 1 - i)
    return KupischSeries(tuple(c))


def nv_spec_from_kupisch(k: KupischSeries) -> NvSpec:
    n = k.m
    return NvSpec(n, tuple(n - (ci + i - 1) for i, ci in enumerate(k.c, start=1)))


def nv_objects(spec: NvSpec) -> list[PeakPath]:
    """Intervals [i, r] with i <= r <= m(i, j_i) + i - 1, as paths for n + 1."""
    return [
        PeakPath(spec.n + 1, i, r)
        for i, bound in enumerate(spec.bounds(), start=1)
        for r in range(i, bound + i)
    ]


def ar_quiver_nakayama(k: KupischSeries) -> ARQuiver:
    """
    AR quiver of kQ/I as the full subquiver of the linear A_m quiver.

    The translate is recomputed: [i, j] is projective when j = i + c_i - 1,
    otherwise tau [i, j] = [i+1, j+1].
    """
    objects = nv_objects(nv_spec_from_kupisch(k))
    base = ar_quiver(linear_subchain(k.m + 1)).restrict(set(objects))

    position = {y: idx for idx, y in enumerate(base.vertices)}
    translate = []
    for idx, y in enumerate(base.vertices):
        if y.r == y.l + k.c[y.l - 1] - 1:
            continue
        image = PeakPath(y.n, y.l + 1, y.r + 1)
        if image not in position:
            raise InvariantBreach(f"tau {y.label()} = {image.label()} is not a module of {k}")
        translate.append((idx, position[image]))

    result = replace(base, translate=tuple(sorted(translate)))
    logger.debug(f"Nakayama AR quiver for [{k}]: {len(result.vertices)} vertices")
    return result
