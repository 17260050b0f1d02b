"""
Representations of type-A quivers.

Covers the functor from paths in S to interval modules, a brute-force Hom
dimension computed by exact rank over the rationals, Cartan and Coxeter
matrices, and an irreducible-map oracle that only uses Hom dimensions.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import TYPE_CHECKING, Optional, Sequence, Union

import networkx as nx
import sympy as sp

from .dyckcore import PeakPath
from .errors import IndexRangeError, InvalidInputError, InvariantBreach

if TYPE_CHECKING:
    from .shiftcat import AdmissibleSubchain

logger = logging.getLogger(__name__)

PROJECTIVE_HIT = "projective-hit"


class Direction(str, Enum):
    """Arrow direction on the edge between vertices i and i+1."""
    RIGHT = "R"  # i -> i+1
    LEFT = "L"   # i+1 -> i


@dataclass(frozen=True)
class QuiverA:
    """Quiver of type A_m with vertices 1..m."""
    m: int
    orientation: tuple[Direction, ...]

    def __post_init__(self):
        if self.m < 1:
            raise InvalidInputError(f"Quiver needs at least one vertex, got m={self.m}")
        if len(self.orientation) != self.m - 1:
            raise InvalidInputError(
                f"A_{self.m} needs {self.m - 1} edge directions, got {len(self.orientation)}"
            )
        object.__setattr__(
            self, "orientation", tuple(Direction(d) for d in self.orientation)
        )

    @property
    def arrows(self) -> list[tuple[int, int]]:
        """Arrows (source, target), one per edge, left to right."""
        return [
            (i, i + 1) if d == Direction.RIGHT else (i + 1, i)
            for i, d in enumerate(self.orientation, start=1)
        ]

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(1, self.m + 1))
        g.add_edges_from(self.arrows)
        return g

    def sinks(self) -> list[int]:
        g = self.graph()
        return [v for v in g if g.out_degree(v) == 0]

    def sources(self) -> list[int]:
        g = self.graph()
        return [v for v in g if g.in_degree(v) == 0]

    def reachable(self, x: int) -> tuple[int, int]:
        """Interval of vertices reachable from x (x included)."""
        self._check_vertex(x)
        nodes = nx.descendants(self.graph(), x) | {x}
        return min(nodes), max(nodes)

    def coreachable(self, x: int) -> tuple[int, int]:
        """Interval of vertices from which x is reachable."""
        self._check_vertex(x)
        nodes = nx.ancestors(self.graph(), x) | {x}
        return min(nodes), max(nodes)

    def _check_vertex(self, x: int) -> None:
        if not 1 <= x <= self.m:
            raise IndexRangeError(f"Vertex {x} outside 1..{self.m}")

    def __str__(self) -> str:
        return "".join(d.value for d in self.orientation) or "."


def linear_quiver(m: int) -> QuiverA:
    """1 -> 2 -> ... -> m"""
    return QuiverA(m, (Direction.RIGHT,) * (m - 1))


def quiver_from_subchain(c: "AdmissibleSubchain") -> QuiverA:
    """
    Orientation induced by a subchain: on each edge the arrow points toward
    the sink end of the subchain interval containing it.
    """
    elements = c.elements
    orientation = []
    for i in range(1, c.n - 1):
        left = max(e for e in elements if e <= i)
        orientation.append(Direction.LEFT if left in c.sinks else Direction.RIGHT)
    return QuiverA(c.n - 1, tuple(orientation))


@dataclass(frozen=True)
class RepA:
    """A representation: a vector space per vertex and a matrix per arrow."""
    quiver: QuiverA
    dims: tuple[int, ...]
    maps: tuple[sp.ImmutableMatrix, ...]

    def __post_init__(self):
        if len(self.dims) != self.quiver.m:
            raise InvalidInputError(
                f"Expected {self.quiver.m} dimensions, got {len(self.dims)}"
            )
        if any(d < 0 for d in self.dims):
            raise InvalidInputError(f"Negative dimension in {self.dims}")
        if len(self.maps) != len(self.quiver.arrows):
            raise InvalidInputError(
                f"Expected {len(self.quiver.arrows)} maps, got {len(self.maps)}"
            )
        for (s, t), matrix in zip(self.quiver.arrows, self.maps):
            shape = (self.dims[t - 1], self.dims[s - 1])
            if matrix.shape != shape:
                raise InvalidInputError(
                    f"Map {s}->{t} has shape {matrix.shape}, expected {shape}"
                )

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "arrows": [
                {
                    "from": s,
                    "to": t,
                    "matrix": [[_json_scalar(x) for x in row] for row in matrix.tolist()],
                }
                for (s, t), matrix in zip(self.quiver.arrows, self.maps)
            ],
        }


def _json_scalar(value) -> Union[int, str]:
    value = sp.Rational(value)
    return int(value) if value.is_Integer else str(value)


def interval_indicator(m: int, l: int, r: int) -> tuple[int, ...]:
    return tuple(1 if l <= v <= r else 0 for v in range(1, m + 1))


def interval_of(dims: Sequence[int]) -> tuple[int, int]:
    """(l, r) when dims is the 0/1 indicator of a nonempty interval."""
    if any(d not in (0, 1) for d in dims):
        raise InvalidInputError(f"{tuple(dims)} is not a 0/1 vector")
    ones = [v for v, d in enumerate(dims, start=1) if d]
    if not ones or ones[-1] - ones[0] + 1 != len(ones):
        raise InvalidInputError(f"{tuple(dims)} is not an interval indicator")
    return ones[0], ones[-1]


def interval_module(q: QuiverA, l: int, r: int) -> RepA:
    """Interval module on [l, r]: k on the support, identities inside it."""
    if not 1 <= l <= r <= q.m:
        raise IndexRangeError(f"Interval [{l},{r}] outside 1..{q.m}")
    dims = interval_indicator(q.m, l, r)
    maps = tuple(
        sp.ImmutableMatrix(dims[t - 1], dims[s - 1], [1] * (dims[t - 1] * dims[s - 1]))
        for s, t in q.arrows
    )
    return RepA(q, dims, maps)


def theta(y: PeakPath, c: "AdmissibleSubchain") -> RepA:
    """Send a path in S to the interval module on its support."""
    if y.n != c.n:
        raise InvalidInputError(f"Path has n={y.n}, subchain has n={c.n}")
    return interval_module(quiver_from_subchain(c), y.l, y.r)


def theta_inverse(dims: Sequence[int], c: "AdmissibleSubchain") -> PeakPath:
    if len(dims) != c.n - 1:
        raise InvalidInputError(f"Expected {c.n - 1} dimensions, got {len(dims)}")
    l, r = interval_of(dims)
    return PeakPath(c.n, l, r)


def hom_dim_bruteforce(a: RepA, b: RepA) -> int:
    """
    dim Hom(a, b) as the nullity of the intertwining system.

    Unknowns are the entries of one dims_b[v] x dims_a[v] matrix f_v per
    vertex; each arrow s -> t contributes B f_s - f_t A = 0.
    """
    if a.quiver != b.quiver:
        raise InvalidInputError("Representations live on different quivers")

    offsets = []
    total = 0
    for da, db in zip(a.dims, b.dims):
        offsets.append(total)
        total += da * db
    if total == 0:
        return 0

    def unknown(v: int, i: int, j: int) -> int:
        return offsets[v - 1] + i * a.dims[v - 1] + j

    rows = []
    for (s, t), map_a, map_b in zip(a.quiver.arrows, a.maps, b.maps):
        for p in range(b.dims[t - 1]):
            for col in range(a.dims[s - 1]):
                row = [sp.Integer(0)] * total
                for k in range(b.dims[s - 1]):
                    row[unknown(s, k, col)] += map_b[p, k]
                for k in range(a.dims[t - 1]):
                    row[unknown(t, p, k)] -= map_a[k, col]
                rows.append(row)

    if not rows:
        return total
    return total - sp.Matrix(rows).rank()


def indecomposables(q: QuiverA) -> list[RepA]:
    """All m(m+1)/2 interval modules, ordered by (l, r)."""
    return [
        interval_module(q, l, r)
        for l in range(1, q.m + 1)
        for r in range(l, q.m + 1)
    ]


@lru_cache(maxsize=256)
def cartan_matrix(q: QuiverA) -> sp.ImmutableMatrix:
    """Columns are the dimension vectors of the projectives P(1) .. P(m)."""
    columns = [interval_indicator(q.m, *q.reachable(x)) for x in range(1, q.m + 1)]
    return sp.ImmutableMatrix(q.m, q.m, lambda i, j: columns[j][i])


@lru_cache(maxsize=256)
def coxeter_matrix(q: QuiverA) -> sp.ImmutableMatrix:
    """Phi = -C^T C^{-1}; dim(tau M) = Phi dim(M) for non-projective M."""
    cartan = cartan_matrix(q)
    return sp.ImmutableMatrix(-cartan.T * cartan.inv())


@lru_cache(maxsize=256)
def inverse_coxeter_matrix(q: QuiverA) -> sp.ImmutableMatrix:
    return sp.ImmutableMatrix(coxeter_matrix(q).inv())


def apply_matrix(matrix: sp.ImmutableMatrix, dims: Sequence[int]) -> tuple[int, ...]:
    image = matrix * sp.Matrix(list(dims))
    return tuple(int(x) for x in image)


def coxeter_translate(dims: Sequence[int], q: QuiverA) -> Union[tuple[int, ...], str]:
    """
    Dimension vector of tau M, or PROJECTIVE_HIT when M is projective.

    Raises InvalidInputError for non-interval input and InvariantBreach if
    the Coxeter image of a non-projective is not an interval.
    """
    if len(dims) != q.m:
        raise InvalidInputError(f"Expected {q.m} dimensions, got {len(dims)}")
    interval_of(dims)
    dims = tuple(dims)
    projectives = {interval_indicator(q.m, *q.reachable(x)) for x in range(1, q.m + 1)}
    if dims in projectives:
        return PROJECTIVE_HIT
    image = apply_matrix(coxeter_matrix(q), dims)
    try:
        interval_of(image)
    except InvalidInputError:
        raise InvariantBreach(f"Coxeter image {image} of {dims} is not an interval")
    return image


def hom_table(q: QuiverA) -> dict[tuple[tuple[int, int], tuple[int, int]], int]:
    """Brute-force Hom dimensions between all pairs of interval modules."""
    modules = {(l, r): interval_module(q, l, r)
               for l in range(1, q.m + 1) for r in range(l, q.m + 1)}
    return {
        (x, y): hom_dim_bruteforce(modules[x], modules[y])
        for x in modules for y in modules
    }


def irreducible_bruteforce(
    q: QuiverA,
    table: Optional[dict] = None,
) -> set[tuple[tuple[int, int], tuple[int, int]]]:
    """
    Irreducible maps between interval modules, found from Hom alone.

    Hom spaces between intervals are at most one-dimensional and a nonzero
    map is the identity on the overlap of the supports. So X -> Y lies in
    the square of the radical exactly when some third interval Z admits
    nonzero maps X -> Z -> Y and contains the overlap of X and Y.
    """
    if table is None:
        table = hom_table(q)
    intervals = sorted({x for x, _ in table})

    def overlap(x, y):
        return max(x[0], y[0]), min(x[1], y[1])

    arrows = set()
    for x in intervals:
        for y in intervals:
            if x == y or not table[(x, y)]:
                continue
            lo, hi = overlap(x, y)
            factors = any(
                z not in (x, y)
                and table[(x, z)] and table[(z, y)]
                and z[0] <= lo and hi <= z[1]
                for z in intervals
            )
            if not factors:
                arrows.add((x, y))
    logger.debug(f"Brute-force irreducible maps on {q}: {len(arrows)}")
    return arrows
