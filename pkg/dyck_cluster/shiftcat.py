"""
The A_{n-1} Dyck-paths category on S.

An admissible subchain fixes an orientation of A_{n-1}. Objects are the
paths of S; morphisms are decided by a support criterion, and the arrows
of the category (elementary shifts) are read off the Auslander-Reiten
quiver, which is knitted from the projectives with the inverse Coxeter
matrix.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Optional

import networkx as nx

from .dyckcore import (
    PeakPath, enumerate_S, peak_run, reassemble, unitary_shift
)
from .errors import IndexRangeError, InvalidInputError, InvariantBreach
from .quiverrep import (
    QuiverA, apply_matrix, interval_indicator, interval_of,
    inverse_coxeter_matrix, quiver_from_subchain,
)

logger = logging.getLogger(__name__)

SINK = "i"
SOURCE = "j"


@dataclass(frozen=True)
class AdmissibleSubchain:
    """
    Sinks (the i_t) and sources (the j_t) inside 1..n-1.

    Construction does not validate; see validate_subchain.
    """
    n: int
    sinks: tuple[int, ...] = ()
    sources: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sinks", tuple(sorted(self.sinks)))
        object.__setattr__(self, "sources", tuple(sorted(self.sources)))

    @property
    def elements(self) -> list[int]:
        return sorted(set(self.sinks) | set(self.sources))

    def role(self, x: int) -> Optional[str]:
        if x in self.sinks:
            return SINK
        if x in self.sources:
            return SOURCE
        return None

    def __str__(self) -> str:
        return format_chain(self)


def validate_subchain(c: AdmissibleSubchain) -> bool:
    if c.n < 2:
        return False
    if set(c.sinks) & set(c.sources):
        return False
    elements = c.elements
    if not elements or elements[0] != 1 or elements[-1] != c.n - 1:
        return False
    roles = [c.role(x) for x in elements]
    return all(a != b for a, b in zip(roles, roles[1:]))


def require_valid(c: AdmissibleSubchain) -> AdmissibleSubchain:
    if not validate_subchain(c):
        raise InvalidInputError(f"Not an admissible subchain for n={c.n}: {format_chain(c)}")
    return c


def format_chain(c: AdmissibleSubchain) -> str:
    """Chain spec text, e.g. "j1,i2,j4"."""
    tokens = [(x, SINK) for x in c.sinks] + [(x, SOURCE) for x in c.sources]
    return ",".join(f"{role}{x}" for x, role in sorted(tokens))


def parse_chain(text: str, n: int) -> AdmissibleSubchain:
    """Parse a chain spec of "iK"/"jK" tokens and validate it for n."""
    sinks, sources = [], []
    for raw in text.split(","):
        token = raw.strip().lower()
        if len(token) < 2 or token[0] not in (SINK, SOURCE) or not token[1:].isdigit():
            raise InvalidInputError(f"Bad chain token {raw!r} in {text!r}")
        (sinks if token[0] == SINK else sources).append(int(token[1:]))
    if len(set(sinks + sources)) != len(sinks) + len(sources):
        raise InvalidInputError(f"Repeated index in chain {text!r}")
    return require_valid(AdmissibleSubchain(n, tuple(sinks), tuple(sources)))


def enumerate_subchains(n: int) -> list[AdmissibleSubchain]:
    """
    Every admissible subchain for n, sorted by chain spec.

    For n >= 3 the interior elements are any subset of 2..n-2 and the role
    of 1 decides the rest, giving 2^(n-2) chains; n = 2 has the two
    single-element encodings.
    """
    if n < 2:
        raise InvalidInputError(f"Subchains need n >= 2, got {n}")
    chains = []
    interior = range(2, n - 1)
    for size in range(len(interior) + 1):
        for middle in combinations(interior, size):
            elements = sorted({1, n - 1, *middle})
            for first in (SINK, SOURCE):
                sinks, sources = [], []
                role = first
                for x in elements:
                    (sinks if role == SINK else sources).append(x)
                    role = SOURCE if role == SINK else SINK
                chains.append(AdmissibleSubchain(n, tuple(sinks), tuple(sources)))
    return sorted(chains, key=lambda c: (len(c.elements), format_chain(c)))


def linear_subchain(n: int) -> AdmissibleSubchain:
    """Source 1, sink n-1: the orientation 1 -> 2 -> ... -> n-1."""
    if n == 2:
        return AdmissibleSubchain(2, (), (1,))
    return AdmissibleSubchain(n, (n - 1,), (1,))


def _check_index(x: int, c: AdmissibleSubchain) -> None:
    if not 1 <= x <= c.n - 1:
        raise IndexRangeError(f"Index {x} outside 1..{c.n - 1}")


def simple(x: int, c: AdmissibleSubchain) -> PeakPath:
    _check_index(x, c)
    return PeakPath(c.n, x, x)


def projective(x: int, c: AdmissibleSubchain) -> PeakPath:
    """Support = vertices reachable from x."""
    _check_index(x, c)
    return PeakPath(c.n, *quiver_from_subchain(c).reachable(x))


def injective(x: int, c: AdmissibleSubchain) -> PeakPath:
    """Support = vertices from which x is reachable."""
    _check_index(x, c)
    return PeakPath(c.n, *quiver_from_subchain(c).coreachable(x))


def hom_nonzero(y1: PeakPath, y2: PeakPath, c: AdmissibleSubchain) -> bool:
    """
    Whether Hom(y1, y2) is nonzero.

    With W the overlap of the supports U of y1 and V of y2, a nonzero map
    exists iff W is nonempty and at each boundary edge of W the arrow
    leaves W when the outer vertex lies in U, and enters W when it lies
    in V.
    """
    if not y1.n == y2.n == c.n:
        raise InvalidInputError(f"Paths and subchain disagree on n: {y1.n}, {y2.n}, {c.n}")
    lo, hi = max(y1.l, y2.l), min(y1.r, y2.r)
    if lo > hi:
        return False

    arrows = set(quiver_from_subchain(c).arrows)
    for inside, outside in ((lo, lo - 1), (hi, hi + 1)):
        if y1.l <= outside <= y1.r and (inside, outside) not in arrows:
            return False
        if y2.l <= outside <= y2.r and (outside, inside) not in arrows:
            return False
    return True


class ShiftKind(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class ShiftArrow:
    """An elementary shift between two paths of S."""
    source: PeakPath
    target: PeakPath
    kind: ShiftKind
    composition: tuple[int, ...]

    def intermediates(self) -> list[PeakPath]:
        """Paths visited by applying the unitary shifts in order."""
        pf = self.source.pair_form()
        visited = []
        for i in self.composition:
            pf = unitary_shift(pf, i)
            run = peak_run(pf)
            if run is None:
                raise InvariantBreach(
                    f"Shift {self} leaves S at f_{i}: {reassemble(pf)}"
                )
            visited.append(PeakPath(pf.n, *run))
        return visited

    def __str__(self) -> str:
        fs = "".join(f"f{i}" for i in self.composition)
        return f"{self.source.label()} -{fs}-> {self.target.label()}"


def shift_between(source: PeakPath, target: PeakPath) -> ShiftArrow:
    """
    The elementary shift moving one end of the support.

    Pairs leave the support from the outside in and join it from the
    inside out, so every intermediate stays in S.
    """
    if source.l != target.l and source.r != target.r:
        raise InvariantBreach(
            f"{source.label()} -> {target.label()} moves both ends of the support"
        )
    if source == target:
        raise InvariantBreach(f"Identity is not an elementary shift: {source.label()}")

    if source.l != target.l:
        kind = ShiftKind.LEFT
        if target.l > source.l:
            composition = tuple(range(source.l, target.l))
        else:
            composition = tuple(range(source.l - 1, target.l - 1, -1))
    else:
        kind = ShiftKind.RIGHT
        if target.r < source.r:
            composition = tuple(range(source.r, target.r, -1))
        else:
            composition = tuple(range(source.r + 1, target.r + 1))
    return ShiftArrow(source, target, kind, composition)


@dataclass(frozen=True)
class ARQuiver:
    """
    Auslander-Reiten quiver on paths of S.

    arrows and translate hold vertex indices; translate pairs are
    (M, tau M).
    """
    n: int
    sinks: tuple[int, ...]
    sources: tuple[int, ...]
    vertices: tuple[PeakPath, ...]
    arrows: tuple[tuple[int, int], ...]
    translate: tuple[tuple[int, int], ...]

    def index(self, y: PeakPath) -> int:
        try:
            return self.vertices.index(y)
        except ValueError:
            raise InvalidInputError(f"{y.label()} is not a vertex of this quiver")

    def tau(self, y: PeakPath) -> Optional[PeakPath]:
        i = self.index(y)
        for v, w in self.translate:
            if v == i:
                return self.vertices[w]
        return None

    def successors(self, y: PeakPath) -> list[PeakPath]:
        i = self.index(y)
        return [self.vertices[t] for s, t in self.arrows if s == i]

    def predecessors(self, y: PeakPath) -> list[PeakPath]:
        i = self.index(y)
        return [self.vertices[s] for s, t in self.arrows if t == i]

    def projectives(self) -> list[PeakPath]:
        moved = {v for v, _ in self.translate}
        return [y for i, y in enumerate(self.vertices) if i not in moved]

    def injectives(self) -> list[PeakPath]:
        hit = {w for _, w in self.translate}
        return [y for i, y in enumerate(self.vertices) if i not in hit]

    def arrow_set(self) -> set[tuple[PeakPath, PeakPath]]:
        return {(self.vertices[s], self.vertices[t]) for s, t in self.arrows}

    def tau_map(self) -> dict[PeakPath, PeakPath]:
        return {self.vertices[v]: self.vertices[w] for v, w in self.translate}

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.arrow_set())
        return g

    def meshes_commute(self) -> bool:
        """Arrow sources into M match arrow targets out of tau M, as multisets."""
        for v, w in self.translate:
            into = Counter(s for s, t in self.arrows if t == v)
            out_of = Counter(t for s, t in self.arrows if s == w)
            if into != out_of:
                return False
        return True

    def dimension_additive(self) -> bool:
        """dim M + dim tau M equals the sum over the middle of the mesh."""
        m = self.n - 1

        def dim(y):
            return interval_indicator(m, y.l, y.r)

        for v, w in self.translate:
            middle = [self.vertices[s] for s, t in self.arrows if t == v]
            lhs = [a + b for a, b in zip(dim(self.vertices[v]), dim(self.vertices[w]))]
            rhs = [sum(col) for col in zip(*(dim(y) for y in middle))] or [0] * m
            if lhs != rhs:
                return False
        return True

    def restrict(self, keep: set[PeakPath]) -> "ARQuiver":
        """Full subquiver on keep; translate pairs need both ends kept."""
        old = [i for i, y in enumerate(self.vertices) if y in keep]
        new_index = {i: k for k, i in enumerate(old)}
        return ARQuiver(
            n=self.n,
            sinks=self.sinks,
            sources=self.sources,
            vertices=tuple(self.vertices[i] for i in old),
            arrows=tuple(
                (new_index[s], new_index[t]) for s, t in self.arrows
                if s in new_index and t in new_index
            ),
            translate=tuple(
                (new_index[v], new_index[w]) for v, w in self.translate
                if v in new_index and w in new_index
            ),
        )

    def to_dot(self) -> str:
        lines = ["digraph ARQuiver {", "  rankdir=LR;"]
        for i, y in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{y.label()}"];')
        for s, t in self.arrows:
            lines.append(f"  v{s} -> v{t};")
        for v, w in self.translate:
            lines.append(f"  v{v} -> v{w} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sinks": list(self.sinks),
            "sources": list(self.sources),
            "vertices": [{"l": y.l, "r": y.r} for y in self.vertices],
            "arrows": [[s, t] for s, t in self.arrows],
            "tau": [[v, w] for v, w in self.translate],
        }


def _knit(q: QuiverA, n: int) -> tuple[dict, list, list]:
    """
    tau^-1 orbits of the projectives, then the arrows between them.

    Returns (orbit mapping (x, k) to the support of tau^-k P(x), arrows
    and translate pairs as pairs of such keys).
    """
    inverse = inverse_coxeter_matrix(q)
    orbit: dict[tuple[int, int], tuple[int, int]] = {}
    for x in range(1, q.m + 1):
        dims = interval_indicator(q.m, *q.reachable(x))
        k = 0
        while True:
            orbit[(x, k)] = interval_of(dims)
            image = apply_matrix(inverse, dims)
            if min(image) < 0:
                break
            try:
                interval_of(image)
            except InvalidInputError:
                raise InvariantBreach(f"tau^-1 of {dims} on {q} is {image}, not an interval")
            dims = image
            k += 1
            if k > n * n:
                raise InvariantBreach(f"tau^-1 orbit of P({x}) on {q} does not terminate")
        logger.debug(f"Orbit of P({x}) on {q} has length {k + 1}")

    arrows = []
    for x, y in q.arrows:
        k = 0
        while (y, k) in orbit or (x, k) in orbit:
            if (y, k) in orbit and (x, k) in orbit:
                arrows.append(((y, k), (x, k)))
            if (x, k) in orbit and (y, k + 1) in orbit:
                arrows.append(((x, k), (y, k + 1)))
            k += 1

    translate = [((x, k), (x, k - 1)) for (x, k) in orbit if k > 0]
    return orbit, arrows, translate


@lru_cache(maxsize=256)
def ar_quiver(c: AdmissibleSubchain) -> ARQuiver:
    """Knit the AR quiver from the projectives with the inverse Coxeter matrix."""
    require_valid(c)
    q = quiver_from_subchain(c)
    orbit, arrows, translate = _knit(q, c.n)

    keys = sorted(orbit, key=lambda key: (key[1], orbit[key]))
    position = {key: i for i, key in enumerate(keys)}
    vertices = tuple(PeakPath(c.n, *orbit[key]) for key in keys)
    if len(set(vertices)) != len(vertices) or len(vertices) != c.n * (c.n - 1) // 2:
        raise InvariantBreach(
            f"Knitting {format_chain(c)} gave {len(vertices)} vertices, "
            f"expected {c.n * (c.n - 1) // 2} distinct ones"
        )

    result = ARQuiver(
        n=c.n,
        sinks=c.sinks,
        sources=c.sources,
        vertices=vertices,
        arrows=tuple(sorted((position[s], position[t]) for s, t in arrows)),
        translate=tuple(sorted((position[v], position[w]) for v, w in translate)),
    )
    logger.debug(
        f"AR quiver of {format_chain(c)}: {len(vertices)} vertices, {len(arrows)} arrows"
    )
    return result


def es_successors(y: PeakPath, c: AdmissibleSubchain) -> list[ShiftArrow]:
    """Elementary shifts out of y, one per AR arrow, left before right."""
    quiver = ar_quiver(require_valid(c))
    shifts = [shift_between(y, target) for target in quiver.successors(y)]
    kinds = [s.kind for s in shifts]
    if len(set(kinds)) != len(kinds):
        raise InvariantBreach(f"Two shifts of the same kind out of {y.label()}")
    return sorted(shifts, key=lambda s: s.kind != ShiftKind.LEFT)


def shift_graph_on_S(c: AdmissibleSubchain) -> nx.DiGraph:
    """Elementary shifts on S as a graph; edges carry the ShiftArrow."""
    g = nx.DiGraph()
    for y in enumerate_S(c.n):
        g.add_node(y)
        for shift in es_successors(y, c):
            g.add_edge(shift.source, shift.target, shift=shift)
    return g


def connected(c: AdmissibleSubchain) -> bool:
    return nx.is_weakly_connected(ar_quiver(require_valid(c)).graph())
