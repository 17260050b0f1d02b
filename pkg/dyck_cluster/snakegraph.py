"""
Snake graphs of admissible subchains and the words read off their
perfect matchings.

The snake of a subchain for n has n-1 tiles. Tile 1 is the unit square at
the origin; each step places the next tile to the right or above. Tile i
(1 < i < n-1) continues straight exactly when i is in the subchain.

Edges carry letters of the alphabet H_n. At the junction t between tiles
t and t+1, tile t has U1^t on the edge facing the step (north for a step
right, east for a step up) and tile t+1 has U2^t on the edge facing back
(south, resp. west). A perfect matching uses at most one of the two, and
the word lists per junction the letter used, or E.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import networkx as nx

from .dyckcore import DyckPath, PeakPath
from .errors import IndexRangeError, InvalidInputError, InvariantBreach
from .laurent import LaurentPoly, constant, mul, variable
from .shiftcat import AdmissibleSubchain, require_valid

logger = logging.getLogger(__name__)

Point = tuple[int, int]
Edge = tuple[Point, Point]


class Step(str, Enum):
    RIGHT = "R"
    ABOVE = "U"


class LetterKind(str, Enum):
    E = "E"
    U1 = "U1"
    U2 = "U2"


@dataclass(frozen=True, order=True)
class Letter:
    kind: LetterKind
    index: int = 0

    def weight_index(self) -> int:
        """Subscript m of x_m contributed by the letter (0 means 1)."""
        if self.kind == LetterKind.U1:
            return self.index + 1
        if self.kind == LetterKind.U2:
            return self.index
        return 0

    def __str__(self) -> str:
        if self.kind == LetterKind.E:
            return "E"
        return f"{self.kind.value}^{self.index}"


E = Letter(LetterKind.E)


@dataclass(frozen=True, order=True)
class HWord:
    """One letter per junction 1..n-2."""
    n: int
    letters: tuple[Letter, ...]

    def __post_init__(self):
        if len(self.letters) != self.n - 2:
            raise InvalidInputError(
                f"A word for n={self.n} has {self.n - 2} letters, got {len(self.letters)}"
            )
        for i, letter in enumerate(self.letters, start=1):
            if letter.kind != LetterKind.E and letter.index != i:
                raise InvalidInputError(f"Letter {letter} cannot sit at position {i}")

    def __str__(self) -> str:
        return ".".join(str(letter) for letter in self.letters)


def parse_letter(token: str) -> Letter:
    token = token.strip()
    if token == "E":
        return E
    kind, _, index = token.partition("^")
    if kind not in ("U1", "U2") or not index.isdigit():
        raise InvalidInputError(f"Unknown letter {token!r}")
    return Letter(LetterKind(kind), int(index))


def parse_word(text: str, n: int) -> HWord:
    """"U2^1.U1^2.U1^3" for n = 5; the empty string for n = 2."""
    tokens = text.strip().split(".") if text.strip() else []
    return HWord(n, tuple(parse_letter(t) for t in tokens))


def letter_path(sym: Letter, n: int) -> DyckPath:
    """
    The Dyck path of a letter of H_n.

    U1^i = U^{i+1} D^{i+1} (UD)^{n-i-1}, U2^i = (UD)^i U^{n-i} D^{n-i},
    E = U^n D^n.
    """
    if n < 2:
        raise InvalidInputError(f"H_n needs n >= 2, got {n}")
    if sym.kind == LetterKind.E:
        return DyckPath("U" * n + "D" * n)
    i = sym.index
    if not 1 <= i <= n - 2:
        raise InvalidInputError(f"{sym} is not a letter of H_{n}")
    if sym.kind == LetterKind.U1:
        return DyckPath("U" * (i + 1) + "D" * (i + 1) + "UD" * (n - i - 1))
    return DyckPath("UD" * i + "U" * (n - i) + "D" * (n - i))


def alphabet(n: int) -> list[Letter]:
    """E followed by U1^i and U2^i for i = 1..n-2."""
    letters = [E]
    for i in range(1, n - 1):
        letters += [Letter(LetterKind.U1, i), Letter(LetterKind.U2, i)]
    return letters


@dataclass(frozen=True)
class SnakeGraph:
    """
    Tiles first .. first+d-1 of a snake.

    lead and trail are the steps into the first and out of the last tile
    in the snake this one was cut from; they decide the end labels.
    """
    steps: tuple[Step, ...]
    first: int = 1
    lead: Optional[Step] = None
    trail: Optional[Step] = None

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(Step(s) for s in self.steps))

    @property
    def d(self) -> int:
        return len(self.steps) + 1

    def tiles(self) -> list[Point]:
        """Lower-left corners."""
        x, y = 0, 0
        corners = [(x, y)]
        for step in self.steps:
            if step == Step.RIGHT:
                x += 1
            else:
                y += 1
            corners.append((x, y))
        return corners

    def tile_edges(self, k: int) -> dict[str, Edge]:
        x, y = self.tiles()[k - 1]
        return {
            "S": ((x, y), (x + 1, y)),
            "N": ((x, y + 1), (x + 1, y + 1)),
            "W": ((x, y), (x, y + 1)),
            "E": ((x + 1, y), (x + 1, y + 1)),
        }

    def edges(self) -> list[Edge]:
        found = set()
        for k in range(1, self.d + 1):
            found.update(self.tile_edges(k).values())
        return sorted(found)

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_edges_from(self.edges())
        return g

    def is_straight(self, k: int) -> bool:
        """Tile k (1-based within this snake) continues in the same direction."""
        entry = self.steps[k - 2] if k > 1 else self.lead
        exit_ = self.steps[k - 1] if k < self.d else self.trail
        return entry is not None and entry == exit_

    def is_valid(self) -> bool:
        """Consecutive tiles share one edge, tiles two apart no edge, tiles further apart nothing."""
        edge_sets = [set(self.tile_edges(k).values()) for k in range(1, self.d + 1)]
        vertex_sets = [{p for e in edges for p in e} for edges in edge_sets]
        for a in range(self.d):
            for b in range(a + 1, self.d):
                shared = len(edge_sets[a] & edge_sets[b])
                if b == a + 1 and shared != 1:
                    return False
                if b == a + 2 and shared:
                    return False
                if b >= a + 3 and vertex_sets[a] & vertex_sets[b]:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "steps": [s.value for s in self.steps],
            "first": self.first,
            "lead": self.lead.value if self.lead else None,
            "trail": self.trail.value if self.trail else None,
        }


@dataclass(frozen=True, order=True)
class PerfectMatching:
    edges: tuple[Edge, ...] = ()

    def to_json(self) -> list:
        return [[list(a), list(b)] for a, b in self.edges]


def snake_from_subchain(c: AdmissibleSubchain, first_step: Step = Step.RIGHT) -> SnakeGraph:
    """
    Tiles 1..n-1; tile i with 1 < i < n-1 goes straight iff i is in c.
    """
    require_valid(c)
    members = set(c.elements)
    steps = [first_step] if c.n >= 3 else []
    for i in range(2, c.n - 1):
        prev = steps[-1]
        if i in members:
            steps.append(prev)
        else:
            steps.append(Step.ABOVE if prev == Step.RIGHT else Step.RIGHT)
    return SnakeGraph(tuple(steps))


def sub_snake(g: SnakeGraph, l: int, r: int) -> SnakeGraph:
    """Tiles l..r of g (positions within g), keeping the parent's labels."""
    if not 1 <= l <= r <= g.d:
        raise IndexRangeError(f"Tile range [{l},{r}] outside 1..{g.d}")
    return SnakeGraph(
        steps=g.steps[l - 1:r - 1],
        first=g.first + l - 1,
        lead=g.steps[l - 2] if l > 1 else g.lead,
        trail=g.steps[r - 1] if r < g.d else g.trail,
    )


def support_snake(y: PeakPath, c: AdmissibleSubchain) -> SnakeGraph:
    if y.n != c.n:
        raise InvalidInputError(f"Path has n={y.n}, subchain has n={c.n}")
    return sub_snake(snake_from_subchain(c), y.l, y.r)


def edge_letters(g: SnakeGraph) -> dict[Edge, Letter]:
    labels: dict[Edge, Letter] = {}
    for k in range(1, g.d + 1):
        t = g.first + k - 1
        edges = g.tile_edges(k)
        entry = g.steps[k - 2] if k > 1 else g.lead
        exit_ = g.steps[k - 1] if k < g.d else g.trail
        if entry is not None:
            side = "S" if entry == Step.RIGHT else "W"
            labels[edges[side]] = Letter(LetterKind.U2, t - 1)
        if exit_ is not None:
            side = "N" if exit_ == Step.RIGHT else "E"
            labels[edges[side]] = Letter(LetterKind.U1, t)
    return labels


def enumerate_matchings(g: SnakeGraph) -> list[PerfectMatching]:
    """All perfect matchings, ordered by their sorted edge lists."""
    graph = g.graph()
    vertices = sorted(graph.nodes)
    neighbours = {v: sorted(graph.neighbors(v)) for v in vertices}
    matched: set[Point] = set()
    chosen: list[Edge] = []
    found: list[PerfectMatching] = []

    def search() -> None:
        free = next((v for v in vertices if v not in matched), None)
        if free is None:
            found.append(PerfectMatching(tuple(sorted(chosen))))
            return
        matched.add(free)
        for w in neighbours[free]:
            if w in matched:
                continue
            matched.add(w)
            chosen.append(tuple(sorted((free, w))))
            search()
            chosen.pop()
            matched.discard(w)
        matched.discard(free)

    search()
    return sorted(found)


def matching_count(g: SnakeGraph) -> int:
    """
    Number of perfect matchings by the two-state transfer recurrence.

    a counts matchings of tiles 1..k; b those that leave the far edge of
    tile k free for the next tile.
    """
    a, b = 2, 1
    for k in range(2, g.d + 1):
        a, b = a + b, (a if g.is_straight(k) else b)
    return a


def is_matching_of(p: PerfectMatching, g: SnakeGraph) -> bool:
    graph = g.graph()
    if any(not graph.has_edge(*e) for e in p.edges):
        return False
    return nx.is_perfect_matching(graph, set(p.edges))


def _word(p: PerfectMatching, g: SnakeGraph, n: int) -> HWord:
    labels = edge_letters(g)
    letters = [E] * (n - 2)
    for edge in p.edges:
        letter = labels.get(edge)
        if letter is None:
            continue
        if not 1 <= letter.index <= n - 2:
            raise InvariantBreach(f"Letter {letter} out of range for n={n}")
        if letters[letter.index - 1] != E:
            raise InvariantBreach(
                f"Matching uses two labelled edges at junction {letter.index}"
            )
        letters[letter.index - 1] = letter
    return HWord(n, tuple(letters))


def word_from_matching(
    p: PerfectMatching,
    g: SnakeGraph,
    c: AdmissibleSubchain,
) -> HWord:
    """Read the word of a matching of g, a snake of c or a piece of one."""
    if not is_matching_of(p, g):
        raise InvalidInputError("Edge set is not a perfect matching of the snake graph")
    if g.first + g.d - 1 > c.n - 1:
        raise InvalidInputError(f"Snake tiles exceed the {c.n - 1} tiles of the subchain")
    return _word(p, g, c.n)


def matching_weight(p: PerfectMatching, g: SnakeGraph, nvars: int) -> LaurentPoly:
    """Product of x_m over the labelled edges of p."""
    labels = edge_letters(g)
    weight = constant(1, nvars)
    for edge in p.edges:
        letter = labels.get(edge)
        if letter is not None and letter.weight_index():
            weight = mul(weight, variable(letter.weight_index(), nvars))
    return weight


def words_X_C(c: AdmissibleSubchain) -> list[HWord]:
    """Distinct words of the matchings of the subchain's snake, sorted."""
    g = snake_from_subchain(c)
    return sorted({_word(p, g, c.n) for p in enumerate_matchings(g)})


def restricted_words(y: PeakPath, c: AdmissibleSubchain) -> list[HWord]:
    """Distinct words of the matchings of the snake over y's support."""
    g = support_snake(y, c)
    return sorted({_word(p, g, c.n) for p in enumerate_matchings(g)})


def compatibility_relation(c: AdmissibleSubchain) -> list[tuple[str, str]]:
    """Letter pairs seen at neighbouring positions across X_C."""
    pairs = set()
    for word in words_X_C(c):
        for a, b in zip(word.letters, word.letters[1:]):
            pairs.add((str(a), str(b)))
    return sorted(pairs)


def reflect(g: SnakeGraph) -> SnakeGraph:
    """Mirror in the diagonal: right and up steps swap."""
    def swap(step):
        if step is None:
            return None
        return Step.ABOVE if step == Step.RIGHT else Step.RIGHT

    return replace(
        g,
        steps=tuple(swap(s) for s in g.steps),
        lead=swap(g.lead),
        trail=swap(g.trail),
    )
