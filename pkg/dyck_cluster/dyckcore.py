"""
Dyck words and their pair decomposition.

A Dyck path of semilength n is stored as its step word over {U, D}. Every
such word factors as U w_1 ... w_{n-1} D with two-letter pairs w_i; the
paths whose pairs are all UD/DU with a single contiguous UD run are the
set S, parametrised here by PeakPath(n, l, r).
"""

import logging
import os
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional

import networkx as nx

from .errors import (
    IndexRangeError, InvalidInputError, InvalidShiftError, SizeLimitError
)

logger = logging.getLogger(__name__)

UP = "U"
DOWN = "D"
PAIRS = ("UD", "DU", "UU", "DD")

# Catalan(14) is about 2.6M words
DEFAULT_MAX_N = 14
MAX_N_ENV = "DYCK_CLUSTER_MAX_N"


def configured_max_n() -> int:
    """Enumeration cap, honouring the DYCK_CLUSTER_MAX_N override."""
    raw = os.environ.get(MAX_N_ENV)
    if not raw:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise InvalidInputError(f"{MAX_N_ENV} must be an integer, got {raw!r}")


def validate_dyck(steps: str) -> bool:
    """
    Check the two Dyck-word conditions on a step word.

    Raises InvalidInputError for odd length or symbols other than U/D;
    returns False when the word is well-formed but not a Dyck word.
    """
    if not steps:
        raise InvalidInputError("Empty step word")
    if len(steps) % 2:
        raise InvalidInputError(f"Step word has odd length {len(steps)}: {steps}")

    height = 0
    for step in steps:
        if step == UP:
            height += 1
        elif step == DOWN:
            height -= 1
        else:
            raise InvalidInputError(f"Foreign symbol {step!r} in {steps}")
        if height < 0:
            return False
    return height == 0


@dataclass(frozen=True)
class DyckPath:
    """A Dyck path given by its step word, e.g. "UDUUDUDDUD"."""
    steps: str

    def __post_init__(self):
        if not validate_dyck(self.steps):
            raise InvalidInputError(f"Not a Dyck path: {self.steps}")

    @property
    def n(self) -> int:
        return len(self.steps) // 2

    def __str__(self) -> str:
        return self.steps


@dataclass(frozen=True)
class PairForm:
    """Inner pairs w_1 ... w_{n-1} of U w_1 ... w_{n-1} D."""
    n: int
    pairs: tuple[str, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"Semilength must be positive, got {self.n}")
        if len(self.pairs) != self.n - 1:
            raise InvalidInputError(
                f"Expected {self.n - 1} pairs for n={self.n}, got {len(self.pairs)}"
            )
        for pair in self.pairs:
            if pair not in PAIRS:
                raise InvalidInputError(f"Invalid pair {pair!r}")
        if not validate_dyck(_join(self.pairs)):
            raise InvalidInputError(f"Pairs {'.'.join(self.pairs)} do not reassemble to a Dyck path")

    def __str__(self) -> str:
        return ".".join(self.pairs)


@dataclass(frozen=True, order=True)
class PeakPath:
    """
    The member of S with UD pairs on [l, r] and DU pairs elsewhere.

    Field order makes the natural sort (n, l, r).
    """
    n: int
    l: int
    r: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInputError(f"PeakPath needs n >= 2, got {self.n}")
        if not 1 <= self.l <= self.r <= self.n - 1:
            raise IndexRangeError(
                f"Need 1 <= l <= r <= {self.n - 1}, got l={self.l}, r={self.r}"
            )

    @property
    def support(self) -> range:
        return range(self.l, self.r + 1)

    @property
    def pairs(self) -> tuple[str, ...]:
        return tuple(
            "UD" if self.l <= i <= self.r else "DU" for i in range(1, self.n)
        )

    @property
    def steps(self) -> str:
        return _join(self.pairs)

    def pair_form(self) -> PairForm:
        return PairForm(self.n, self.pairs)

    def to_dyck(self) -> DyckPath:
        return DyckPath(self.steps)

    def label(self) -> str:
        return f"[{self.l},{self.r}]"

    def __str__(self) -> str:
        return self.steps


def _join(pairs: Iterable[str]) -> str:
    return UP + "".join(pairs) + DOWN


def parse_path(text: str) -> DyckPath:
    """Parse a step word, tolerating surrounding whitespace and lower case."""
    return DyckPath(text.strip().upper())


def pair_decompose(p: DyckPath) -> PairForm:
    """Split U w_1 ... w_{n-1} D into its pairs w_i = y_{2i} y_{2i+1}."""
    steps = p.steps
    pairs = tuple(steps[2 * i - 1:2 * i + 1] for i in range(1, p.n))
    return PairForm(p.n, pairs)


def reassemble(pf: PairForm) -> DyckPath:
    """Inverse of pair_decompose."""
    return DyckPath(_join(pf.pairs))


def support(pf: PairForm) -> frozenset[int]:
    """Indices q whose pair is UD or UU."""
    return frozenset(
        i for i, pair in enumerate(pf.pairs, start=1) if pair in ("UD", "UU")
    )


def peak_run(pf: PairForm) -> Optional[tuple[int, int]]:
    """
    Return (l, r) when the pairs are one contiguous UD run on [l, r] with
    DU everywhere else, otherwise None.
    """
    if not pf.pairs or any(pair not in ("UD", "DU") for pair in pf.pairs):
        return None
    ups = [i for i, pair in enumerate(pf.pairs, start=1) if pair == "UD"]
    if not ups or ups[-1] - ups[0] + 1 != len(ups):
        return None
    return ups[0], ups[-1]


def peak_path_from_pairs(pf: PairForm) -> PeakPath:
    run = peak_run(pf)
    if run is None:
        raise InvalidInputError(f"{reassemble(pf)} does not have exactly {pf.n - 1} peaks")
    return PeakPath(pf.n, *run)


def to_peak_path(p: DyckPath) -> PeakPath:
    return peak_path_from_pairs(pair_decompose(p))


def count_peaks(p: DyckPath) -> int:
    """Occurrences of the factor UD."""
    return p.steps.count("UD")


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def narayana(n: int, k: int) -> int:
    """Number of Dyck paths of semilength n with exactly k peaks."""
    if n < 1 or not 1 <= k <= n:
        return 0
    return comb(n, k) * comb(n, k - 1) // n


def enumerate_dyck(
    n: int,
    max_n: Optional[int] = None,
    peaks: Optional[int] = None,
) -> list[DyckPath]:
    """
    All Dyck paths of semilength n in lexicographic order (D < U).

    Args:
        n: Semilength
        max_n: Enumeration cap (default: configured_max_n())
        peaks: Keep only paths with exactly this many peaks

    Returns:
        List of DyckPath
    """
    if n < 1:
        raise InvalidInputError(f"Semilength must be positive, got {n}")
    limit = configured_max_n() if max_n is None else max_n
    if n > limit:
        raise SizeLimitError(f"n={n} exceeds the enumeration bound {limit}")

    words: list[str] = []
    buf: list[str] = []

    def extend(ups: int, downs: int) -> None:
        if ups == n and downs == n:
            words.append("".join(buf))
            return
        # D sorts before U
        if downs < ups:
            buf.append(DOWN)
            extend(ups, downs + 1)
            buf.pop()
        if ups < n:
            buf.append(UP)
            extend(ups + 1, downs)
            buf.pop()

    extend(0, 0)
    if peaks is not None:
        words = [w for w in words if w.count("UD") == peaks]
    logger.debug(f"Enumerated {len(words)} Dyck paths for n={n}")
    return [DyckPath(w) for w in words]


def enumerate_S(n: int) -> list[PeakPath]:
    """The n(n-1)/2 paths with exactly n-1 peaks, ordered by (l, r)."""
    if n < 2:
        raise InvalidInputError(f"S needs n >= 2, got {n}")
    return [PeakPath(n, l, r) for l in range(1, n) for r in range(l, n)]


def unitary_shift(pf: PairForm, i: int) -> PairForm:
    """
    Reverse pair i (f(ab) = ba) and leave the others alone.

    Raises InvalidShiftError if the result is not a Dyck path.
    """
    if not 1 <= i <= pf.n - 1:
        raise IndexRangeError(f"Shift index {i} outside 1..{pf.n - 1}")
    pairs = list(pf.pairs)
    pairs[i - 1] = pairs[i - 1][::-1]
    if not validate_dyck(_join(pairs)):
        raise InvalidShiftError(f"f_{i} takes {reassemble(pf)} outside D_{2 * pf.n}")
    return PairForm(pf.n, tuple(pairs))


def shift_graph(n: int, max_n: Optional[int] = None) -> nx.DiGraph:
    """
    Unitary shifts on all of D_{2n} that turn a UD pair into DU.

    Nodes are step words; each edge carries the shifted index as "index".
    """
    graph = nx.DiGraph()
    for path in enumerate_dyck(n, max_n=max_n):
        graph.add_node(path.steps)
        pf = pair_decompose(path)
        for i, pair in enumerate(pf.pairs, start=1):
            if pair != "UD":
                continue
            target = reassemble(unitary_shift(pf, i))
            graph.add_edge(path.steps, target.steps, index=i)
    return graph


def is_irreversible(graph: nx.DiGraph) -> bool:
    """An arrow relation is irreversible when it has no directed cycle."""
    return nx.is_directed_acyclic_graph(graph)
