"""
Cluster variables of type A computed two ways.

The mutation engine explores the exchange graph from the initial seed of a
quiver; the Dyck-path formula sums matching weights of the snake over a
path's support and divides by the support monomial. verify_bijection
compares the two.
"""

import logging
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .dyckcore import PeakPath, enumerate_S
from .errors import IndexRangeError, InvalidInputError, SizeLimitError
from .laurent import (
    LaurentPoly, add, canonical_string, constant, exact_div, has_positive_numerator,
    denominator_exponents, monomial, mul, variable, zero,
)
from .quiverrep import QuiverA, quiver_from_subchain
from .shiftcat import AdmissibleSubchain, format_chain, require_valid
from .snakegraph import (
    HWord, enumerate_matchings, matching_weight, support_snake
)

logger = logging.getLogger(__name__)

DEFAULT_SEED_CAP = 1_000_000
SEED_CAP_ENV = "DYCK_CLUSTER_SEED_CAP"


def configured_seed_cap() -> int:
    raw = os.environ.get(SEED_CAP_ENV)
    if not raw:
        return DEFAULT_SEED_CAP
    try:
        return int(raw)
    except ValueError:
        raise InvalidInputError(f"{SEED_CAP_ENV} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric integer matrix, rows and columns 1..size."""
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        size = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != size:
                raise InvalidInputError(f"Row {i + 1} has length {len(row)}, expected {size}")
        for i in range(size):
            for j in range(size):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise InvalidInputError(f"Not skew-symmetric at ({i + 1},{j + 1})")

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class Seed:
    matrix: ExchangeMatrix
    cluster: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if len(self.cluster) != self.matrix.size:
            raise InvalidInputError(
                f"Cluster of {len(self.cluster)} variables for a {self.matrix.size}x{self.matrix.size} matrix"
            )

    def key(self) -> frozenset[LaurentPoly]:
        """The unordered cluster; values compare by canonical form."""
        return frozenset(self.cluster)


def b_matrix_from_quiver(q: QuiverA) -> ExchangeMatrix:
    """b_ij = #(i -> j) - #(j -> i)."""
    entries = [[0] * q.m for _ in range(q.m)]
    for s, t in q.arrows:
        entries[s - 1][t - 1] += 1
        entries[t - 1][s - 1] -= 1
    return ExchangeMatrix(tuple(tuple(row) for row in entries))


def mutate_matrix(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """
    Matrix mutation at k.

    b'_ij = -b_ij if k is i or j, otherwise b_ij + sgn(b_ik) max(b_ik b_kj, 0).
    """
    if not 1 <= k <= b.size:
        raise IndexRangeError(f"Mutation index {k} outside 1..{b.size}")
    size = b.size
    rows = []
    for i in range(1, size + 1):
        row = []
        for j in range(1, size + 1):
            if i == k or j == k:
                row.append(-b[i, j])
            else:
                bik, bkj = b[i, k], b[k, j]
                sign = (bik > 0) - (bik < 0)
                row.append(b[i, j] + sign * max(bik * bkj, 0))
        rows.append(tuple(row))
    return ExchangeMatrix(tuple(rows))


def initial_seed(q: QuiverA) -> Seed:
    m = q.m
    return Seed(
        b_matrix_from_quiver(q),
        tuple(variable(i, m) for i in range(1, m + 1)),
    )


def exchange_binomial(s: Seed, k: int) -> LaurentPoly:
    """prod_{b_ik > 0} x_i^{b_ik} + prod_{b_ik < 0} x_i^{-b_ik}, empty products 1."""
    nvars = s.cluster[0].nvars
    positive = constant(1, nvars)
    negative = constant(1, nvars)
    for i in range(1, s.matrix.size + 1):
        bik = s.matrix[i, k]
        for _ in range(abs(bik)):
            if bik > 0:
                positive = mul(positive, s.cluster[i - 1])
            else:
                negative = mul(negative, s.cluster[i - 1])
    return add(positive, negative)


def mutate_seed(s: Seed, k: int) -> Seed:
    if not 1 <= k <= s.matrix.size:
        raise IndexRangeError(f"Mutation index {k} outside 1..{s.matrix.size}")
    cluster = list(s.cluster)
    cluster[k - 1] = exact_div(exchange_binomial(s, k), s.cluster[k - 1])
    return Seed(mutate_matrix(s.matrix, k), tuple(cluster))


def mutation_walk(s: Seed, ks: Iterable[int]) -> list[Seed]:
    """Seeds visited by mutating at each k in turn, starting seed included."""
    seeds = [s]
    for k in ks:
        seeds.append(mutate_seed(seeds[-1], k))
    return seeds


def enumerate_cluster_variables(
    q: QuiverA,
    seed_cap: Optional[int] = None,
) -> set[LaurentPoly]:
    """
    Breadth-first search of the exchange graph.

    Seeds are identified by their unordered cluster. Mutating back in the
    direction a seed was reached from is skipped.

    Raises:
        SizeLimitError: more than seed_cap seeds were discovered
    """
    cap = configured_seed_cap() if seed_cap is None else seed_cap
    start = initial_seed(q)
    seen = {start.key()}
    variables = set(start.cluster)
    queue: deque[tuple[Seed, int]] = deque([(start, 0)])

    while queue:
        seed, came_from = queue.popleft()
        for k in range(1, q.m + 1):
            if k == came_from:
                continue
            nxt = mutate_seed(seed, k)
            key = nxt.key()
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > cap:
                raise SizeLimitError(f"Exchange graph of {q} exceeds {cap} seeds")
            variables.add(nxt.cluster[k - 1])
            queue.append((nxt, k))

    logger.debug(f"Exchange graph of A_{q.m} ({q}): {len(seen)} seeds, {len(variables)} variables")
    return variables


def eta(y: PeakPath) -> LaurentPoly:
    """Product of x_i over the support of y."""
    nvars = y.n - 1
    exps = [0] * nvars
    for i in y.support:
        exps[i - 1] = 1
    return monomial(exps)


def word_monomial(v: HWord) -> LaurentPoly:
    """Product of x_m over the letters, E contributing 1."""
    nvars = v.n - 1
    exps = [0] * nvars
    for letter in v.letters:
        m = letter.weight_index()
        if m:
            exps[m - 1] += 1
    return monomial(exps)


def cluster_var_from_dyck(y: PeakPath, c: AdmissibleSubchain) -> LaurentPoly:
    """
    Sum of matching weights of the snake over y's support, over eta(y).

    Weights are summed per matching; for n = 2 both matchings of the one
    tile carry the empty word and the sum is 2.
    """
    require_valid(c)
    nvars = c.n - 1
    g = support_snake(y, c)
    total = zero(nvars)
    for p in enumerate_matchings(g):
        total = add(total, matching_weight(p, g, nvars))
    return exact_div(total, eta(y))


def dyck_cluster_variables(c: AdmissibleSubchain) -> dict[PeakPath, LaurentPoly]:
    return {y: cluster_var_from_dyck(y, c) for y in enumerate_S(c.n)}


@dataclass
class BijectionReport:
    """Outcome of comparing both engines on one subchain."""
    chain: str
    n: int
    dyck_count: int
    mutation_count: int
    equal: bool
    missing: list[str] = field(default_factory=list)
    extra: list[str] = field(default_factory=list)
    injective: bool = True
    positive: bool = True

    def to_json(self) -> dict:
        return {
            "subchain": self.chain,
            "n": self.n,
            "dyck_count": self.dyck_count,
            "mutation_count": self.mutation_count,
            "equal": self.equal,
            "missing": self.missing,
            "extra": self.extra,
            "injective": self.injective,
            "positive": self.positive,
        }


def verify_bijection(c: AdmissibleSubchain, seed_cap: Optional[int] = None) -> BijectionReport:
    """
    Compare Dyck-path variables with the non-initial mutation variables.

    missing lists mutation variables no path produced; extra lists Dyck
    variables the mutation engine never reached.
    """
    require_valid(c)
    dyck = dyck_cluster_variables(c)
    dyck_set = {canonical_string(x) for x in dyck.values()}

    q = quiver_from_subchain(c)
    initial = {canonical_string(x) for x in initial_seed(q).cluster}
    mutation_set = {
        canonical_string(x) for x in enumerate_cluster_variables(q, seed_cap)
    } - initial

    positive = all(
        has_positive_numerator(x) and denominator_exponents(x) == eta(y).terms[0][0]
        for y, x in dyck.items()
    )
    report = BijectionReport(
        chain=format_chain(c),
        n=c.n,
        dyck_count=len(dyck_set),
        mutation_count=len(mutation_set),
        equal=dyck_set == mutation_set,
        missing=sorted(mutation_set - dyck_set),
        extra=sorted(dyck_set - mutation_set),
        injective=len(dyck_set) == len(dyck),
        positive=positive,
    )
    if report.equal:
        logger.debug(f"{report.chain} (n={c.n}): {report.dyck_count} variables agree")
    else:
        logger.warning(
            f"{report.chain} (n={c.n}): {len(report.missing)} missing, {len(report.extra)} extra"
        )
    return report
