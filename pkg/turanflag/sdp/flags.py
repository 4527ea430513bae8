"""
Turanflag Flags - Types, flags and exact pair-density matrices

A type of order s is a fully labeled s-vertex graph; a flag of order m over
it is an m-vertex graph whose first s vertices induce the type. For an
admissible graph H of order n = 2m - s, entry (a, b) of the pair-density
matrix is the probability that a random injective labeling of s vertices
of H induces the type and a random split of the remaining vertices into two
(m - s)-sets induces flags a and b.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, perm
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from ..errors import GraphError
from ..core.hypergraph import ThreeGraph, canonical_form, induced_subgraph

logger = logging.getLogger(__name__)

SUPPORTED_ORDERS = (5, 6, 7)


@dataclass(frozen=True)
class TypeSigma:
    """Fully labeled type graph and its position in the enumeration"""

    graph: ThreeGraph
    index: int

    @property
    def order(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class Flag:
    """Flag graph in label-preserving canonical form; first ``labeled`` vertices carry the type"""

    graph: ThreeGraph
    labeled: int


@dataclass(frozen=True)
class FlagContext:
    """A type together with its frozen list of flags"""

    sigma: TypeSigma
    flags: Tuple[Flag, ...]
    _lookup: Dict[int, int] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not self.flags:
            raise GraphError(f"type {self.sigma.index} has no flags")
        s = self.sigma.order
        m = self.flags[0].graph.n
        lookup = {}
        for position, flag in enumerate(self.flags):
            if flag.graph.n != m or flag.labeled != s:
                raise GraphError(f"flags of type {self.sigma.index} have inconsistent orders")
            if induced_subgraph(flag.graph, range(s)) != self.sigma.graph:
                raise GraphError(f"flag {flag.graph} does not extend type {self.sigma.graph}")
            key = canonical_form(flag.graph, fixed=s).mask
            if key in lookup:
                raise GraphError(f"duplicate flag {flag.graph} in type {self.sigma.index}")
            lookup[key] = position
        object.__setattr__(self, "_lookup", lookup)

    @classmethod
    def from_graphs(cls, type_graph: ThreeGraph, flag_graphs: Sequence[ThreeGraph],
                    index: int) -> "FlagContext":
        """Build a context from explicit graphs, keeping the given flag order"""
        s = type_graph.n
        return cls(TypeSigma(type_graph, index), tuple(Flag(g, s) for g in flag_graphs))

    @property
    def s(self) -> int:
        return self.sigma.order

    @property
    def m(self) -> int:
        return self.flags[0].graph.n

    def __len__(self) -> int:
        return len(self.flags)

    def flag_index(self, G: ThreeGraph) -> Optional[int]:
        """Position of the flag isomorphic to G (labels preserved), if listed"""
        return self._lookup.get(canonical_form(G, fixed=self.s).mask)


@dataclass(frozen=True)
class PairDensityMatrix:
    """Symmetric matrix of exact pair densities of one type in one host graph"""

    sigma: TypeSigma
    entries: Tuple[Tuple[Fraction, ...], ...]
    host: ThreeGraph

    def __len__(self) -> int:
        return len(self.entries)

    def total(self) -> Fraction:
        return sum((v for row in self.entries for v in row), Fraction(0))


def type_sizes(n: int) -> List[Tuple[int, int]]:
    """(s, m) pairs with 2m - s = n, 1 <= s <= n - 2"""
    start = 1 if n % 2 else 2
    return [(s, (n + s) // 2) for s in range(start, n - 1, 2)]


def _occurring(admissible: Iterable[ThreeGraph], k: int) -> Set[int]:
    """Canonical masks of all k-vertex induced subgraphs of the admissible graphs"""
    found: Set[int] = set()
    for H in admissible:
        for A in itertools.combinations(range(H.n), k):
            found.add(canonical_form(induced_subgraph(H, A)).mask)
    return found


def enumerate_types_and_flags(n: int, admissible: Sequence[ThreeGraph]) -> List[FlagContext]:
    """
    All realizable types and their flags for admissible graphs of order n.

    Args:
        n: Order of the admissible graphs, one of 5, 6, 7
        admissible: The admissible list for the family at hand

    Returns:
        Contexts ordered by type order, then type mask; flags sorted by
        label-preserving canonical mask
    """
    if n not in SUPPORTED_ORDERS:
        raise GraphError(f"flag enumeration supports n in {SUPPORTED_ORDERS}, got {n}")
    contexts: List[FlagContext] = []
    for s, m in type_sizes(n):
        type_classes = _occurring(admissible, s)
        flag_classes = _occurring(admissible, m)
        base = comb(s, 3)
        for type_mask in range(1 << base):
            sigma_graph = ThreeGraph(s, type_mask)
            if canonical_form(sigma_graph).mask not in type_classes:
                continue
            flag_masks = set()
            for extension in range(1 << (comb(m, 3) - base)):
                G = ThreeGraph(m, type_mask | (extension << base))
                if canonical_form(G).mask in flag_classes:
                    flag_masks.add(canonical_form(G, fixed=s).mask)
            sigma = TypeSigma(sigma_graph, len(contexts))
            flags = tuple(Flag(ThreeGraph(m, f), s) for f in sorted(flag_masks))
            contexts.append(FlagContext(sigma, flags))
        logger.info("order %d types: %d, flag order %d", s,
                    sum(1 for c in contexts if c.s == s), m)
    return contexts


def pair_densities(contexts: Sequence[FlagContext], H: ThreeGraph) -> List[PairDensityMatrix]:
    """
    Pair-density matrices of every context in one host graph.

    Contexts sharing a type order are handled in one pass over the injective
    labelings of H.
    """
    n = H.n
    counts = {id(ctx): [[0] * len(ctx) for _ in range(len(ctx))] for ctx in contexts}
    by_order: Dict[Tuple[int, int], Dict[int, FlagContext]] = {}
    for ctx in contexts:
        if 2 * ctx.m - ctx.s != n:
            raise GraphError(f"type order {ctx.s} with flag order {ctx.m} does not fit n = {n}")
        by_order.setdefault((ctx.s, ctx.m), {})
        by_order[(ctx.s, ctx.m)].setdefault(ctx.sigma.graph.mask, ctx)

    for (s, m), lookup in by_order.items():
        for labeled in itertools.permutations(range(n), s):
            ctx = lookup.get(induced_subgraph(H, labeled).mask)
            if ctx is None:
                continue
            table = counts[id(ctx)]
            rest = [v for v in range(n) if v not in labeled]
            for half in itertools.combinations(rest, m - s):
                other = tuple(v for v in rest if v not in half)
                a = ctx.flag_index(induced_subgraph(H, labeled + half))
                if a is None:
                    continue
                b = ctx.flag_index(induced_subgraph(H, labeled + other))
                if b is None:
                    continue
                table[a][b] += 1

    result = []
    for ctx in contexts:
        total = perm(n, ctx.s) * comb(n - ctx.s, ctx.m - ctx.s)
        table = counts[id(ctx)]
        size = len(ctx)
        entries = tuple(
            tuple(Fraction(table[a][b] + table[b][a], 2 * total) for b in range(size))
            for a in range(size)
        )
        result.append(PairDensityMatrix(ctx.sigma, entries, H))
    return result


def pair_density_matrix(sigma: TypeSigma, flags: Sequence[Flag], H: ThreeGraph) -> PairDensityMatrix:
    return pair_densities([FlagContext(sigma, tuple(flags))], H)[0]


def edge_density(H: ThreeGraph) -> Fraction:
    """e(H) / C(n, 3)"""
    if H.n < 3:
        raise GraphError("edge density needs at least 3 vertices")
    return Fraction(H.num_edges, comb(H.n, 3))
