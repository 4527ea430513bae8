"""
Turanflag Hypergraph Core - 3-graphs, canonical forms, containment, blow-ups

A ``ThreeGraph`` stores its edges as a bitmask over the triples of
{0, ..., n-1} in colexicographic order: triple {i < j < k} has index
C(k,3) + C(j,2) + i. Indices do not depend on n, so adding a vertex never
renumbers existing triples.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import GraphError

logger = logging.getLogger(__name__)

MAX_CANONICAL_ORDER = 9
MAX_VERTICES = 256
LABELS = "123456789abcdefghijklmnopqrstuvwxyz"

Triple = Tuple[int, int, int]

# Bit offset splitting a canonical mask into two int64 words (C(9,3) = 84 bits)
_SPLIT = 42
# Orders whose full permutation tables are cached
_TABLE_ORDER = 8


def triple_index(i: int, j: int, k: int) -> int:
    """Colex index of the triple {i, j, k} (any order, distinct vertices)"""
    if i > j:
        i, j = j, i
    if j > k:
        j, k = k, j
        if i > j:
            i, j = j, i
    return comb(k, 3) + comb(j, 2) + i


@lru_cache(maxsize=None)
def triples(n: int) -> Tuple[Triple, ...]:
    """All triples of range(n) in colex order"""
    return tuple(
        (i, j, k) for k in range(n) for j in range(k) for i in range(j)
    )


@dataclass(frozen=True)
class ThreeGraph:
    """3-uniform hypergraph on vertices 0..n-1 with a colex edge bitmask"""

    n: int
    mask: int = 0

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if self.mask < 0 or self.mask >> comb(self.n, 3):
            raise GraphError(f"edge mask does not fit {self.n} vertices")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "ThreeGraph":
        """
        Build a graph from 0-based vertex triples.

        Args:
            n: Vertex count
            edges: Iterable of 3-element vertex sequences

        Returns:
            ThreeGraph
        """
        mask = 0
        for edge in edges:
            if len(set(edge)) != 3:
                raise GraphError(f"edge {tuple(edge)} does not have 3 distinct vertices")
            if not all(0 <= v < n for v in edge):
                raise GraphError(f"edge {tuple(edge)} out of range for {n} vertices")
            mask |= 1 << triple_index(*edge)
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "ThreeGraph":
        return cls(n, 0)

    @classmethod
    def complete(cls, n: int) -> "ThreeGraph":
        return cls(n, (1 << comb(n, 3)) - 1)

    def edge_indices(self) -> List[int]:
        mask = self.mask
        result = []
        while mask:
            low = mask & -mask
            result.append(low.bit_length() - 1)
            mask ^= low
        return result

    def edges(self) -> List[Triple]:
        all_triples = triples(self.n)
        return [all_triples[t] for t in self.edge_indices()]

    @property
    def num_edges(self) -> int:
        return bin(self.mask).count("1")

    def has_edge(self, i: int, j: int, k: int) -> bool:
        return bool(self.mask >> triple_index(i, j, k) & 1)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges() if v in e)

    def __str__(self) -> str:
        return format_graph(self)


# ============================================================================
# Text format  n:123,124,...
# ============================================================================

def parse_graph(text: str) -> ThreeGraph:
    """
    Parse ``n:e1,e2,...``.

    Each edge is three label characters from ``1-9a-z`` or, for large
    graphs, three 1-based decimal labels joined by ``-``.
    """
    text = text.strip()
    head, sep, body = text.partition(":")
    if not sep or not head.strip().isdigit():
        raise GraphError(f"malformed graph {text!r}: expected 'n:edges'")
    n = int(head)
    edges = []
    for token in filter(None, (t.strip() for t in body.split(","))):
        if "-" in token:
            parts = token.split("-")
            if len(parts) != 3 or not all(p.isdigit() for p in parts):
                raise GraphError(f"malformed edge {token!r}")
            edge = [int(p) - 1 for p in parts]
        else:
            if len(token) != 3 or any(c not in LABELS for c in token):
                raise GraphError(f"malformed edge {token!r}")
            edge = [LABELS.index(c) for c in token]
        if any(v < 0 or v >= n for v in edge):
            raise GraphError(f"edge {token!r} uses a vertex outside 1..{n}")
        if len(set(edge)) != 3:
            raise GraphError(f"edge {token!r} repeats a vertex")
        edges.append(edge)
    return ThreeGraph.from_edges(n, edges)


def format_graph(G: ThreeGraph) -> str:
    if G.n <= len(LABELS):
        body = ",".join("".join(LABELS[v] for v in e) for e in G.edges())
    else:
        body = ",".join("-".join(str(v + 1) for v in e) for e in G.edges())
    return f"{G.n}:{body}"


# ============================================================================
# Relabeling and induced subgraphs
# ============================================================================

def permute(G: ThreeGraph, perm: Sequence[int]) -> ThreeGraph:
    """Relabel vertex v as perm[v]"""
    if sorted(perm) != list(range(G.n)):
        raise GraphError("not a permutation of the vertex set")
    return ThreeGraph.from_edges(G.n, ((perm[i], perm[j], perm[k]) for i, j, k in G.edges()))


def induced_subgraph(G: ThreeGraph, vertices: Sequence[int]) -> ThreeGraph:
    """Subgraph induced on ``vertices``, with vertices[i] relabeled i"""
    mask = 0
    for t, (i, j, k) in enumerate(triples(len(vertices))):
        if G.mask >> triple_index(vertices[i], vertices[j], vertices[k]) & 1:
            mask |= 1 << t
    return ThreeGraph(len(vertices), mask)


# ============================================================================
# Canonical form: least edge mask over all vertex permutations
# ============================================================================

_B3 = np.array([comb(v, 3) for v in range(MAX_CANONICAL_ORDER + 1)], dtype=np.int64)
_B2 = np.array([comb(v, 2) for v in range(MAX_CANONICAL_ORDER + 1)], dtype=np.int64)


def _permutation_array(n: int, fixed: int, first: Optional[int] = None) -> np.ndarray:
    free = [v for v in range(fixed, n) if v != first]
    head = list(range(fixed)) + ([first] if first is not None else [])
    rows = [head + list(p) for p in itertools.permutations(free)]
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def _image_indices(perms: np.ndarray, tri: np.ndarray) -> np.ndarray:
    img = np.sort(perms[:, tri], axis=2)
    return _B3[img[..., 2]] + _B2[img[..., 1]] + img[..., 0]


def _weights(idx: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    one = np.int64(1)
    lo = np.where(idx < _SPLIT, np.left_shift(one, np.minimum(idx, _SPLIT - 1)), 0)
    hi = np.where(idx >= _SPLIT, np.left_shift(one, np.maximum(idx - _SPLIT, 0)), 0)
    return lo, hi


@lru_cache(maxsize=None)
def _weight_tables(n: int, fixed: int) -> Tuple[np.ndarray, np.ndarray]:
    tri = np.array(triples(n), dtype=np.int64).reshape(-1, 3)
    return _weights(_image_indices(_permutation_array(n, fixed), tri))


def _least(lo: np.ndarray, hi: np.ndarray) -> Tuple[int, int]:
    best_hi = hi.min()
    return int(best_hi), int(lo[hi == best_hi].min())


@lru_cache(maxsize=1 << 16)
def _canonical_mask(n: int, mask: int, fixed: int) -> int:
    edges = ThreeGraph(n, mask).edge_indices()
    if not edges or fixed >= n - 1:
        return mask
    if n <= _TABLE_ORDER:
        lo_t, hi_t = _weight_tables(n, fixed)
        hi, lo = _least(lo_t[:, edges].sum(axis=1), hi_t[:, edges].sum(axis=1))
        return (hi << _SPLIT) | lo
    # n = 9: walk the permutations in chunks keyed by the image of vertex `fixed`
    tri = np.array([triples(n)[t] for t in edges], dtype=np.int64)
    best = None
    for first in range(fixed, n):
        lo_w, hi_w = _weights(_image_indices(_permutation_array(n, fixed, first), tri))
        candidate = _least(lo_w.sum(axis=1), hi_w.sum(axis=1))
        if best is None or candidate < best:
            best = candidate
    return (best[0] << _SPLIT) | best[1]


def canonical_form(G: ThreeGraph, fixed: int = 0) -> ThreeGraph:
    """
    Canonical representative of G's isomorphism class.

    The least edge mask (as an integer) over all relabelings; with
    ``fixed = s`` only permutations fixing vertices 0..s-1 pointwise are
    used, which gives the label-preserving form of a flag.

    Args:
        G: Graph with at most 9 vertices
        fixed: Number of leading vertices kept in place

    Returns:
        ThreeGraph carrying the canonical mask
    """
    if G.n > MAX_CANONICAL_ORDER:
        raise GraphError(
            f"canonical form is limited to {MAX_CANONICAL_ORDER} vertices, got {G.n}"
        )
    return ThreeGraph(G.n, _canonical_mask(G.n, G.mask, fixed))


def is_isomorphic(G: ThreeGraph, H: ThreeGraph) -> bool:
    return G.n == H.n and G.num_edges == H.num_edges and canonical_form(G) == canonical_form(H)


def induced_subgraphs(G: ThreeGraph, k: int) -> List[ThreeGraph]:
    """The k-vertex induced subgraphs of G up to isomorphism, canonical-sorted"""
    if k > G.n:
        raise GraphError(f"cannot take {k}-vertex subgraphs of a {G.n}-vertex graph")
    found = {canonical_form(induced_subgraph(G, A)) for A in itertools.combinations(range(G.n), k)}
    return sorted(found, key=lambda H: H.mask)


def induced_density(H: ThreeGraph, G: ThreeGraph):
    """Probability that a random |V(H)|-subset of V(G) induces a copy of H"""
    k = H.n
    if k > G.n:
        raise GraphError(f"|V(H)| = {k} exceeds |V(G)| = {G.n}")
    target = canonical_form(H)
    hits = sum(
        1 for A in itertools.combinations(range(G.n), k)
        if canonical_form(induced_subgraph(G, A)) == target
    )
    return Fraction(hits, comb(G.n, k))


# ============================================================================
# Containment by backtracking over link bitmasks
# ============================================================================

@lru_cache(maxsize=1024)
def _link_table(G: ThreeGraph) -> Tuple[Tuple[int, ...], ...]:
    """links[a][b] = bitmask of vertices c with abc an edge (0 when a == b)"""
    links = [[0] * G.n for _ in range(G.n)]
    for i, j, k in G.edges():
        links[i][j] |= 1 << k
        links[j][i] |= 1 << k
        links[i][k] |= 1 << j
        links[k][i] |= 1 << j
        links[j][k] |= 1 << i
        links[k][j] |= 1 << i
    return tuple(tuple(row) for row in links)


@lru_cache(maxsize=4096)
def _search_plan(F: ThreeGraph, induced: bool, start: Optional[int]):
    k = F.n
    links = _link_table(F)
    degree = [F.degree(v) for v in range(k)]
    order = [start if start is not None else max(range(k), key=lambda v: (degree[v], -v))]
    remaining = set(range(k)) - set(order)
    while remaining:
        placed = order

        def closing(v: int) -> int:
            return sum(
                1 for a, b in itertools.combinations(placed, 2) if links[a][b] >> v & 1
            )

        v = max(sorted(remaining), key=lambda u: (closing(u), degree[u]))
        order.append(v)
        remaining.discard(v)

    edge_cons: List[List[Tuple[int, int]]] = [[] for _ in range(k)]
    gap_cons: List[List[Tuple[int, int]]] = [[] for _ in range(k)]
    for p, q, r in itertools.combinations(range(k), 3):
        if F.has_edge(order[p], order[q], order[r]):
            edge_cons[r].append((p, q))
        elif induced:
            gap_cons[r].append((p, q))
    return (
        tuple(order),
        tuple(tuple(c) for c in edge_cons),
        tuple(tuple(c) for c in gap_cons),
    )


def _find_map(G: ThreeGraph, F: ThreeGraph, mode: str,
              through: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    k = F.n
    if k == 0:
        return ()
    if G.n == 0 or (mode != "hom" and k > G.n):
        return None
    links = _link_table(G)
    full = (1 << G.n) - 1
    injective = mode != "hom"
    starts: Iterable[Optional[int]] = [None] if through is None else range(k)

    for start in starts:
        order, edge_cons, gap_cons = _search_plan(F, mode == "induced", start)
        img = [0] * k

        def extend(p: int, used: int) -> bool:
            cand = full & ~used if injective else full
            if p == 0 and through is not None:
                cand &= 1 << through
            for x, y in edge_cons[p]:
                cand &= links[img[x]][img[y]]
            for x, y in gap_cons[p]:
                cand &= ~links[img[x]][img[y]]
            while cand:
                low = cand & -cand
                img[p] = low.bit_length() - 1
                if p + 1 == k or extend(p + 1, used | low):
                    return True
                cand ^= low
            return False

        if extend(0, 0):
            mapping = [0] * k
            for p, v in enumerate(order):
                mapping[v] = img[p]
            return tuple(mapping)
    return None


def find_embedding(G: ThreeGraph, F: ThreeGraph, induced: bool = False,
                   through: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """
    Find an injection V(F) -> V(G) carrying edges of F onto edges of G.

    Args:
        G: Host graph
        F: Pattern graph
        induced: Also require non-edges to map onto non-edges
        through: If given, the image must contain this vertex of G

    Returns:
        Tuple mapping each F vertex to its image, or None
    """
    return _find_map(G, F, "induced" if induced else "subgraph", through)


def contains_subgraph(G: ThreeGraph, F: ThreeGraph) -> bool:
    return _find_map(G, F, "subgraph") is not None


def contains_induced(G: ThreeGraph, F: ThreeGraph) -> bool:
    return _find_map(G, F, "induced") is not None


# ============================================================================
# Blow-ups
# ============================================================================

def blowup_weighted(G: ThreeGraph, sizes: Sequence[int]) -> ThreeGraph:
    """
    Replace vertex i of G by a class of sizes[i] vertices.

    Classes are numbered consecutively; an edge abc of G becomes every
    triple with one vertex in each of the three classes.
    """
    if len(sizes) != G.n:
        raise GraphError(f"expected {G.n} class sizes, got {len(sizes)}")
    if any(s < 0 for s in sizes):
        raise GraphError("class sizes must be non-negative")
    total = sum(sizes)
    if total > MAX_VERTICES:
        raise GraphError(f"blow-up with {total} vertices exceeds the {MAX_VERTICES} vertex capacity")
    offsets = list(itertools.accumulate([0] + list(sizes)))
    classes = [range(offsets[i], offsets[i + 1]) for i in range(G.n)]
    mask = 0
    for a, b, c in G.edges():
        for x, y, z in itertools.product(classes[a], classes[b], classes[c]):
            mask |= 1 << triple_index(x, y, z)
    return ThreeGraph(total, mask)


def blowup(G: ThreeGraph, t: int) -> ThreeGraph:
    """The t-fold blow-up G(t)"""
    if t < 1:
        raise GraphError("blow-up factor must be positive")
    return blowup_weighted(G, [t] * G.n)


def blowup_contains(F: ThreeGraph, G: ThreeGraph) -> bool:
    """Decide F <= G, i.e. F is a subgraph of some blow-up of G"""
    return _find_map(G, F, "hom") is not None


def is_covering(F: ThreeGraph) -> bool:
    """Every pair of vertices lies in an edge"""
    links = _link_table(F)
    return all(links[i][j] for i, j in itertools.combinations(range(F.n), 2))


def blowup_incomparable(graphs: Sequence[ThreeGraph]) -> List[Tuple[int, int]]:
    """
    Pairs (i, j), i != j, with graphs[i] <= graphs[j].

    An empty result means the list is an antichain under blow-up containment.
    """
    return [
        (i, j)
        for i, j in itertools.permutations(range(len(graphs)), 2)
        if blowup_contains(graphs[i], graphs[j])
    ]
