"""
Turanflag Constructions - Extremal constructions S_n, J_n, T_n, B_n

S: complete tripartite. J: complete (2,1)-colourable (two vertices from V0,
one from V1). T: Turan's construction (one vertex from each class, or two
from V_i and one from V_{i+1 mod 3}). B: complete bipartite (triples
meeting both classes).
"""

import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import Dict, Optional, Sequence, Tuple

from ..errors import GraphError
from .family import Family
from .hypergraph import ThreeGraph, find_embedding, triples

logger = logging.getLogger(__name__)

KINDS: Tuple[str, ...] = ("S", "J", "T", "B")

# Number of classes per kind
CLASS_COUNT: Dict[str, int] = {"S": 3, "J": 2, "T": 3, "B": 2}

MAX_MEMBER_ORDER = 7


def _check_kind(kind: str) -> str:
    kind = kind.upper()
    if kind not in KINDS:
        raise GraphError(f"unknown construction kind {kind!r}, expected one of {', '.join(KINDS)}")
    return kind


def _is_edge(kind: str, counts: Sequence[int]) -> bool:
    """Edge rule on the class counts of a triple"""
    if kind == "S":
        return counts[0] == counts[1] == counts[2] == 1
    if kind == "J":
        return counts[0] == 2 and counts[1] == 1
    if kind == "B":
        return counts[0] > 0 and counts[1] > 0
    # T
    if counts[0] == counts[1] == counts[2] == 1:
        return True
    return any(counts[i] == 2 and counts[(i + 1) % 3] == 1 for i in range(3))


def _mask_from_labels(kind: str, labels: Sequence[int]) -> int:
    mask = 0
    parts = CLASS_COUNT[kind]
    for t, (i, j, k) in enumerate(triples(len(labels))):
        counts = [0] * parts
        counts[labels[i]] += 1
        counts[labels[j]] += 1
        counts[labels[k]] += 1
        if _is_edge(kind, counts):
            mask |= 1 << t
    return mask


@dataclass(frozen=True)
class Construction:
    """A construction with its explicit vertex classes"""

    kind: str
    n: int
    partition: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        covered = sorted(v for part in self.partition for v in part)
        if covered != list(range(self.n)):
            raise GraphError("partition must cover 0..n-1 disjointly")
        if len(self.partition) != CLASS_COUNT[self.kind]:
            raise GraphError(f"kind {self.kind} needs {CLASS_COUNT[self.kind]} classes")

    @property
    def graph(self) -> ThreeGraph:
        labels = [0] * self.n
        for index, part in enumerate(self.partition):
            for v in part:
                labels[v] = index
        return ThreeGraph(self.n, _mask_from_labels(self.kind, labels))


def _consecutive(sizes: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    bounds = list(itertools.accumulate([0] + list(sizes)))
    return tuple(tuple(range(bounds[i], bounds[i + 1])) for i in range(len(sizes)))


def balanced_sizes(n: int, parts: int) -> Tuple[int, ...]:
    """Balanced class sizes, largest first"""
    q, r = divmod(n, parts)
    return tuple(q + 1 if i < r else q for i in range(parts))


def optimal_j_split(n: int) -> int:
    """The k maximising (n-k)*C(k,2); ties go to the smaller k"""
    return max(range(n + 1), key=lambda k: ((n - k) * comb(k, 2), -k))


def construction(kind: str, n: int) -> Construction:
    """
    The edge-maximal instance of a construction on n vertices.

    Args:
        kind: One of S, J, T, B
        n: Vertex count (>= 3)

    Returns:
        Construction with consecutive vertex classes
    """
    kind = _check_kind(kind)
    if n < 3:
        raise GraphError("constructions need at least 3 vertices")
    if kind == "J":
        k = optimal_j_split(n)
        sizes: Tuple[int, ...] = (k, n - k)
    else:
        sizes = balanced_sizes(n, CLASS_COUNT[kind])
    return Construction(kind, n, _consecutive(sizes))


def build_construction(kind: str, n: int) -> ThreeGraph:
    return construction(kind, n).graph


def build_partitioned(kind: str, sizes: Sequence[int]) -> ThreeGraph:
    """Construction with the given class sizes (classes numbered consecutively)"""
    kind = _check_kind(kind)
    return Construction(kind, sum(sizes), _consecutive(sizes)).graph


def construction_edge_count(kind: str, n: int) -> int:
    """Closed-form edge count of the edge-maximal construction"""
    kind = _check_kind(kind)
    if kind == "S":
        return (n // 3) * ((n + 1) // 3) * ((n + 2) // 3)
    if kind == "J":
        return max((n - k) * comb(k, 2) for k in range(n + 1))
    if kind == "B":
        return comb(n, 3) - comb((n + 1) // 2, 3) - comb(n // 2, 3)
    a, b, c = balanced_sizes(n, 3)
    return a * b * c + comb(a, 2) * b + comb(b, 2) * c + comb(c, 2) * a


def build_fpq(p: int, q: int) -> ThreeGraph:
    """F_{p,q}: all triples inside [p] plus every x y z with x in [p], y, z outside"""
    inner = range(p)
    outer = range(p, p + q)
    edges = list(itertools.combinations(inner, 3))
    edges += [(x, y, z) for x in inner for y, z in itertools.combinations(outer, 2)]
    return ThreeGraph.from_edges(p + q, edges)


# ============================================================================
# Membership and freeness
# ============================================================================

def is_member(kind: str, G: ThreeGraph) -> bool:
    """
    True if G equals the construction of ``kind`` for some partition.

    Empty classes are allowed. Decided by exhaustive search over all
    partitions, so |V(G)| is limited to 7.
    """
    kind = _check_kind(kind)
    if G.n > MAX_MEMBER_ORDER:
        raise GraphError(f"membership search is limited to {MAX_MEMBER_ORDER} vertices, got {G.n}")
    parts = CLASS_COUNT[kind]
    for labels in itertools.product(range(parts), repeat=G.n):
        if _mask_from_labels(kind, labels) == G.mask:
            return True
    return False


@dataclass(frozen=True)
class FreeWitness:
    """A forbidden member found inside a graph"""

    member: ThreeGraph
    embedding: Tuple[int, ...]
    induced: bool = False


def check_free(C: ThreeGraph, family: Family) -> Tuple[bool, Optional[FreeWitness]]:
    """
    Check that C contains no member of the family.

    Returns:
        (True, None) when free, otherwise (False, witness embedding)
    """
    for F in family.members:
        embedding = find_embedding(C, F)
        if embedding is not None:
            return False, FreeWitness(F, embedding)
    for F in family.induced_members:
        embedding = find_embedding(C, F, induced=True)
        if embedding is not None:
            return False, FreeWitness(F, embedding, induced=True)
    return True, None
