"""
Turanflag Families - Forbidden families, admissible graph generation, augmentation
"""

import logging
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ..errors import FormatError, GraphError
from ..process.pool import parallel_map
from .hypergraph import (
    ThreeGraph,
    blowup_contains,
    canonical_form,
    find_embedding,
    format_graph,
    parse_graph,
)

logger = logging.getLogger(__name__)

MIN_ORDER = 3
MAX_ORDER = 7


def _canonical_sorted(graphs: Iterable[ThreeGraph]) -> Tuple[ThreeGraph, ...]:
    unique = {canonical_form(G) for G in graphs}
    return tuple(sorted(unique, key=lambda G: (G.n, G.mask)))


@dataclass(frozen=True)
class Augmentation:
    """A graph added to a family together with the member that justified it"""

    added: ThreeGraph
    witness: ThreeGraph


@dataclass(frozen=True)
class Family:
    """Forbidden family: plain members plus members forbidden as induced subgraphs"""

    members: Tuple[ThreeGraph, ...] = ()
    induced_members: Tuple[ThreeGraph, ...] = ()
    derived: Tuple[Augmentation, ...] = field(default=(), compare=False)

    @classmethod
    def of(cls, members: Iterable[ThreeGraph] = (),
           induced_members: Iterable[ThreeGraph] = (),
           derived: Iterable[Augmentation] = ()) -> "Family":
        """Build a family with members stored in canonical form, duplicate-free"""
        return cls(_canonical_sorted(members), _canonical_sorted(induced_members), tuple(derived))

    def __len__(self) -> int:
        return len(self.members) + len(self.induced_members)

    def union(self, other: "Family") -> "Family":
        return Family.of(
            self.members + other.members,
            self.induced_members + other.induced_members,
            self.derived + other.derived,
        )

    def is_admissible(self, G: ThreeGraph, through: Optional[int] = None) -> bool:
        """
        True if G contains no member and no induced copy of an induced member.

        Args:
            G: Graph to test
            through: Only consider copies using this vertex (the caller
                guarantees G minus the vertex is already admissible)
        """
        for F in self.members:
            if F.n <= G.n and find_embedding(G, F, through=through) is not None:
                return False
        for F in self.induced_members:
            if F.n <= G.n and find_embedding(G, F, induced=True, through=through) is not None:
                return False
        return True


# ============================================================================
# Generation by one-vertex extension
# ============================================================================

def _admissible_children(job: Tuple[ThreeGraph, Family]) -> List[int]:
    """Canonical masks of the admissible one-vertex extensions of a parent"""
    parent, family = job
    order = parent.n + 1
    base = comb(parent.n, 3)
    seen = set()
    accepted = []
    # The new vertex's link is any set of pairs of old vertices; pair {a < b}
    # has colex index C(b,2) + a, so link bit p lands on triple base + p.
    for link in range(1 << comb(parent.n, 2)):
        child = ThreeGraph(order, parent.mask | (link << base))
        canonical = canonical_form(child).mask
        if canonical in seen:
            continue
        seen.add(canonical)
        if family.is_admissible(child, through=order - 1):
            accepted.append(canonical)
    return accepted


def extend_admissible(parents: Sequence[ThreeGraph], family: Family,
                      workers: int = 1) -> List[ThreeGraph]:
    """
    All admissible graphs one vertex larger than ``parents``.

    Args:
        parents: Complete admissible list of some order k
        family: Forbidden family
        workers: Process count for the per-parent extension

    Returns:
        Admissible graphs of order k + 1 in canonical-sorted order
    """
    if not parents:
        return []
    order = parents[0].n + 1
    results = parallel_map(_admissible_children, [(P, family) for P in parents], workers)
    masks = set()
    for part in results:
        masks.update(part)
    return [ThreeGraph(order, m) for m in sorted(masks)]


def generate_admissible(n: int, family: Family, workers: int = 1) -> List[ThreeGraph]:
    """
    All F-free graphs of order n, one per isomorphism class.

    Args:
        n: Order, 3 <= n <= 7
        family: Forbidden family (members with more than n vertices are vacuous)
        workers: Process count

    Returns:
        Canonical forms sorted by mask
    """
    if not MIN_ORDER <= n <= MAX_ORDER:
        raise GraphError(f"admissible generation supports {MIN_ORDER} <= n <= {MAX_ORDER}, got {n}")
    level = [ThreeGraph(0)] if family.is_admissible(ThreeGraph(0)) else []
    for k in range(1, n + 1):
        level = extend_admissible(level, family, workers) if level else []
        logger.info("order %d: %d admissible graphs", k, len(level))
    return level


def augment_family(family: Family, candidates: Iterable[ThreeGraph]) -> Family:
    """
    Add every candidate G with F' <= G for some member F'.

    Additions can justify further additions; the loop runs to a fixpoint.
    Each addition is recorded with its witness in ``Family.derived``.
    """
    members = list(family.members)
    derived = list(family.derived)
    pending = list(_canonical_sorted(candidates))
    changed = True
    while changed and pending:
        changed = False
        for G in list(pending):
            witness = next((F for F in members if blowup_contains(F, G)), None)
            if witness is None:
                continue
            pending.remove(G)
            changed = True
            if G not in members:
                members.append(G)
                derived.append(Augmentation(G, witness))
                logger.debug("added %s justified by %s", format_graph(G), format_graph(witness))
    return Family.of(members, family.induced_members, derived)


# ============================================================================
# Family files
# ============================================================================

def parse_family_text(text: str, path: Optional[str] = None) -> Family:
    """Parse family text: one graph per line, ``!`` marks an induced member"""
    members = []
    induced = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        target = members
        if line.startswith("!"):
            target = induced
            line = line[1:].strip()
        try:
            target.append(parse_graph(line))
        except GraphError as e:
            raise FormatError(str(e), path, number) from e
    return Family.of(members, induced)


def parse_family(path: Union[str, Path]) -> Family:
    path = Path(path)
    return parse_family_text(path.read_text(encoding="utf-8"), str(path))


def format_family(family: Family) -> str:
    lines = [format_graph(F) for F in family.members]
    lines += ["!" + format_graph(F) for F in family.induced_members]
    return "\n".join(lines) + "\n"
