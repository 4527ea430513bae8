"""
Turanflag Flag Problem - Admissible graphs, types, flags and their exact matrices
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..errors import GraphError
from ..core.family import Family, generate_admissible
from ..core.hypergraph import ThreeGraph
from ..process.pool import parallel_map
from .flags import FlagContext, PairDensityMatrix, edge_density, enumerate_types_and_flags, pair_densities

logger = logging.getLogger(__name__)


def _host_matrices(job: Tuple[Tuple[FlagContext, ...], ThreeGraph]) -> Tuple[PairDensityMatrix, ...]:
    contexts, H = job
    return tuple(pair_densities(contexts, H))


@dataclass(frozen=True)
class FlagProblem:
    """
    Everything the SDP and the verifier need for one family at one order.

    ``matrices[i][t]`` is the pair-density matrix of context t in
    ``admissible[i]``.
    """

    n: int
    family: Family
    admissible: Tuple[ThreeGraph, ...]
    contexts: Tuple[FlagContext, ...]
    densities: Tuple[Fraction, ...]
    matrices: Tuple[Tuple[PairDensityMatrix, ...], ...]

    @classmethod
    def build(cls, n: int, family: Family, workers: int = 1,
              admissible: Optional[Sequence[ThreeGraph]] = None) -> "FlagProblem":
        """
        Generate admissible graphs (unless given), enumerate types and flags,
        and compute every pair-density matrix.
        """
        if admissible is None:
            admissible = generate_admissible(n, family, workers)
        contexts = enumerate_types_and_flags(n, admissible)
        return cls.from_contexts(n, family, admissible, contexts, workers)

    @classmethod
    def from_contexts(cls, n: int, family: Family, admissible: Sequence[ThreeGraph],
                      contexts: Sequence[FlagContext], workers: int = 1) -> "FlagProblem":
        """Build with an explicit (for example certificate-supplied) type and flag order"""
        if not admissible:
            raise GraphError(f"no admissible graphs of order {n}")
        if any(H.n != n for H in admissible):
            raise GraphError(f"admissible graphs must all have order {n}")
        contexts = tuple(contexts)
        matrices = parallel_map(_host_matrices, [(contexts, H) for H in admissible], workers)
        logger.info("flag problem n=%d: %d graphs, %d types, block sizes %s",
                    n, len(admissible), len(contexts), [len(c) for c in contexts])
        return cls(
            n=n,
            family=family,
            admissible=tuple(admissible),
            contexts=contexts,
            densities=tuple(edge_density(H) for H in admissible),
            matrices=tuple(matrices),
        )

    @property
    def block_sizes(self) -> List[int]:
        return [len(c) for c in self.contexts]

    def __len__(self) -> int:
        return len(self.admissible)
