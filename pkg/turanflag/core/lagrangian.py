"""
Turanflag Lagrangian - Hypergraph Lagrangians, exact evaluation, weighted blow-ups

lambda(G, x) = 6 * sum over edges ijk of x_i x_j x_k on the simplex.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import GraphError
from .exact import FieldElement, ONE, ZERO, as_field, field_floor, field_sign, parse_field_element
from .history import ObjectiveHistory
from .hypergraph import ThreeGraph, blowup_weighted

logger = logging.getLogger(__name__)

DEFAULT_RESTARTS = 200
DEFAULT_ITERATIONS = 10_000

NUMERIC_SUM_TOLERANCE = 1e-12
TIE_TOLERANCE = 1e-12
MONOTONE_TOLERANCE = 1e-12

Coordinate = Union[int, Fraction, FieldElement, float]


@dataclass(frozen=True)
class WeightVector:
    """A point of the probability simplex, exact or floating"""

    coordinates: Tuple[Coordinate, ...]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction, FieldElement)) for c in self.coordinates)

    def validate(self) -> None:
        """Raise GraphError unless coordinates are >= 0 and sum to 1"""
        if self.is_exact:
            total = ZERO
            for c in self.coordinates:
                if field_sign(as_field(c)) < 0:
                    raise GraphError(f"negative weight {c}")
                total = total + c
            if total != ONE:
                raise GraphError(f"weights sum to {total}, not 1")
        else:
            values = np.asarray(self.coordinates, dtype=float)
            if np.any(values < -NUMERIC_SUM_TOLERANCE):
                raise GraphError("negative weight")
            if abs(values.sum() - 1.0) > NUMERIC_SUM_TOLERANCE:
                raise GraphError(f"weights sum to {values.sum()!r}, not 1")

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        """Comma- or whitespace-separated field elements, e.g. ``1/3,2/9,2/9,2/9``"""
        tokens = text.replace(",", " ").split()
        return cls(tuple(parse_field_element(t) for t in tokens))

    def __len__(self) -> int:
        return len(self.coordinates)

    def __iter__(self) -> Iterator[Coordinate]:
        return iter(self.coordinates)


def _check_dimension(G: ThreeGraph, x: Sequence) -> None:
    if len(x) != G.n:
        raise GraphError(f"weight vector has {len(x)} coordinates for {G.n} vertices")


def lambda_at(G: ThreeGraph, x: Union[WeightVector, Sequence[Coordinate]]) -> FieldElement:
    """
    Exact value of the Lagrangian polynomial at x.

    Args:
        G: Graph
        x: Exact coordinates (Fraction or FieldElement), one per vertex

    Returns:
        6 * sum of x_i x_j x_k over edges, in Q[sqrt(d)]
    """
    coords = list(x.coordinates if isinstance(x, WeightVector) else x)
    _check_dimension(G, coords)
    if any(isinstance(c, float) for c in coords):
        raise GraphError("lambda_at needs exact coordinates; use lambda_numeric for floats")
    coords = [as_field(c) for c in coords]
    total = ZERO
    for i, j, k in G.edges():
        total = total + coords[i] * coords[j] * coords[k]
    return 6 * total


def lambda_numeric(G: ThreeGraph, x: Sequence[float]) -> float:
    _check_dimension(G, x)
    values = np.asarray(x, dtype=float)
    edges = np.array(G.edges(), dtype=np.int64).reshape(-1, 3)
    return float(6.0 * values[edges].prod(axis=1).sum())


def lagrangian_gradient(G: ThreeGraph, x: Sequence[float]) -> np.ndarray:
    """Partial derivatives 6 * sum over edges through i of x_j x_k"""
    _check_dimension(G, x)
    values = np.asarray(x, dtype=float)
    grad = np.zeros(G.n)
    for i, j, k in G.edges():
        grad[i] += values[j] * values[k]
        grad[j] += values[i] * values[k]
        grad[k] += values[i] * values[j]
    return 6.0 * grad


def _incidence(G: ThreeGraph) -> Tuple[np.ndarray, np.ndarray]:
    edges = np.array(G.edges(), dtype=np.int64).reshape(-1, 3)
    # one-hot matrices mapping each edge slot to its vertex
    slots = np.zeros((3, len(edges), G.n))
    for s in range(3):
        slots[s, np.arange(len(edges)), edges[:, s]] = 1.0
    return edges, slots


def maximize_lagrangian(G: ThreeGraph, restarts: int = DEFAULT_RESTARTS,
                        iterations: int = DEFAULT_ITERATIONS, seed: int = 0,
                        history: Optional[ObjectiveHistory] = None) -> Tuple[float, WeightVector]:
    """
    Numerically maximise the Lagrangian by multiplicative ascent.

    Every restart runs x_i <- x_i * (d lambda / d x_i) / (3 lambda) from a
    uniformly random simplex point drawn with ``default_rng([seed, r])``.
    All restarts are iterated together as one matrix.

    Args:
        G: Graph
        restarts: Number of random starts (>= 1)
        iterations: Update steps per start
        seed: Base seed
        history: Optional trace receiving the best objective per step and
            the worst per-restart decrease

    Returns:
        (best value, witness weights); ties go to the lexicographically
        largest sorted weight vector
    """
    if restarts < 1:
        raise GraphError("restarts must be at least 1")
    k = G.n
    if k == 0:
        return 0.0, WeightVector(())
    if G.num_edges == 0:
        return 0.0, WeightVector(tuple([1.0 / k] * k))

    edges, slots = _incidence(G)
    X = np.vstack([np.random.default_rng([seed, r]).dirichlet(np.ones(k)) for r in range(restarts)])

    def objective(W: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        p = W[:, edges]
        grad = 6.0 * (
            (p[..., 1] * p[..., 2]) @ slots[0]
            + (p[..., 0] * p[..., 2]) @ slots[1]
            + (p[..., 0] * p[..., 1]) @ slots[2]
        )
        return 6.0 * p.prod(axis=2).sum(axis=1), grad

    lam, grad = objective(X)
    worst_drop = 0.0
    for step in range(iterations):
        X_next = X * grad / (3.0 * lam[:, None])
        X_next /= X_next.sum(axis=1, keepdims=True)
        lam_next, grad = objective(X_next)
        drop = float(np.max(lam - lam_next))
        worst_drop = max(worst_drop, drop)
        if history is not None:
            history.record_drop(drop)
            history.append(float(lam_next.max()))
        converged = np.max(np.abs(X_next - X)) < 1e-16
        X, lam = X_next, lam_next
        if converged:
            logger.debug("ascent converged after %d steps", step + 1)
            break

    if worst_drop > MONOTONE_TOLERANCE:
        logger.warning("ascent on %s lost %.3e between steps; weights may be inaccurate", G, worst_drop)

    best = lam.max()
    tied = np.flatnonzero(lam >= best - TIE_TOLERANCE)
    chosen = max(tied, key=lambda r: tuple(np.sort(X[r])[::-1]))
    return float(lam[chosen]), WeightVector(tuple(float(v) for v in X[chosen]))


def weighted_blowup(G: ThreeGraph, x: Union[WeightVector, Sequence[Coordinate]], n: int) -> ThreeGraph:
    """
    The weighted blow-up G(x, n).

    Vertex i becomes a class of floor(x_i * n) vertices for i < k and the
    last class takes the remaining vertices.
    """
    coords = list(x.coordinates if isinstance(x, WeightVector) else x)
    _check_dimension(G, coords)
    if any(isinstance(c, float) for c in coords):
        raise GraphError("weighted_blowup needs exact weights")
    if n < G.n:
        raise GraphError(f"n = {n} is smaller than the {G.n} vertices of G")
    sizes = [field_floor(as_field(c) * n) for c in coords[:-1]]
    sizes.append(n - sum(sizes))
    if any(s < 0 for s in sizes):
        raise GraphError(f"negative class size in {sizes}")
    return blowup_weighted(G, sizes)
