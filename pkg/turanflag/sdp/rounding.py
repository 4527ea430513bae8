"""
Turanflag Rounding - Turn numeric SDP blocks into an exact certificate

For each denominator D of the schedule and each epsilon of the shift
schedule:

1. every entry of the symmetrised numeric blocks is replaced by its best
   rational approximation with denominator at most D,
2. epsilon * I is added to every block,
3. graphs whose slack against the target is within ``sharp_tolerance`` of
   zero are made exactly tight by the least-norm exact correction of the
   block entries,
4. the result is verified exactly; the first valid certificate is returned.

A target in Q[sqrt(d)] is handled by solving the correction twice, once for
the rational parts of the slacks and once for the sqrt(d) parts.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from ..errors import RoundingError
from ..core.exact import FieldElement, as_field, format_field_element, rationalize
from .certificate import Certificate, CertificateBlock, check_certificate
from .ldl import ldl_decompose
from .problem import FlagProblem
from .sdpa import SdpSolution

logger = logging.getLogger(__name__)

DEFAULT_DENOMINATORS: Tuple[int, ...] = (1 << 10, 1 << 16, 1 << 20, 1 << 24, 1 << 28, 1 << 32)
DEFAULT_EPSILONS: Tuple[Fraction, ...] = (Fraction(0),) + tuple(Fraction(1, 10 ** k) for k in range(3, 10))
DEFAULT_SHARP_TOLERANCE = 1e-6
SYMMETRY_TOLERANCE = 1e-6

RationalBlock = List[List[Fraction]]


@dataclass(frozen=True)
class RoundingAttempt:
    """One (denominator, epsilon) step and how it failed"""

    denominator: int
    epsilon: Fraction
    sharp: int
    worst_slack: Optional[FieldElement] = None
    worst_pivot: Optional[Tuple[int, int, FieldElement]] = None


def _to_sympy(q: Fraction) -> sympy.Rational:
    return sympy.Rational(q.numerator, q.denominator)


def _from_sympy(v) -> Fraction:
    v = sympy.Rational(v)
    return Fraction(int(v.p), int(v.q))


def _inner(Q: RationalBlock, entries) -> Fraction:
    total = Fraction(0)
    for a, row in enumerate(entries):
        for b, p in enumerate(row):
            if p:
                total += Q[a][b] * p
    return total


def _least_norm(R: sympy.Matrix, rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """x = R^T y with (R R^T) y = rhs; free parameters set to zero"""
    if not any(rhs):
        return [Fraction(0)] * R.cols
    b = sympy.Matrix([_to_sympy(v) for v in rhs])
    try:
        y, params = (R * R.T).gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0]:
        y = y.subs({p: 0 for p in params})
    return [_from_sympy(v) for v in R.T * y]


def sharp_correction(blocks: Sequence[RationalBlock], target: FieldElement, problem: FlagProblem,
                     tolerance: float = DEFAULT_SHARP_TOLERANCE) -> Tuple[List[List[List[FieldElement]]], int]:
    """
    Adjust blocks so that nearly tight graphs become exactly tight.

    Returns:
        (corrected blocks, number of graphs made tight); the blocks are
        returned unchanged when the tight system is inconsistent
    """
    variables = [(t, a, b) for t, B in enumerate(blocks) for a in range(len(B)) for b in range(a, len(B))]
    rows: List[List[Fraction]] = []
    rational_rhs: List[Fraction] = []
    root_rhs: List[Fraction] = []
    for density, matrices in zip(problem.densities, problem.matrices):
        value = sum((_inner(Q, P.entries) for Q, P in zip(blocks, matrices)), Fraction(0))
        slack = target - density - value
        if abs(float(slack)) > tolerance:
            continue
        rows.append([matrices[t].entries[a][b] * (1 if a == b else 2) for t, a, b in variables])
        rational_rhs.append(slack.a)
        root_rhs.append(slack.b)

    corrected = [[[as_field(v) for v in row] for row in B] for B in blocks]
    if not rows or not variables:
        return corrected, 0
    R = sympy.Matrix([[_to_sympy(v) for v in row] for row in rows])
    rational_part = _least_norm(R, rational_rhs)
    root_part = _least_norm(R, root_rhs)
    if rational_part is None or root_part is None:
        logger.debug("tight system for %d graphs is inconsistent; skipping correction", len(rows))
        return corrected, 0
    for (t, a, b), x, y in zip(variables, rational_part, root_part):
        if not x and not y:
            continue
        delta = FieldElement(x, y, target.d) if y else FieldElement(x)
        corrected[t][a][b] = corrected[t][a][b] + delta
        if a != b:
            corrected[t][b][a] = corrected[t][a][b]
    return corrected, len(rows)


def _symmetrized(blocks: Sequence[np.ndarray], sizes: Sequence[int]) -> List[np.ndarray]:
    if len(blocks) != len(sizes):
        raise RoundingError(f"{len(blocks)} numeric blocks for {len(sizes)} types")
    result = []
    for t, (B, size) in enumerate(zip(blocks, sizes)):
        B = np.asarray(B, dtype=float)
        if B.shape != (size, size):
            raise RoundingError(f"block {t} has shape {B.shape}, expected ({size}, {size})")
        if not np.allclose(B, B.T, atol=SYMMETRY_TOLERANCE):
            raise RoundingError(f"block {t} is not symmetric to within {SYMMETRY_TOLERANCE}")
        result.append((B + B.T) / 2.0)
    return result


def round_solution(solution: Union[SdpSolution, Sequence[np.ndarray]], target: object,
                   problem: FlagProblem,
                   denominator_schedule: Sequence[int] = DEFAULT_DENOMINATORS,
                   epsilons: Sequence[Fraction] = DEFAULT_EPSILONS,
                   sharp_tolerance: float = DEFAULT_SHARP_TOLERANCE,
                   workers: int = 1) -> Certificate:
    """
    Round numeric blocks to a certificate for the bound ``target``.

    Args:
        solution: Parsed solver solution or one numeric matrix per type
        target: Exact bound (Fraction or FieldElement) to certify
        problem: The problem the blocks were solved for
        denominator_schedule: Increasing denominator limits
        epsilons: Identity shifts tried at each denominator
        sharp_tolerance: Slack below which a graph is made exactly tight
        workers: Process count for the exact slack computation

    Returns:
        The first certificate that verifies

    Raises:
        RoundingError: No step produced a valid certificate; carries the
            worst slack and worst pivot seen
    """
    target = as_field(target)
    numeric = solution.blocks if isinstance(solution, SdpSolution) else solution
    numeric = _symmetrized(numeric, problem.block_sizes)

    attempts: List[RoundingAttempt] = []
    for denominator in denominator_schedule:
        base = [
            [[rationalize(float(B[a, b]), denominator) for b in range(len(B))] for a in range(len(B))]
            for B in numeric
        ]
        for epsilon in epsilons:
            shifted = [
                [[v + epsilon if a == b else v for b, v in enumerate(row)] for a, row in enumerate(B)]
                for B in base
            ]
            blocks, sharp = sharp_correction(shifted, target, problem, sharp_tolerance)
            attempt = _attempt(blocks, target, problem, denominator, epsilon, sharp, workers)
            if attempt is None:
                certificate = _certificate(blocks, target, problem)
                logger.info("rounded at denominator %d, epsilon %s (%d tight graphs)",
                            denominator, epsilon, sharp)
                return certificate
            attempts.append(attempt)
            logger.debug("denominator %d, epsilon %s failed: slack %s, pivot %s",
                         denominator, epsilon, attempt.worst_slack, attempt.worst_pivot)

    slacks = [a.worst_slack for a in attempts if a.worst_slack is not None]
    pivots = [a.worst_pivot for a in attempts if a.worst_pivot is not None]
    worst_slack = min(slacks) if slacks else None
    worst_pivot = pivots[-1] if pivots else None
    detail = []
    if worst_slack is not None:
        detail.append(f"worst slack {format_field_element(worst_slack)}")
    if worst_pivot is not None:
        block, pivot, value = worst_pivot
        detail.append(f"last failing pivot {pivot} of block {block} = {format_field_element(value)}")
    raise RoundingError(
        f"no step of {len(attempts)} produced a valid certificate for bound "
        f"{format_field_element(target)}" + (f" ({'; '.join(detail)})" if detail else ""),
        worst_slack,
        worst_pivot,
    )


def _certificate(blocks, target: FieldElement, problem: FlagProblem) -> Certificate:
    return Certificate(
        n=problem.n,
        family=problem.family,
        discriminant=target.d,
        bound=target,
        blocks=tuple(CertificateBlock.from_context(ctx, B) for ctx, B in zip(problem.contexts, blocks)),
    )


def _attempt(blocks, target: FieldElement, problem: FlagProblem, denominator: int,
             epsilon: Fraction, sharp: int, workers: int) -> Optional[RoundingAttempt]:
    """None when the blocks verify, otherwise the failure"""
    for ctx, B in zip(problem.contexts, blocks):
        factor = ldl_decompose(B)
        if not factor.is_psd:
            return RoundingAttempt(denominator, epsilon, sharp,
                                   worst_pivot=(ctx.sigma.index, factor.failed_pivot, factor.failed_value))
    check = check_certificate(_certificate(blocks, target, problem), workers, problem)
    if check.is_valid:
        return None
    return RoundingAttempt(denominator, epsilon, sharp, worst_slack=check.report.worst()[1])
