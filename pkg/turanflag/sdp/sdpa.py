"""
Turanflag SDPA Bridge - Sparse SDP files for external solvers and their solutions

The emitted problem is in the maximisation form solvers such as csdp read:

    max tr(C X)  s.t.  tr(A_i X) = a_i,  X psd

X has one 1x1 block holding the bound lambda, one block Q_t per type and a
final diagonal block of slacks. C picks out -lambda, and constraint i reads

    D_i * lambda - D_i * <P_t(H_i), Q_t> - D_i * s_i = D_i * d(H_i)

with D_i the least common multiple of the denominators in row i, so every
coefficient written is an integer.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import FormatError, GraphError
from ..core.hypergraph import ThreeGraph
from .flags import FlagContext, PairDensityMatrix, edge_density, pair_densities

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]
PathLike = Union[str, Path]


@dataclass(frozen=True)
class SdpEntry:
    """One ``matno blockno i j value`` record (1-indexed, i <= j)"""

    matno: int
    block: int
    i: int
    j: int
    value: Number


@dataclass
class SdpProblem:
    """A sparse SDP in SDPA layout"""

    num_constraints: int
    block_sizes: List[int]
    objective: List[Number]
    entries: List[SdpEntry] = field(default_factory=list)
    comments: List[str] = field(default_factory=list)

    @property
    def num_blocks(self) -> int:
        return len(self.block_sizes)

    @property
    def type_blocks(self) -> List[int]:
        """Sizes of the Q blocks (everything between the bound and the slacks)"""
        return self.block_sizes[1:-1]

    def to_text(self) -> str:
        lines = [f'" {c}' for c in self.comments]
        lines.append(str(self.num_constraints))
        lines.append(str(self.num_blocks))
        lines.append(" ".join(str(b) for b in self.block_sizes))
        lines.append(" ".join(_format_number(v) for v in self.objective))
        for e in self.entries:
            lines.append(f"{e.matno} {e.block} {e.i} {e.j} {_format_number(e.value)}")
        return "\n".join(lines) + "\n"

    def write(self, path: PathLike) -> Path:
        path = Path(path)
        path.write_text(self.to_text(), encoding="utf-8")
        logger.info("wrote SDP with %d constraints and %d blocks to %s",
                    self.num_constraints, self.num_blocks, path)
        return path


def _format_number(value: Number) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return repr(float(value))
    return str(value)


def _row_scale(density: Fraction, matrices: Sequence[PairDensityMatrix]) -> int:
    scale = density.denominator
    for P in matrices:
        for row in P.entries:
            for v in row:
                scale = lcm(scale, v.denominator)
    return scale


def build_sdp(densities: Sequence[Fraction],
              matrices: Sequence[Sequence[PairDensityMatrix]],
              block_sizes: Sequence[int],
              comments: Sequence[str] = ()) -> SdpProblem:
    """
    Assemble the SDP from per-graph edge densities and pair-density matrices.

    Args:
        densities: Edge density of each admissible graph
        matrices: ``matrices[i][t]`` for graph i and type t
        block_sizes: Flag count per type

    Returns:
        SdpProblem with integer coefficients
    """
    m = len(densities)
    if m == 0:
        raise GraphError("cannot build an SDP with no admissible graphs")
    if len(matrices) != m:
        raise GraphError("one list of pair-density matrices is needed per admissible graph")
    slack_block = len(block_sizes) + 2
    problem = SdpProblem(
        num_constraints=m,
        block_sizes=[1] + list(block_sizes) + [-m],
        objective=[],
        comments=list(comments),
    )
    problem.entries.append(SdpEntry(0, 1, 1, 1, -1))
    for i, (density, row) in enumerate(zip(densities, matrices), start=1):
        scale = _row_scale(density, row)
        problem.objective.append(int(density * scale))
        problem.entries.append(SdpEntry(i, 1, 1, 1, scale))
        for t, P in enumerate(row):
            if len(P) != block_sizes[t]:
                raise GraphError(f"matrix for type {t} has size {len(P)}, expected {block_sizes[t]}")
            for a in range(len(P)):
                for b in range(a, len(P)):
                    v = P.entries[a][b]
                    if v:
                        problem.entries.append(SdpEntry(i, t + 2, a + 1, b + 1, -int(v * scale)))
        problem.entries.append(SdpEntry(i, slack_block, i, i, -scale))
    return problem


def emit_sdp(admissible: Sequence[ThreeGraph], contexts: Sequence[FlagContext],
             path: Optional[PathLike] = None,
             matrices: Optional[Sequence[Sequence[PairDensityMatrix]]] = None) -> SdpProblem:
    """
    Build the SDP for the given admissible graphs and contexts.

    Args:
        admissible: One graph per constraint
        contexts: Types with frozen flag lists, one block each
        path: Where to write the sparse file (optional)
        matrices: Precomputed pair-density matrices (computed when omitted)

    Returns:
        The SdpProblem that was written
    """
    if not admissible:
        raise GraphError("cannot emit an SDP with no admissible graphs")
    if matrices is None:
        matrices = [pair_densities(contexts, H) for H in admissible]
    problem = build_sdp(
        [edge_density(H) for H in admissible],
        matrices,
        [len(c) for c in contexts],
        comments=[f"{len(admissible)} admissible graphs of order {admissible[0].n}"],
    )
    if path is not None:
        problem.write(path)
    return problem


# ============================================================================
# Reading
# ============================================================================

def _parse_number(token: str, path: Optional[str], line: int) -> Number:
    try:
        if any(c in token for c in ".eE") and "/" not in token:
            return Fraction(float(token))
        return Fraction(token) if "/" in token else int(token)
    except (ValueError, ZeroDivisionError, OverflowError):
        raise FormatError(f"bad number {token!r}", path, line) from None


def parse_sdp_text(text: str, path: Optional[str] = None) -> SdpProblem:
    """Parse SDPA sparse text; leading ``"`` or ``*`` lines are comments"""
    header: List[Tuple[int, str]] = []
    comments = []
    entries = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line[0] in "\"*":
            comments.append(line[1:].strip())
            continue
        if len(header) < 4:
            header.append((number, line.replace(",", " ").replace("{", " ").replace("}", " ")))
            continue
        tokens = line.split()
        if len(tokens) != 5:
            raise FormatError(f"expected 5 fields, got {len(tokens)}", path, number)
        try:
            matno, block, i, j = (int(t) for t in tokens[:4])
        except ValueError:
            raise FormatError("matrix, block and indices must be integers", path, number) from None
        entries.append(SdpEntry(matno, block, i, j, _parse_number(tokens[4], path, number)))
    if len(header) < 4:
        raise FormatError("truncated header", path, header[-1][0] if header else None)
    try:
        m = int(header[0][1].split()[0])
        nblocks = int(header[1][1].split()[0])
        sizes = [int(t) for t in header[2][1].split()]
    except (ValueError, IndexError):
        raise FormatError("malformed header", path, header[0][0]) from None
    if len(sizes) != nblocks:
        raise FormatError(f"{nblocks} blocks declared, {len(sizes)} sizes given", path, header[2][0])
    objective = [_parse_number(t, path, header[3][0]) for t in header[3][1].split()]
    if len(objective) != m:
        raise FormatError(f"{m} constraints declared, {len(objective)} objective values", path, header[3][0])
    return SdpProblem(m, sizes, objective, entries, comments)


def read_sdp(path: PathLike) -> SdpProblem:
    path = Path(path)
    return parse_sdp_text(path.read_text(encoding="utf-8"), str(path))


# ============================================================================
# Solutions
# ============================================================================

@dataclass
class SdpSolution:
    """Numeric primal solution: bound, one dense block per type, slacks"""

    bound: float
    blocks: List[np.ndarray]
    slacks: np.ndarray
    objective: Optional[float] = None

    def is_symmetric(self, tolerance: float = 1e-6) -> bool:
        return all(np.allclose(B, B.T, atol=tolerance) for B in self.blocks)


def _sdpa_ymat_records(lines: Sequence[str]) -> List[str]:
    """Convert the ``yMat`` section of an sdpa output into ``2 block i j v`` records"""
    records = []
    t, row = 0, 1
    diagonal = False
    inside = False
    for line in lines:
        if not inside:
            inside = line.startswith("yMat =")
            continue
        if line.strip() == "}":
            break
        if line.startswith("{ {"):
            t += 1
            row = 1
            diagonal = False
        elif line.startswith("{+") or line.startswith("{-"):
            t += 1
            row = 1
            diagonal = True
        col = 1
        for token in line.replace("{", "").replace("}", "").split(","):
            value = token.strip()
            try:
                float(value)
            except ValueError:
                continue
            if diagonal:
                records.append(f"2 {t} {row} {row} {value}")
                row += 1
            elif row <= col:
                records.append(f"2 {t} {row} {col} {value}")
            col += 1
        if col > 1 and not diagonal:
            row += 1
    return records


def _check_complete(lines: List[str], values: Dict[int, Dict[Tuple[int, int], float]],
                    problem: SdpProblem, name: str) -> None:
    """Raise FormatError when a csdp file stops short of the announced layout"""
    if any(line.startswith("yMat =") for line in lines):
        return
    y = next(line for line in lines if line.strip()).split()
    if len(y) != problem.num_constraints:
        raise FormatError(
            f"truncated solution: {len(y)} dual values for {problem.num_constraints} constraints", name, 1
        )
    # an interior X is positive definite: every slack diagonal entry is written
    last = problem.num_blocks
    missing = [i for i in range(1, abs(problem.block_sizes[-1]) + 1) if (i, i) not in values.get(last, {})]
    if missing:
        raise FormatError(
            f"truncated solution: slack block {last} lacks {len(missing)} diagonal entries", name, len(lines)
        )


def parse_solution(path: PathLike, problem: Optional[SdpProblem] = None,
                   objective: Optional[float] = None) -> SdpSolution:
    """
    Read a solver solution file.

    Accepts the csdp layout (a line with the dual vector y, then
    ``matno block i j value`` records where matno 2 is the primal X) and
    sdpa output (the ``yMat`` section, converted to the same records).

    Args:
        path: Solution file
        problem: The emitted problem, to size blocks and check indices;
            without it sizes are inferred from the largest indices seen
        objective: Objective value reported on the solver's console

    Returns:
        SdpSolution with the bound (X block 1), Q blocks and slacks
    """
    path = Path(path)
    name = str(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not any(line.strip() for line in lines):
        raise FormatError("empty solution file", name, 1)

    if any(line.startswith("yMat =") for line in lines):
        records = list(enumerate(_sdpa_ymat_records(lines), start=1))
    else:
        first = next(i for i, line in enumerate(lines) if line.strip())
        records = [(i + 1, line) for i, line in enumerate(lines) if i > first and line.strip()]

    values: Dict[int, Dict[Tuple[int, int], float]] = {}
    for number, line in records:
        tokens = line.split()
        if len(tokens) != 5:
            raise FormatError(f"expected 5 fields, got {len(tokens)}", name, number)
        try:
            matno, block, i, j = (int(t) for t in tokens[:4])
            value = float(tokens[4])
        except ValueError:
            raise FormatError(f"malformed record {line.strip()!r}", name, number) from None
        if matno != 2:
            continue
        if problem is not None and not 1 <= block <= problem.num_blocks:
            raise FormatError(f"block {block} out of range", name, number)
        values.setdefault(block, {})[(i, j)] = value

    if problem is not None:
        _check_complete(lines, values, problem, name)
        sizes = [abs(s) for s in problem.block_sizes]
    else:
        count = max(values) if values else 0
        sizes = [
            max((max(i, j) for i, j in values.get(b, {})), default=0) for b in range(1, count + 1)
        ]
    if len(sizes) < 2 or (1, 1) not in values.get(1, {}):
        raise FormatError("solution has no value for the bound block", name, len(lines))

    dense = []
    for b, size in enumerate(sizes, start=1):
        M = np.zeros((size, size))
        for (i, j), v in values.get(b, {}).items():
            if not (1 <= i <= size and 1 <= j <= size):
                raise FormatError(f"index ({i}, {j}) outside block {b} of size {size}", name)
            M[i - 1, j - 1] = v
            M[j - 1, i - 1] = v
        dense.append(M)

    solution = SdpSolution(
        bound=float(dense[0][0, 0]),
        blocks=dense[1:-1],
        slacks=np.diag(dense[-1]).copy(),
        objective=objective,
    )
    logger.info("parsed solution %s: bound %.10f, %d type blocks", name, solution.bound, len(solution.blocks))
    return solution
