"""
Turanflag Certificates - Exact density bounds, their file format and verification

A certificate claims that for every admissible graph H of order n

    edge_density(H) + sum over types t of <Q_t, P_t(H)>  <=  bound

with every Q_t positive semidefinite. Verification uses Fraction and
FieldElement arithmetic only.

File format (UTF-8, ``#`` starts a comment line)::

    TURAN-CERT v1
    n 6
    discriminant 0
    bound 2/9
    family 2
    6:123,124,345,156
    !4:123
    block 0 2
    type 2:
    flag 4:
    flag 4:134,234
    1/3
    -1/6 1/12

Each block lists its type and flags (optional; when absent they are taken
from the enumeration order) and then the lower triangle, one row per line.
"""

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from ..errors import BoundViolation, CertificateError, FieldError, FormatError, GraphError, PsdError
from ..core.exact import (
    FieldElement,
    ZERO,
    as_field,
    field_sign,
    format_field_element,
    is_square_free,
    parse_field_element,
)
from ..core.family import Family, generate_admissible
from ..core.hypergraph import ThreeGraph, format_graph, parse_graph
from ..process.pool import parallel_map
from .flags import FlagContext, PairDensityMatrix, enumerate_types_and_flags
from .ldl import LdlResult, ldl_decompose
from .problem import FlagProblem

logger = logging.getLogger(__name__)

MAGIC = "TURAN-CERT v1"

PathLike = Union[str, Path]
Matrix = Tuple[Tuple[FieldElement, ...], ...]


def _symmetric(rows: Sequence[Sequence[object]]) -> Matrix:
    """Full symmetric matrix from a square or lower-triangular row list"""
    size = len(rows)
    full = [[ZERO] * size for _ in range(size)]
    for i, row in enumerate(rows):
        if len(row) not in (i + 1, size):
            raise GraphError(f"row {i} has {len(row)} entries for a {size}x{size} block")
        for j in range(i + 1):
            full[i][j] = full[j][i] = as_field(row[j])
        if len(row) == size:
            for j in range(i + 1, size):
                if as_field(row[j]) != as_field(rows[j][i]):
                    raise GraphError(f"matrix is not symmetric at ({i}, {j})")
    return tuple(tuple(r) for r in full)


@dataclass(frozen=True)
class CertificateBlock:
    """One PSD block: the type, its flag order and the symmetric matrix"""

    type_index: int
    matrix: Matrix
    sigma: Optional[ThreeGraph] = None
    flags: Optional[Tuple[ThreeGraph, ...]] = None

    @classmethod
    def of(cls, type_index: int, rows: Sequence[Sequence[object]],
           sigma: Optional[ThreeGraph] = None,
           flags: Optional[Sequence[ThreeGraph]] = None) -> "CertificateBlock":
        return cls(type_index, _symmetric(rows), sigma, None if flags is None else tuple(flags))

    @classmethod
    def from_context(cls, context: FlagContext, rows: Sequence[Sequence[object]]) -> "CertificateBlock":
        return cls.of(context.sigma.index, rows, context.sigma.graph, [f.graph for f in context.flags])

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    @property
    def has_flags(self) -> bool:
        return self.sigma is not None and self.flags is not None

    def context(self) -> FlagContext:
        if not self.has_flags:
            raise CertificateError(f"block {self.type_index} does not list its type and flags")
        return FlagContext.from_graphs(self.sigma, self.flags, self.type_index)


@dataclass(frozen=True)
class Certificate:
    """A claimed upper bound on the Turan density of a family"""

    n: int
    family: Family
    discriminant: int
    bound: FieldElement
    blocks: Tuple[CertificateBlock, ...] = ()

    def __post_init__(self):
        d = self.discriminant
        if not is_square_free(d):
            raise FieldError(f"discriminant {d} is not 0 or a square-free integer > 1")
        values = [self.bound] + [v for b in self.blocks for row in b.matrix for v in row]
        for v in values:
            if v.d not in (0, d):
                raise FieldError(f"entry {v} is not in Q[sqrt({d})]")
        for block in self.blocks:
            if block.flags is not None and len(block.flags) != block.dimension:
                raise GraphError(
                    f"block {block.type_index} has dimension {block.dimension} "
                    f"but lists {len(block.flags)} flags"
                )

    @property
    def flag_orders(self) -> List[Optional[Tuple[ThreeGraph, ...]]]:
        return [b.flags for b in self.blocks]

    def with_bound(self, bound: FieldElement) -> "Certificate":
        return replace(self, bound=as_field(bound))


def trivial_certificate(n: int, family: Family, bound: object = 1,
                        contexts: Sequence[FlagContext] = ()) -> Certificate:
    """All-zero blocks for the given contexts"""
    bound = as_field(bound)
    blocks = tuple(
        CertificateBlock.from_context(ctx, [[0] * len(ctx) for _ in range(len(ctx))])
        for ctx in contexts
    )
    return Certificate(n, family, bound.d, bound, blocks)


# ============================================================================
# Serialization
# ============================================================================

def format_certificate(c: Certificate) -> str:
    lines = [
        MAGIC,
        f"n {c.n}",
        f"discriminant {c.discriminant}",
        f"bound {format_field_element(c.bound)}",
        f"family {len(c.family)}",
    ]
    lines += [format_graph(F) for F in c.family.members]
    lines += ["!" + format_graph(F) for F in c.family.induced_members]
    for block in c.blocks:
        lines.append(f"block {block.type_index} {block.dimension}")
        if block.has_flags:
            lines.append(f"type {format_graph(block.sigma)}")
            lines += [f"flag {format_graph(f)}" for f in block.flags]
        for i, row in enumerate(block.matrix):
            lines.append(" ".join(format_field_element(v) for v in row[:i + 1]))
    return "\n".join(lines) + "\n"


def write_certificate(c: Certificate, path: PathLike) -> Path:
    path = Path(path)
    path.write_text(format_certificate(c), encoding="utf-8")
    logger.info("wrote certificate with %d blocks to %s", len(c.blocks), path)
    return path


class _Lines:
    """Cursor over the meaningful lines of a certificate file"""

    def __init__(self, text: str, path: Optional[str]):
        self.path = path
        self.items = [
            (number, raw.strip())
            for number, raw in enumerate(text.splitlines(), start=1)
            if raw.strip() and not raw.strip().startswith("#")
        ]
        self.pos = 0

    def error(self, message: str, number: Optional[int] = None) -> FormatError:
        if number is None:
            number = self.items[min(self.pos, len(self.items) - 1)][0] if self.items else None
        return FormatError(message, self.path, number)

    def peek(self) -> Optional[Tuple[int, str]]:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self, what: str) -> Tuple[int, str]:
        if self.pos >= len(self.items):
            raise self.error(f"unexpected end of file, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyword(self, key: str) -> Tuple[int, str]:
        number, line = self.next(f"'{key}'")
        head, _, rest = line.partition(" ")
        if head != key:
            raise self.error(f"expected '{key}', got {line!r}", number)
        return number, rest.strip()

    def integer(self, key: str) -> int:
        number, rest = self.keyword(key)
        try:
            return int(rest)
        except ValueError:
            raise self.error(f"'{key}' needs an integer, got {rest!r}", number) from None


def parse_certificate_text(text: str, path: Optional[str] = None) -> Certificate:
    """Parse certificate text; errors carry the offending line number"""
    cursor = _Lines(text, path)
    number, line = cursor.next("header")
    if line != MAGIC:
        raise cursor.error(f"expected '{MAGIC}' header", number)

    n = cursor.integer("n")
    d = cursor.integer("discriminant")
    number, rest = cursor.keyword("bound")
    try:
        bound = parse_field_element(rest)
    except FieldError as e:
        raise cursor.error(str(e), number) from e
    count = cursor.integer("family")
    members, induced = [], []
    for _ in range(count):
        number, line = cursor.next("family member")
        target = induced if line.startswith("!") else members
        try:
            target.append(parse_graph(line.lstrip("!")))
        except GraphError as e:
            raise cursor.error(str(e), number) from e

    blocks = []
    while cursor.peek() is not None:
        number, rest = cursor.keyword("block")
        parts = rest.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise cursor.error("expected 'block <type-index> <dimension>'", number)
        index, dim = int(parts[0]), int(parts[1])
        if dim < 1:
            raise cursor.error(f"block {index} has dimension {dim}", number)
        sigma, flags = None, None
        peeked = cursor.peek()
        if peeked is not None and peeked[1].startswith("type"):
            try:
                sigma = parse_graph(cursor.keyword("type")[1])
                flags = [parse_graph(cursor.keyword("flag")[1]) for _ in range(dim)]
            except GraphError as e:
                raise cursor.error(f"block {index}: {e}") from e
            check_block_orders(n, index, sigma, flags)
        rows = []
        for i in range(dim):
            number, line = cursor.next(f"row {i + 1} of block {index}")
            tokens = line.split()
            if len(tokens) != i + 1:
                raise cursor.error(
                    f"block {index}: row {i + 1} has {len(tokens)} entries, expected {i + 1} "
                    f"for dimension {dim}",
                    number,
                )
            try:
                rows.append([parse_field_element(t) for t in tokens])
            except FieldError as e:
                raise cursor.error(f"block {index}: {e}", number) from e
        blocks.append(CertificateBlock.of(index, rows, sigma, flags))

    try:
        return Certificate(n, Family.of(members, induced), d, bound, tuple(blocks))
    except (FieldError, GraphError) as e:
        raise FormatError(str(e), path) from e


def parse_certificate(path: PathLike) -> Certificate:
    path = Path(path)
    return parse_certificate_text(path.read_text(encoding="utf-8"), str(path))


# ============================================================================
# Verification
# ============================================================================

@dataclass(frozen=True)
class SlackReport:
    """Exact slack of every admissible graph"""

    graphs: Tuple[ThreeGraph, ...]
    slacks: Tuple[FieldElement, ...]

    @property
    def sharp_set(self) -> List[ThreeGraph]:
        return sorted((H for H, s in zip(self.graphs, self.slacks) if s == ZERO), key=lambda G: G.mask)

    @property
    def all_nonnegative(self) -> bool:
        return all(field_sign(s) >= 0 for s in self.slacks)

    def worst(self) -> Tuple[ThreeGraph, FieldElement]:
        """Graph with the least slack (first in admissible order on ties)"""
        index = min(range(len(self.slacks)), key=lambda i: (self.slacks[i], i))
        return self.graphs[index], self.slacks[index]

    def __len__(self) -> int:
        return len(self.graphs)


@dataclass(frozen=True)
class CertificateCheck:
    """Full verification outcome: PSD factorisations and slacks"""

    factorizations: Tuple[LdlResult, ...]
    report: SlackReport
    type_indices: Tuple[int, ...] = field(default=())

    @property
    def psd_ok(self) -> bool:
        return all(f.is_psd for f in self.factorizations)

    @property
    def bounds_ok(self) -> bool:
        return self.report.all_nonnegative

    @property
    def is_valid(self) -> bool:
        return self.psd_ok and self.bounds_ok

    def worst_pivot(self) -> Optional[Tuple[int, int, FieldElement]]:
        """(block, pivot, value) of the first failing pivot, if any"""
        for index, f in zip(self.type_indices, self.factorizations):
            if not f.is_psd:
                return index, f.failed_pivot, f.failed_value
        return None


def inner_product(Q: Sequence[Sequence[object]], P: PairDensityMatrix) -> FieldElement:
    """sum over a, b of Q[a][b] * P[a][b]"""
    total = ZERO
    for a, row in enumerate(P.entries):
        for b, p in enumerate(row):
            if p:
                total = total + as_field(Q[a][b]) * p
    return total


def _slack(job) -> FieldElement:
    bound, density, matrices, blocks = job
    value = bound - density
    for Q, P in zip(blocks, matrices):
        value = value - inner_product(Q, P)
    return value


def check_block_orders(n: int, index: int, sigma: ThreeGraph,
                       flags: Sequence[ThreeGraph]) -> None:
    """Flags on m vertices over an s-vertex type must satisfy 2m - s = n"""
    s = sigma.n
    for flag in flags:
        if 2 * flag.n - s != n:
            raise CertificateError(
                f"block {index}: flag {format_graph(flag)} has {flag.n} vertices; "
                f"a type of order {s} at n = {n} needs 2m - {s} = {n}"
            )


def certificate_contexts(c: Certificate, admissible: Optional[Sequence[ThreeGraph]] = None,
                         workers: int = 1) -> List[FlagContext]:
    """Contexts of the blocks, resolving blocks without explicit flags by enumeration order"""
    enumerated = None
    contexts = []
    for block in c.blocks:
        if block.has_flags:
            check_block_orders(c.n, block.type_index, block.sigma, block.flags)
            try:
                contexts.append(block.context())
            except GraphError as e:
                raise CertificateError(f"block {block.type_index}: {e}") from e
            continue
        if enumerated is None:
            if admissible is None:
                admissible = generate_admissible(c.n, c.family, workers)
            enumerated = {ctx.sigma.index: ctx for ctx in enumerate_types_and_flags(c.n, admissible)}
        ctx = enumerated.get(block.type_index)
        if ctx is None:
            raise CertificateError(f"block {block.type_index}: no such type at n = {c.n}")
        if len(ctx) != block.dimension:
            raise CertificateError(
                f"block {block.type_index}: dimension {block.dimension}, type has {len(ctx)} flags"
            )
        contexts.append(ctx)
    return contexts


def check_certificate(c: Certificate, workers: int = 1,
                      problem: Optional[FlagProblem] = None) -> CertificateCheck:
    """
    Factor every block and compute every slack without raising on failure.

    Args:
        c: Certificate
        workers: Process count for admissible generation and slacks
        problem: Precomputed problem whose contexts match the blocks
            (skips regeneration)
    """
    factorizations = tuple(ldl_decompose(b.matrix) for b in c.blocks)
    if problem is None:
        admissible = generate_admissible(c.n, c.family, workers)
        contexts = certificate_contexts(c, admissible, workers)
        if admissible:
            problem = FlagProblem.from_contexts(c.n, c.family, admissible, contexts, workers)
    elif len(problem.contexts) != len(c.blocks):
        raise CertificateError(f"{len(c.blocks)} blocks for {len(problem.contexts)} types")

    if problem is None:
        report = SlackReport((), ())
    else:
        blocks = [b.matrix for b in c.blocks]
        jobs = [(c.bound, density, row, blocks) for density, row in zip(problem.densities, problem.matrices)]
        report = SlackReport(problem.admissible, tuple(parallel_map(_slack, jobs, workers)))
    return CertificateCheck(factorizations, report, tuple(b.type_index for b in c.blocks))


def verify_certificate(c: Certificate, workers: int = 1,
                       problem: Optional[FlagProblem] = None) -> SlackReport:
    """
    Verify a certificate exactly.

    Returns:
        SlackReport of all admissible graphs

    Raises:
        PsdError: A block has a negative pivot or a zero pivot with a
            nonzero column (checked before any inequality)
        BoundViolation: The most violated admissible graph and its excess
    """
    check = check_certificate(c, workers, problem)
    failure = check.worst_pivot()
    if failure is not None:
        raise PsdError(*failure)
    if not check.bounds_ok:
        graph, slack = check.report.worst()
        raise BoundViolation(format_graph(graph), -slack)
    logger.info("certificate valid: %d graphs, %d sharp", len(check.report), len(check.report.sharp_set))
    return check.report


def sharp_graphs(c: Certificate, workers: int = 1,
                 problem: Optional[FlagProblem] = None) -> List[ThreeGraph]:
    """Admissible graphs with zero slack in a valid certificate, sorted by mask"""
    return verify_certificate(c, workers, problem).sharp_set
