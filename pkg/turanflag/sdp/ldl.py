"""
Turanflag LDL - Exact LDL^T factorisation over Q[sqrt(d)]

Positive semidefiniteness is decided from exact pivot signs. A zero pivot is
accepted only when the rest of its column is zero as well.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..core.exact import FieldElement, ONE, ZERO, as_field, field_sign

Matrix = Sequence[Sequence[object]]


@dataclass(frozen=True)
class LdlResult:
    """Factors of A = L D L^T, or the pivot where positive semidefiniteness fails"""

    L: Tuple[Tuple[FieldElement, ...], ...]
    D: Tuple[FieldElement, ...]
    failed_pivot: Optional[int] = None
    failed_value: Optional[FieldElement] = None
    reason: str = ""

    @property
    def is_psd(self) -> bool:
        return self.failed_pivot is None


def _square(A: Matrix) -> List[List[FieldElement]]:
    rows = [[as_field(v) for v in row] for row in A]
    if any(len(row) != len(rows) for row in rows):
        raise ValueError("matrix must be square")
    return rows


def is_symmetric(A: Matrix) -> bool:
    n = len(A)
    return all(A[i][j] == A[j][i] for i in range(n) for j in range(i))


def ldl_decompose(A: Matrix) -> LdlResult:
    """
    Factor a symmetric matrix with exact entries.

    Args:
        A: Square symmetric matrix of int, Fraction or FieldElement

    Returns:
        LdlResult; on failure L and D hold the columns completed so far
    """
    S = _square(A)
    n = len(S)
    L = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    D: List[FieldElement] = []

    def result(pivot=None, value=None, reason=""):
        return LdlResult(tuple(tuple(r) for r in L), tuple(D), pivot, value, reason)

    for k in range(n):
        pivot = S[k][k]
        sign = field_sign(pivot)
        if sign < 0:
            return result(k, pivot, "negative pivot")
        if sign == 0:
            for i in range(k + 1, n):
                if S[i][k] != ZERO:
                    return result(k, S[i][k], f"zero pivot with nonzero entry in row {i}")
            D.append(ZERO)
            continue
        D.append(pivot)
        inverse = pivot.inverse()
        column = [S[i][k] * inverse for i in range(k + 1, n)]
        for offset, i in enumerate(range(k + 1, n)):
            L[i][k] = column[offset]
            if S[i][k] == ZERO:
                continue
            for j in range(k + 1, i + 1):
                S[i][j] = S[i][j] - column[offset] * S[j][k]
                S[j][i] = S[i][j]
    return result()


def is_psd(A: Matrix) -> bool:
    return ldl_decompose(A).is_psd


def ldl_reassemble(L: Matrix, D: Sequence[object]) -> List[List[FieldElement]]:
    """L * diag(D) * L^T"""
    n = len(D)
    return [
        [sum((as_field(L[i][k]) * D[k] * L[j][k] for k in range(n)), ZERO) for j in range(n)]
        for i in range(n)
    ]
