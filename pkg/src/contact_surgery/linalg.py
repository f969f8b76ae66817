"""
Exact integer and rational linear algebra.

Matrices are plain lists of rows of Python ints; nothing here ever touches
floating point.  Rationals are ``fractions.Fraction``, which is always kept
reduced with a positive denominator.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

Matrix = List[List[int]]
Vector = List[int]

# Above this nullity the mod 2 solver refuses to list every solution.
MAX_ENUMERATED_NULLITY = 20


class NotSymmetric(ValueError):
    pass


def to_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = [[int(x) for x in row] for row in rows]
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def shape(M: Sequence[Sequence[int]]) -> Tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    rows, cols = shape(M)
    return [[M[i][j] for i in range(rows)] for j in range(cols)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise ValueError("shape mismatch %r x %r" % ((n, k), (k2, m)))
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list:
    if shape(A)[1] != len(v) and A:
        raise ValueError("shape mismatch")
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def is_symmetric(M: Sequence[Sequence[int]]) -> bool:
    n, m = shape(M)
    return n == m and all(M[i][j] == M[j][i]
                          for i in range(n) for j in range(i + 1, n))


def block_diag(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    a, b = len(A), len(B)
    out = [[0] * (a + b) for _ in range(a + b)]
    for i in range(a):
        out[i][:a] = list(A[i])
    for i in range(b):
        out[a + i][a:] = list(B[i])
    return out


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n, m = shape(M)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form

@dataclass(frozen=True)
class SnfResult:
    """``U * M * V == S`` with U, V unimodular and S diagonal."""
    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> List[int]:
        return [self.S[i][i] for i in range(min(shape(self.S)))]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SnfResult:
    """
    Smith normal form with its transforms.

    Pivots are the entry of smallest absolute value in the remaining block,
    ties going to the lowest (row, col).  Signs are fixed with column
    negations so that, e.g., ``[[-3]]`` keeps ``U = [[1]]``.
    """
    A = to_matrix(M)
    rows, cols = shape(A)
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        for R in (A, U):
            R[dst] = [a + c * b for a, b in zip(R[dst], R[src])]

    def add_col(dst, src, c):
        for R in (A, V):
            for row in R:
                row[dst] += c * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return SnfResult(U, A, V)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, rows)
                        for j in range(t + 1, cols) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            for R in (A, V):
                for row in R:
                    row[t] = -row[t]
    return SnfResult(U, A, V)


def invariant_factors(M: Sequence[Sequence[int]]) -> List[int]:
    """Nontrivial SNF diagonal entries (> 1), followed by zeros for free rank."""
    M = to_matrix(M)
    diag = smith_normal_form(M).diagonal
    n = shape(M)[0]
    diag += [0] * (n - len(diag))
    return [d for d in diag if d != 1]


def rank(M: Sequence[Sequence[int]]) -> int:
    return sum(1 for d in smith_normal_form(M).diagonal if d)


# ---------------------------------------------------------------------------
# Rational solves and signature

def _rref(A: List[list]) -> List[int]:
    """In-place reduced row echelon form over Q; returns pivot columns."""
    rows, cols = shape(A)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / Fraction(A[r][c])
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return pivots


def solve_rational(Q: Sequence[Sequence[int]], r: Sequence[int]) -> Optional[List[Fraction]]:
    """
    A rational solution ``b`` of ``Q b = r``, or ``None`` when there is none.

    Free variables are set to zero, so the answer is deterministic.
    """
    n, m = shape(Q)
    if n != len(r):
        raise ValueError("dimension mismatch: %d rows, rhs of length %d" % (n, len(r)))
    if n != m and n:
        raise ValueError("expected a square matrix")
    A = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(Q, r)]
    pivots = _rref(A)
    if m in pivots:
        return None
    b = [Fraction(0)] * m
    for row, c in zip(A, pivots):
        b[c] = row[m]
    return b


def signature(Q: Sequence[Sequence[int]]) -> int:
    """
    Signature of a symmetric integer matrix by rational congruence
    diagonalization.
    """
    if not is_symmetric(Q):
        raise NotSymmetric("signature needs a symmetric matrix")
    A = [[Fraction(x) for x in row] for row in Q]
    n = len(A)
    sig = 0
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    continue
                # e_k -> e_k + e_j makes the pivot 2 * A[k][j] != 0
                A[k] = [x + y for x, y in zip(A[k], A[j])]
                for row in A:
                    row[k] += row[j]
        p = A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
                for row in A:
                    row[i] -= f * row[k]
        sig += 1 if p > 0 else -1
    return sig


# ---------------------------------------------------------------------------
# Affine systems over GF(2)

@dataclass(frozen=True)
class Mod2AffineSpace:
    """Solution set ``particular + span(kernel)`` of a linear system mod 2."""
    particular: Optional[Tuple[int, ...]]
    kernel: Tuple[Tuple[int, ...], ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def nullity(self) -> int:
        return len(self.kernel)

    def __len__(self) -> int:
        return 2 ** self.nullity if self.consistent else 0

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return iter(self.elements())

    def elements(self) -> List[Tuple[int, ...]]:
        """Every solution, sorted lexicographically."""
        if not self.consistent:
            return []
        if self.nullity > MAX_ENUMERATED_NULLITY:
            raise OverflowError("nullity %d too large to enumerate" % self.nullity)
        out = set()
        for coeffs in product((0, 1), repeat=self.nullity):
            x = list(self.particular)
            for c, k in zip(coeffs, self.kernel):
                if c:
                    x = [a ^ b for a, b in zip(x, k)]
            out.add(tuple(x))
        return sorted(out)


def solve_affine_mod2(A: Sequence[Sequence[int]], d: Sequence[int]) -> Mod2AffineSpace:
    """All x over GF(2) with ``A x = d`` (entries read mod 2)."""
    n, m = shape(A)
    if n != len(d):
        raise ValueError("dimension mismatch")
    if n == 0:
        return Mod2AffineSpace((), ())
    M = [[x & 1 for x in row] + [v & 1] for row, v in zip(A, d)]
    pivots = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(n):
            if i != r and M[i][c]:
                M[i] = [a ^ b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    if any(row[m] for row in M[r:]):
        return Mod2AffineSpace(None, ())
    x = [0] * m
    for i, c in enumerate(pivots):
        x[c] = M[i][m]
    kernel = []
    for f in (c for c in range(m) if c not in pivots):
        k = [0] * m
        k[f] = 1
        for i, c in enumerate(pivots):
            k[c] = M[i][f]
        kernel.append(tuple(k))
    return Mod2AffineSpace(tuple(x), tuple(kernel))
