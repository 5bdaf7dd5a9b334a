"""Exact integer / rational linear algebra on small dense matrices.

Scalars are Python ``int`` or :class:`fractions.Fraction`; nothing here ever
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import FormatError

Rational = Fraction


def _normalize(x):
    if isinstance(x, bool):
        raise FormatError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    raise FormatError(f"non-exact matrix entry {x!r}")


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with exact entries, row-major."""

    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise FormatError("negative dimension")
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise FormatError(f"entries do not fit a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(_normalize(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise FormatError("column count is ambiguous for an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            if rows is None:
                raise FormatError("row count is ambiguous for an empty matrix")
            return cls(rows, 0, tuple(() for _ in range(rows)))
        return cls.from_rows(zip(*columns)) if len(columns[0]) else cls(0, len(columns), ())

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else
                      tuple(() for _ in range(self.cols)))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise FormatError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            return Matrix(self.rows, other.cols, tuple(
                tuple(_normalize(sum(a * b for a, b in zip(r, c))) for c in ocols)
                for r in self.data))
        return self.apply(other)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise FormatError(f"vector of length {len(vec)} for {self.rows}x{self.cols} matrix")
        return tuple(_normalize(sum(a * b for a, b in zip(r, vec) if a)) for r in self.data)

    def __neg__(self):
        return Matrix(self.rows, self.cols, tuple(tuple(-x for x in r) for r in self.data))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(len(rows), len(cols),
                      tuple(tuple(self.data[i][j] for j in cols) for i in rows))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise FormatError("row counts differ")
        return Matrix(self.rows, self.cols + other.cols,
                      tuple(a + b for a, b in zip(self.data, other.data)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise FormatError("column counts differ")
        return Matrix(self.rows + other.rows, self.cols, self.data + other.data)

    def scale_rows(self, factors: Sequence) -> "Matrix":
        return Matrix(self.rows, self.cols,
                      tuple(tuple(f * x for x in r) for f, r in zip(factors, self.data)))

    def scale_columns(self, factors: Sequence) -> "Matrix":
        return Matrix(self.rows, self.cols,
                      tuple(tuple(f * x for f, x in zip(factors, r)) for r in self.data))

    def permute(self, row_order: Sequence[int], col_order: Sequence[int]) -> "Matrix":
        return self.submatrix(row_order, col_order)

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self.data for x in r)

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.tolist()})"


IntMatrix = Matrix
RatMatrix = Matrix


def as_matrix(M) -> Matrix:
    return M if isinstance(M, Matrix) else Matrix.from_rows(M)


def l1_norm(vec: Iterable) -> Fraction | int:
    return sum(abs(x) for x in vec)


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def canonical_sign(vec: Sequence) -> tuple:
    """Flip ``vec`` so its first nonzero entry is positive."""
    for x in vec:
        if x:
            return tuple(vec) if x > 0 else tuple(-y for y in vec)
    return tuple(vec)


# ---------------------------------------------------------------- elimination

def rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    A = [[Fraction(x) for x in r] for r in M.data]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        p = next((i for i in range(r, M.rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(M.rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return A, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: Matrix) -> list[tuple]:
    """Basis of {x : Mx = 0} over Q, one vector per free column."""
    M = as_matrix(M)
    R, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        x = [Fraction(0)] * M.cols
        x[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            x[pc] = -R[row][f]
        basis.append(tuple(_normalize(v) for v in x))
    return basis


def image_basis(M: Matrix) -> list[tuple]:
    """Pivot columns of ``M``: a basis of its column space made of actual columns."""
    M = as_matrix(M)
    return [M.col(j) for j in rref(M)[1]]


def pivot_columns(M: Matrix) -> list[int]:
    return rref(as_matrix(M))[1]


def independent_rows(M: Matrix) -> list[int]:
    return rref(as_matrix(M).T)[1]


def solve_rational(M: Matrix, v: Sequence) -> tuple | None:
    """One rational solution of Mx = v, or None when v is not in the column space."""
    M = as_matrix(M)
    aug = M.hstack(Matrix(M.rows, 1, tuple((x,) for x in v)))
    R, pivots = rref(aug)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [Fraction(0)] * M.cols
    for row, pc in enumerate(pivots):
        x[pc] = R[row][M.cols]
    return tuple(_normalize(t) for t in x)


def in_column_space(M: Matrix, v: Sequence) -> bool:
    return solve_rational(M, v) is not None


# ---------------------------------------------------------------- determinants

def det(M: Matrix) -> int | Fraction:
    """Bareiss fraction-free elimination; exact for int and Fraction entries."""
    M = as_matrix(M)
    if M.rows != M.cols:
        raise FormatError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    A = [list(r) for r in M.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                num = row_i[j] * akk - aik * row_k[j]
                row_i[j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = akk
    return _normalize(sign * A[n - 1][n - 1])


def minor_det(M: Matrix, rows: Sequence[int], cols: Sequence[int]) -> int | Fraction:
    M = as_matrix(M)
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise IndexError("minor needs as many rows as columns")
    for idx, bound, what in ((rows, M.rows, "row"), (cols, M.cols, "column")):
        if any(i < 0 or i >= bound for i in idx):
            raise IndexError(f"{what} index out of range")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise IndexError(f"{what} indices must be strictly increasing")
    return det(M.submatrix(rows, cols))


def line_through(M: Matrix) -> tuple[int, ...] | None:
    """Generator of the kernel of an (r-1) x r integer matrix of full rank.

    Computed as the generalized cross product of the rows (signed maximal
    minors); returns None when the rank is deficient.
    """
    r = M.cols
    if M.rows != r - 1:
        raise FormatError(f"need an (r-1) x r matrix, got {M.rows} x {r}")
    vec = []
    for j in range(r):
        keep = [c for c in range(r) if c != j]
        d = det(M.submatrix(range(M.rows), keep))
        vec.append(d if j % 2 == 0 else -d)
    if not any(vec):
        return None
    return tuple(vec)


# ---------------------------------------------------------------- Smith normal form

@dataclass(frozen=True)
class SNFResult:
    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M: Matrix) -> SNFResult:
    """Smith normal form U·M·V = S by integer row/column operations.

    Pivot choice is the entry of least absolute value in the remaining block.
    """
    M = as_matrix(M)
    if not M.is_integral():
        raise FormatError("Smith normal form needs an integer matrix")
    m, n = M.rows, M.cols
    S = [list(r) for r in M.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        S[a], S[b] = S[b], S[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for r in S:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]

    def add_row(dst, src, q):  # row_dst += q * row_src
        S[dst] = [x + q * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in S:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = S[t][t]
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
            rest = [(abs(S[i][t]), i, None) for i in range(t + 1, m) if S[i][t]]
            rest += [(abs(S[t][j]), None, j) for j in range(t + 1, n) if S[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda e: e[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(Matrix.from_rows(U, cols=m), Matrix.from_rows(S, cols=n),
                     Matrix.from_rows(V, cols=n))


def invariant_factors(M: Matrix) -> list[int]:
    return smith_normal_form(M).invariant_factors


def integer_solution(M: Matrix, v: Sequence[int], snf: SNFResult | None = None) -> tuple | None:
    """An integer x with Mx = v, or None. Uses U·M·V = S: solve S y = U v, x = V y."""
    M = as_matrix(M)
    snf = snf or smith_normal_form(M)
    Uv = snf.U.apply(v)
    diag = snf.diagonal
    y = [0] * M.cols
    for i, rhs in enumerate(Uv):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if rhs != 0:
                return None
        else:
            if not isinstance(rhs, int) or rhs % d:
                return None
            y[i] = rhs // d
    return snf.V.apply(y)

