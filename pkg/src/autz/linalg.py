"""Exact integer linear algebra: Smith and Hermite forms, abelian invariants.

All arithmetic is on Python ints (arbitrary precision). The Smith elimination
loop runs in the compiled kernel when available and drops back to the
pure-Python kernel on int64 overflow, so results never depend on word size.
"""

from dataclasses import dataclass
from typing import Sequence

from ._backend import snf_reduce

Matrix = list  # list of row lists of int


class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols=None):
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError(f"ragged matrix: expected {cols} columns, got {len(r)}")
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls(_identity(n), n)

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], n)

    def tolist(self):
        return [list(r) for r in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return self.cols == other.cols and self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __matmul__(self, other):
        return IntMatrix(matmul(self.entries, other.entries), other.cols)

    def transpose(self):
        return IntMatrix(transpose(self.entries, self.cols), self.rows)

    def det(self):
        return determinant(self.entries)

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"


def _as_rows(M):
    if isinstance(M, IntMatrix):
        return M.tolist(), M.cols
    rows = [list(map(int, r)) for r in M]
    return rows, (len(rows[0]) if rows else 0)


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append(acc)
    return out


def transpose(A, cols=None):
    if cols is None:
        cols = len(A[0]) if A else 0
    return [[A[i][j] for i in range(len(A))] for j in range(cols)]


def determinant(A):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self):
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(M) -> SnfDecomposition:
    rows, n = _as_rows(M)
    m = len(rows)
    if m == 0 or n == 0:
        return SnfDecomposition(IntMatrix.identity(m), IntMatrix.zeros(m, n), IntMatrix.identity(n))
    D, U, V = snf_reduce(rows, track_u=True, track_v=True)
    return SnfDecomposition(IntMatrix(U, m), IntMatrix(D, n), IntMatrix(V, n))


def smith_diagonal(M):
    """Nonzero-or-zero Smith diagonal without computing transforms."""
    rows, n = _as_rows(M)
    if not rows or n == 0:
        return ()
    D, _, _ = snf_reduce(rows, track_u=False, track_v=False)
    return tuple(D[i][i] for i in range(min(len(D), n)))


@dataclass(frozen=True)
class AbelianInvariants:
    """ℤ^free_rank ⊕ ⊕ ℤ/d_i with d_1 | d_2 | ... and every d_i >= 2."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = 1
        for d in self.torsion:
            if d < 2 or d % prev:
                raise ValueError(f"not an invariant factor chain: {self.torsion}")
            prev = d

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def is_torsion_free(self):
        return not self.torsion

    @property
    def torsion_order(self):
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _invariants_from_diagonal(diag, n):
    rank = 0
    torsion = []
    for d in diag:
        if d:
            rank += 1
            if d > 1:
                torsion.append(d)
    return AbelianInvariants(n - rank, tuple(torsion))


def abelian_invariants(n_generators, relations) -> AbelianInvariants:
    """Invariants of ℤ^n modulo the row span of ``relations``."""
    rows, n = _as_rows(relations)
    if rows and n != n_generators:
        raise ValueError(f"relations have {n} columns, expected {n_generators}")
    rows = [r for r in rows if any(r)]
    if not rows:
        return AbelianInvariants(n_generators)
    return _invariants_from_diagonal(smith_diagonal(rows), n_generators)


class QuotientMap:
    """Canonical coordinates on ℤ^n / row-span(relations).

    A vector ``v`` maps to ``v @ V`` with coordinate ``i`` reduced mod ``d_i``;
    slots with ``d_i == 1`` are dropped. Two vectors are equal in the quotient
    exactly when their coordinates coincide.
    """

    def __init__(self, n_generators, relations):
        rows, n = _as_rows(relations)
        if rows and n != n_generators:
            raise ValueError(f"relations have {n} columns, expected {n_generators}")
        rows = [r for r in rows if any(r)]
        self.n = n_generators
        if rows:
            D, _, V = snf_reduce(rows, track_u=False, track_v=True)
            diag = [D[i][i] for i in range(min(len(D), n_generators))]
        else:
            V = _identity(n_generators)
            diag = []
        diag += [0] * (n_generators - len(diag))
        self.moduli = tuple(diag)
        self.invariants = _invariants_from_diagonal(diag, n_generators)
        keep = [j for j, d in enumerate(diag) if d != 1]
        self._keep = keep
        # only the kept columns of V matter
        self._cols = [[V[i][j] for i in range(n_generators)] for j in keep]

    def __call__(self, v: Sequence[int]):
        if len(v) != self.n:
            raise ValueError(f"vector of length {len(v)}, expected {self.n}")
        nz = [(i, x) for i, x in enumerate(v) if x]
        out = []
        for j, col in zip(self._keep, self._cols):
            w = 0
            for i, x in nz:
                c = col[i]
                if c:
                    w += x * c
            d = self.moduli[j]
            out.append(w % d if d else w)
        return tuple(out)

    def is_zero(self, v):
        return not any(self(v))


def quotient_coordinates(relations, v, n_generators=None):
    if n_generators is None:
        n_generators = len(v)
    return QuotientMap(n_generators, relations)(v)


def _ext_gcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(M) -> IntMatrix:
    """Column-style Hermite form: same column lattice, lower echelon.

    Pivots are positive, pivot rows strictly increase left to right, entries
    left of a pivot lie in ``[0, pivot)``, and zero columns come last.
    """
    rows, n = _as_rows(M)
    m = len(rows)
    A = [list(r) for r in rows]
    k = 0
    for i in range(m):
        if k >= n:
            break
        row = A[i]
        for j in range(k + 1, n):
            if row[j] == 0:
                continue
            a, b = row[k], row[j]
            g, x, y = _ext_gcd(a, b)
            pa, pb = a // g, b // g
            # [col_k, col_j] <- [x col_k + y col_j, -pb col_k + pa col_j]
            for r in A:
                ck, cj = r[k], r[j]
                r[k] = x * ck + y * cj
                r[j] = -pb * ck + pa * cj
        p = row[k]
        if p == 0:
            continue
        if p < 0:
            for r in A:
                r[k] = -r[k]
            p = -p
        for j in range(k):
            q = row[j] // p
            if q:
                for r in A:
                    r[j] -= q * r[k]
        k += 1
    return IntMatrix(A, n)
