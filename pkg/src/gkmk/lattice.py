"""Exact integer linear algebra for character lattices.

Normal forms (Hermite, Smith), primitive parts of weights, completion of a
circle generator to a dual basis, and quotient lattices with torsion.
Everything is arbitrary-precision; matrices are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "NotPrimitive",
    "QuotientLattice",
    "ZeroVector",
    "complete_to_basis",
    "content",
    "dot",
    "hnf",
    "inverse_unimodular",
    "primitive_part",
    "snf",
]

IntVector = tuple


class ZeroVector(ValueError):
    """A nonzero integer vector was required."""


class NotPrimitive(ValueError):
    """A primitive (content one) integer vector was required."""


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError(f"length mismatch {len(u)} != {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive_part(v: Sequence[int]) -> tuple[IntVector, int]:
    """Split ``v = c * v0`` with ``c > 0`` and ``v0`` primitive."""
    c = content(v)
    if c == 0:
        raise ZeroVector(f"zero vector {tuple(v)}")
    return tuple(x // c for x in v), c


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix with explicit shape (so 0 x n matrices exist)."""

    rows: tuple[tuple[int, ...], ...]
    ncols: int = field(default=-1)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        ncols = self.ncols
        if ncols < 0:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, r: int, c: int) -> IntMatrix:
        return cls(tuple((0,) * c for _ in range(r)), c)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return IntMatrix(
            tuple(tuple(dot(r, c) if r else 0 for c in cols) for r in self.rows),
            other.ncols,
        )

    def transpose(self) -> IntMatrix:
        if not self.rows:
            return IntMatrix.zeros(self.ncols, 0)
        return IntMatrix(tuple(zip(*self.rows)), self.nrows)

    def apply_row(self, v: Sequence[int]) -> IntVector:
        """Row vector times matrix."""
        if len(v) != self.nrows:
            raise ValueError("length mismatch")
        return tuple(sum(v[i] * self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for r in range(k + 1, n):
                    if a[r][k]:
                        a[k], a[r] = a[r], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.det()) == 1

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]})"


def _as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(tuple(tuple(r) for r in m))


def hnf(m) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: returns ``(H, U)`` with ``U @ m == H``.

    ``U`` is unimodular; pivots of ``H`` are positive and entries above a
    pivot are reduced into ``[0, pivot)``.
    """
    m = _as_matrix(m)
    r, c = m.shape
    a = [list(row) for row in m.rows]
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    pr = 0
    for col in range(c):
        if pr >= r:
            break
        # gcd-combine the column below the pivot row into the pivot row
        for i in range(pr + 1, r):
            if a[i][col] == 0:
                continue
            x, y = a[pr][col], a[i][col]
            g, s, t = _xgcd(x, y)
            px, py = x // g, y // g
            a[pr], a[i] = (
                [s * p + t * q for p, q in zip(a[pr], a[i])],
                [-py * p + px * q for p, q in zip(a[pr], a[i])],
            )
            u[pr], u[i] = (
                [s * p + t * q for p, q in zip(u[pr], u[i])],
                [-py * p + px * q for p, q in zip(u[pr], u[i])],
            )
        if a[pr][col] == 0:
            continue
        if a[pr][col] < 0:
            a[pr] = [-x for x in a[pr]]
            u[pr] = [-x for x in u[pr]]
        piv = a[pr][col]
        for i in range(pr):
            q = a[i][col] // piv
            if q:
                a[i] = [p - q * s for p, s in zip(a[i], a[pr])]
                u[i] = [p - q * s for p, s in zip(u[i], u[pr])]
        pr += 1
    return IntMatrix(tuple(map(tuple, a)), c), IntMatrix(tuple(map(tuple, u)), r)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``g, s, t`` with ``s*a + t*b == g > 0``; for ``b == 0`` keeps ``t = 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    x, y = a, b
    while y:
        q, rem = divmod(x, y)
        x, y = y, rem
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if x < 0:
        x, s0, t0 = -x, -s0, -t0
    return x, s0, t0


def snf(m) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: ``(D, U, V)`` with ``U @ m @ V == D``.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``.
    """
    D, U, V, _ = _snf_with_inverse(_as_matrix(m))
    return D, U, V


def _snf_with_inverse(m: IntMatrix):
    r, c = m.shape
    a = [list(row) for row in m.rows]
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    v = [[int(i == j) for j in range(c)] for i in range(c)]
    vi = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src ; inverse: row_src -= q row_dst
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]
        vi[src] = [x - q * y for x, y in zip(vi[src], vi[dst])]

    for t in range(min(r, c)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, r) for j in range(t, c) if a[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, r):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, c):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    done = False
            if not done:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < r and t < c and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    D = IntMatrix(tuple(map(tuple, a)), c)
    return (
        D,
        IntMatrix(tuple(map(tuple, u)), r),
        IntMatrix(tuple(map(tuple, v)), c),
        IntMatrix(tuple(map(tuple, vi)), c),
    )


def complete_to_basis(xi: Sequence[int]) -> IntMatrix:
    """Unimodular ``B`` whose first row pairs to 1 with ``xi`` and the rest to 0.

    Rows are weights ``e'_1..e'_n``; the first column of ``B^-1`` is ``xi``.
    """
    xi = tuple(xi)
    if content(xi) != 1:
        raise NotPrimitive(f"{xi} is not primitive")
    col = IntMatrix(tuple((x,) for x in xi), 1)
    H, U = hnf(col)
    assert H[0, 0] == 1
    return U


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix via its Hermite form."""
    n = m.nrows
    H, U = hnf(m)
    # H is unimodular upper triangular with unit pivots; back-substitute
    if any(H[i, i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    hinv = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            f = H[i, j]
            if f:
                hinv[i] = [x - f * y for x, y in zip(hinv[i], hinv[j])]
    return IntMatrix(tuple(map(tuple, hinv)), n) @ U


class QuotientLattice:
    """The group ``Z^N / span(relations)``, possibly with torsion.

    Cosets are represented by canonical ambient vectors: with
    ``U @ R @ V == D`` the coordinates ``w = v @ V`` are reduced modulo the
    invariant factors and mapped back through ``V^-1``.
    """

    def __init__(self, ambient_rank: int, relations: Iterable[Sequence[int]] = ()):
        rels = tuple(tuple(int(x) for x in r) for r in relations)
        if any(len(r) != ambient_rank for r in rels):
            raise ValueError("relation length does not match ambient rank")
        self.ambient_rank = ambient_rank
        self.relations = rels
        R = IntMatrix(rels, ambient_rank)
        D, _, V, Vinv = _snf_with_inverse(R)
        diag = [D[i, i] for i in range(min(D.nrows, D.ncols))]
        self.invariant_factors = tuple(d for d in diag if d)
        self._V = V.rows
        self._Vinv = Vinv.rows
        self._key = _relation_key(rels, ambient_rank)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)

    @property
    def free_rank(self) -> int:
        return self.ambient_rank - len(self.invariant_factors)

    def coordinates(self, v: Sequence[int]) -> IntVector:
        """Isomorphism onto ``(residues mod d_j) + free coordinates``."""
        n = self.ambient_rank
        V = self._V
        w = [sum(v[i] * V[i][j] for i in range(n)) for j in range(n)]
        for j, d in enumerate(self.invariant_factors):
            w[j] %= d
        return tuple(w)

    def canonical_form(self, v: Sequence[int]) -> IntVector:
        n = self.ambient_rank
        if len(v) != n:
            raise ValueError("length mismatch")
        w = self.coordinates(v)
        Vi = self._Vinv
        return tuple(sum(w[i] * Vi[i][j] for i in range(n)) for j in range(n))

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.canonical_form(v))

    def __eq__(self, other) -> bool:
        return isinstance(other, QuotientLattice) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"QuotientLattice({self.ambient_rank}, {list(map(list, self.relations))})"


def _relation_key(rels, n):
    if not rels:
        return (n, ())
    H, _ = hnf(IntMatrix(rels, n))
    return (n, tuple(r for r in H.rows if any(r)))
