"""Exact rational linear algebra.

Everything here works over the rationals with Python integers and
:class:`fractions.Fraction`; nothing is ever rounded.  Elimination is done
fraction-free (Bareiss) on integer rows, and subspaces are kept in a
canonical form (reduced echelon rows scaled to primitive integer vectors) so
that two equal spans compare equal as plain tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Number = int | Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def integer_row(row: Sequence[Number]) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def primitive(vec: Sequence[Number]) -> tuple[int, ...]:
    """Primitive integer vector on the same ray, leading entry made positive.

    The zero vector is returned unchanged.
    """
    ints = integer_row(vec)
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


def bareiss_echelon(rows: Iterable[Sequence[Number]], ncols: int | None = None):
    """Fraction-free row echelon form.

    Returns ``(echelon_rows, pivot_columns)`` where ``echelon_rows`` are the
    nonzero integer rows of an echelon form of the input (same row space).
    """
    m = [integer_row(r) for r in rows]
    if not m:
        return [], []
    n = len(m[0]) if ncols is None else ncols
    nrows = len(m)
    prev = 1
    r = 0
    pivots = []
    for c in range(n):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv_row = m[r]
        pv = piv_row[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f == 0:
                if prev != 1 or pv != 1:
                    # keep the Bareiss invariant: every remaining row is scaled
                    for j in range(c + 1, n):
                        if row[j]:
                            row[j] = (pv * row[j]) // prev
                continue
            for j in range(c + 1, n):
                row[j] = (pv * row[j] - f * piv_row[j]) // prev
            row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m) -> int:
    """Rank over the rationals (fraction-free elimination)."""
    rows = m.rows if isinstance(m, RationalMatrix) else list(m)
    if not rows:
        return 0
    ech, piv = bareiss_echelon(rows)
    return len(piv)


def rref(rows: Iterable[Sequence[Number]], ncols: int | None = None):
    """Reduced row echelon form as Fraction rows, with pivot columns."""
    ech, piv = bareiss_echelon(rows, ncols)
    out = []
    for row, c in zip(ech, piv):
        p = row[c]
        out.append([Fraction(x, p) for x in row])
    for k in range(len(out) - 1, -1, -1):
        c = piv[k]
        for i in range(k):
            f = out[i][c]
            if f:
                ri, rk = out[i], out[k]
                for j in range(c, len(ri)):
                    if rk[j]:
                        ri[j] -= f * rk[j]
    return out, piv


class RationalMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Sequence[Number]], ncols: int | None = None):
        data = tuple(tuple(_frac(x) for x in r) for r in rows)
        self.nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix rows")
        self.ncols = ncols
        self.rows = data
        self._hash = None

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "RationalMatrix":
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def unit(cls, n: int, i: int, j: int, ncols: int | None = None) -> "RationalMatrix":
        ncols = n if ncols is None else ncols
        return cls([[int(r == i and c == j) for c in range(ncols)] for r in range(n)], ncols)

    @classmethod
    def diagonal(cls, entries: Sequence[Number]) -> "RationalMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_flat(cls, flat: Sequence[Number], nrows: int, ncols: int) -> "RationalMatrix":
        return cls([flat[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"RationalMatrix([{body}])"

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c: Number) -> "RationalMatrix":
        c = _frac(c)
        return RationalMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    __rmul__ = scale

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * col[k] for k, a in nz), Fraction(0)) for col in cols])
        return RationalMatrix(out, other.ncols)

    def apply(self, vec: Sequence[Number]) -> tuple[Fraction, ...]:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * _frac(v) for a, v in zip(r, vec) if a and v), Fraction(0)) for r in self.rows)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.rows)) if self.nrows else [], self.nrows)

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self.rows for x in r)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def is_nilpotent(self) -> bool:
        if self.nrows != self.ncols:
            raise ValueError("nilpotency needs a square matrix")
        p = self
        for _ in range(self.nrows):
            if p.is_zero():
                return True
            p = p @ self
        return p.is_zero()

    def bracket(self, other: "RationalMatrix") -> "RationalMatrix":
        return self @ other - other @ self

    def block_diag(self, other: "RationalMatrix") -> "RationalMatrix":
        n1, m1 = self.shape
        n2, m2 = other.shape
        rows = [list(r) + [0] * m2 for r in self.rows]
        rows += [[0] * m1 + list(r) for r in other.rows]
        return RationalMatrix(rows, m1 + m2)

    def kron(self, other: "RationalMatrix") -> "RationalMatrix":
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([a * b for a in r for b in s])
        return RationalMatrix(rows, self.ncols * other.ncols)

    def inverse(self) -> "RationalMatrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse needs a square matrix")
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("singular matrix")
        return RationalMatrix([r[n:] for r in red[:n]], n)

    def to_json(self) -> list[list[list[int]]]:
        """Entries as ``[numerator, denominator]`` pairs."""
        return [[[x.numerator, x.denominator] for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        return cls([[Fraction(n, d) for n, d in r] for r in data])

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


def commutator(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    return a @ b - b @ a


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n held by a canonical basis.

    The basis is the reduced echelon basis, each vector scaled to a primitive
    integer vector with positive leading entry, so spans compare with ``==``.
    """

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Number]], ambient_dim: int) -> "Subspace":
        vecs = [v for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        if not vecs:
            return cls(ambient_dim, ())
        red, _ = rref(vecs, ambient_dim)
        return cls(ambient_dim, tuple(primitive(r) for r in red))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(
            ambient_dim,
            tuple(tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim)),
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def contains(self, vec: Sequence[Number]) -> bool:
        if not any(vec):
            return True
        return rank(list(self.basis) + [list(vec)]) == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return rank(list(self.basis) + list(other.basis)) == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )


def _back_substitute(ech, piv, ncols) -> list[tuple[int, ...]]:
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for k in range(len(piv) - 1, -1, -1):
            c = piv[k]
            row = ech[k]
            s = sum((row[j] * x[j] for j in range(c + 1, ncols) if row[j] and x[j]), Fraction(0))
            x[c] = -s / row[c]
        basis.append(primitive(x))
    return basis


def kernel_vectors(rows: Sequence[Sequence[Number]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of {x : M x = 0}, one primitive vector per free column."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    ech, piv = bareiss_echelon(rows, ncols)
    return _back_substitute(ech, piv, ncols)


def kernel_basis(m) -> Subspace:
    """Null space {x : m x = 0} as a canonical subspace."""
    if isinstance(m, RationalMatrix):
        rows, ncols = m.rows, m.ncols
    else:
        rows = [list(r) for r in m]
        ncols = len(rows[0]) if rows else 0
    return Subspace.span(kernel_vectors(rows, ncols), ncols)


def span_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    a._check(b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    # columns: basis of a, then minus basis of b
    cols = list(a.basis) + [tuple(-x for x in v) for v in b.basis]
    rows = [[c[i] for c in cols] for i in range(n)]
    ker = kernel_vectors(rows, len(cols))
    vecs = []
    for k in ker:
        v = [0] * n
        for coef, basis_vec in zip(k[: a.dim], a.basis):
            if coef:
                for i, x in enumerate(basis_vec):
                    v[i] += coef * x
        vecs.append(v)
    return Subspace.span(vecs, n)


def solve_combination(vectors: Sequence[Sequence[Number]], target: Sequence[Number]):
    """Coefficients c with sum c_i v_i == target, or None if target is not in the span.

    The vectors are assumed independent when a unique answer matters.
    """
    n = len(target)
    k = len(vectors)
    rows = [[vectors[j][i] for j in range(k)] + [-_frac(target[i])] for i in range(n)]
    ker = kernel_vectors(rows, k + 1)
    for v in ker:
        if v[-1] != 0:
            return tuple(Fraction(x, v[-1]) for x in v[:-1])
    if not any(target):
        return tuple(Fraction(0) for _ in range(k))
    return None
