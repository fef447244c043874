"""Classical root systems, Weyl chamber faces and Levi data.

Weights are integer tuples in the fundamental-weight basis.  A root system
is a product of classical factors A_n, B_n, C_n, D_n; rank-one torus factors
(type ``T``) may be adjoined to carry central characters, they have no roots
and every integer is dominant there.

Each classical factor is realized inside a Euclidean space with the usual
epsilon coordinates, which gives exact inner products and coroot pairings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Sequence

from .exactq import RationalMatrix, Subspace

Weight = tuple[int, ...]

CLASSICAL = ("A", "B", "C", "D")
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "T": 1}


class RootSystemError(ValueError):
    pass


def _eps(n: int, i: int, c: int = 1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def _vadd(a, b):
    return [x + y for x, y in zip(a, b)]


def _vsub(a, b):
    return [x - y for x, y in zip(a, b)]


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class Factor:
    """One simple (or torus) factor, realized in epsilon coordinates."""

    type: str
    rank: int

    @cached_property
    def eps_dim(self) -> int:
        return self.rank + 1 if self.type == "A" else self.rank

    @cached_property
    def simple_roots_eps(self) -> list[list[Fraction]]:
        t, n, d = self.type, self.rank, self.eps_dim
        if t == "T":
            return []
        roots = [_vsub(_eps(d, i), _eps(d, i + 1)) for i in range(n - 1)]
        if t == "A":
            roots.append(_vsub(_eps(d, n - 1), _eps(d, n)))
        elif t == "B":
            roots.append(_eps(d, n - 1))
        elif t == "C":
            roots.append(_eps(d, n - 1, 2))
        elif t == "D":
            roots.append(_vadd(_eps(d, n - 2), _eps(d, n - 1)))
        return roots

    @cached_property
    def positive_roots_eps(self) -> list[list[Fraction]]:
        t, n, d = self.type, self.rank, self.eps_dim
        out = []
        if t == "T":
            return out
        if t == "A":
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    out.append(_vsub(_eps(d, i), _eps(d, j)))
            return out
        for i in range(n):
            for j in range(i + 1, n):
                out.append(_vsub(_eps(d, i), _eps(d, j)))
                out.append(_vadd(_eps(d, i), _eps(d, j)))
        if t == "B":
            out += [_eps(d, i) for i in range(n)]
        elif t == "C":
            out += [_eps(d, i, 2) for i in range(n)]
        return out

    def coroot_pairing_eps(self, vec, root) -> Fraction:
        return 2 * _dot(vec, root) / _dot(root, root)

    def eps_to_fund(self, vec) -> Weight:
        """Fundamental coordinates <vec, alpha_j^vee> of an epsilon vector."""
        if self.type == "T":
            return tuple(int(x) for x in vec)
        out = []
        for a in self.simple_roots_eps:
            p = self.coroot_pairing_eps(vec, a)
            if p.denominator != 1:
                raise RootSystemError(f"{vec} is not in the weight lattice")
            out.append(int(p))
        return tuple(out)

    @cached_property
    def cartan(self) -> list[list[int]]:
        sr = self.simple_roots_eps
        return [[int(self.coroot_pairing_eps(a, b)) for b in sr] for a in sr]

    def label(self) -> str:
        return f"{self.type}{self.rank}"


def parse_spec(spec: str | Sequence) -> list[tuple[str, int]]:
    """Parse ``"A2xB3"`` (or a list of pairs) into ``[("A", 2), ("B", 3)]``."""
    if not isinstance(spec, str):
        return [(str(t).upper(), int(r)) for t, r in spec]
    parts = [p for p in spec.strip().split("x") if p]
    if not parts:
        raise RootSystemError(f"empty root system spec {spec!r}")
    out = []
    for p in parts:
        m = re.fullmatch(r"([ABCDT])(\d+)", p.strip())
        if not m:
            raise RootSystemError(f"bad root system factor {p!r} in {spec!r}")
        out.append((m.group(1), int(m.group(2))))
    return out


class RootSystem:
    """A finite product of classical root systems (plus optional torus factors)."""

    def __init__(self, factors: Sequence[tuple[str, int]]):
        if not factors:
            raise RootSystemError("a root system needs at least one factor")
        fs = []
        for t, r in factors:
            t = str(t).upper()
            if t not in _MIN_RANK:
                raise RootSystemError(f"unsupported type {t!r}")
            if r < _MIN_RANK[t]:
                raise RootSystemError(f"{t}{r}: rank below the classical minimum {_MIN_RANK[t]}")
            if t == "T" and r != 1:
                raise RootSystemError("torus factors have rank 1")
            fs.append(Factor(t, int(r)))
        self.factors: tuple[Factor, ...] = tuple(fs)
        offs, eoffs = [], []
        o = e = 0
        for f in fs:
            offs.append(o)
            eoffs.append(e)
            o += f.rank
            e += f.eps_dim
        self.offsets = tuple(offs)
        self.eps_offsets = tuple(eoffs)
        self.rank = o
        self.eps_dim = e
        n = self.rank
        cm = [[0] * n for _ in range(n)]
        self.torus_coords: tuple[int, ...] = tuple(
            off for f, off in zip(fs, offs) if f.type == "T"
        )
        for f, off in zip(fs, offs):
            if f.type == "T":
                continue
            for i, row in enumerate(f.cartan):
                for j, x in enumerate(row):
                    cm[off + i][off + j] = x
        # torus coordinates carry no Cartan data; keep a zero row/column
        self.cartan_matrix: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in cm)
        self.simple_indices: tuple[int, ...] = tuple(
            i for i in range(n) if i not in self.torus_coords
        )

    # -- basic data ---------------------------------------------------------

    @property
    def spec(self) -> str:
        return "x".join(f.label() for f in self.factors)

    def __repr__(self):
        return f"RootSystem({self.spec!r})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_indices)

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        """Simple roots in fundamental coordinates, indexed by simple_indices."""
        return tuple(self.cartan_matrix[i] for i in self.simple_indices)

    def simple_root(self, i: int) -> Weight:
        return self.cartan_matrix[i]

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        out = []
        for f, off in zip(self.factors, self.offsets):
            for r in f.positive_roots_eps:
                local = f.eps_to_fund(r)
                w = [0] * self.rank
                w[off:off + f.rank] = local
                out.append(tuple(w))
        return tuple(out)

    @cached_property
    def roots(self) -> tuple[Weight, ...]:
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)

    @cached_property
    def rho(self) -> Weight:
        return tuple(0 if i in self.torus_coords else 1 for i in range(self.rank))

    def zero(self) -> Weight:
        return (0,) * self.rank

    # -- change of basis ------------------------------------------------------

    @cached_property
    def _inv_cartan_blocks(self):
        blocks = []
        for f, off in zip(self.factors, self.offsets):
            if f.type == "T":
                blocks.append(None)
            else:
                blocks.append(RationalMatrix(f.cartan).inverse())
        return blocks

    def root_coords(self, w: Sequence[int]) -> tuple[Fraction, ...]:
        """Coordinates of a weight in the simple-root basis.

        Torus coordinates are passed through unchanged.  Equivalently, entry i
        is the pairing with the fundamental coweight dual to alpha_i.
        """
        out = [Fraction(0)] * self.rank
        for f, off, inv in zip(self.factors, self.offsets, self._inv_cartan_blocks):
            loc = w[off:off + f.rank]
            if inv is None:
                out[off] = Fraction(loc[0])
                continue
            # w = sum_i c_i alpha_i and alpha_i = sum_j A_ij varpi_j  =>  c = w A^{-1}
            for j in range(f.rank):
                out[off + j] = sum(
                    (Fraction(loc[i]) * inv.rows[i][j] for i in range(f.rank) if loc[i]),
                    Fraction(0),
                )
        return tuple(out)

    def from_root_coords(self, c: Sequence) -> Weight:
        out = [Fraction(0)] * self.rank
        for i, ci in enumerate(c):
            if not ci:
                continue
            if i in self.torus_coords:
                out[i] += Fraction(ci)
            else:
                for j, a in enumerate(self.cartan_matrix[i]):
                    out[j] += Fraction(ci) * a
        if any(x.denominator != 1 for x in out):
            raise RootSystemError("root combination is not integral in the weight basis")
        return tuple(int(x) for x in out)

    @cached_property
    def _fund_eps(self) -> list[list[Fraction]]:
        """Fundamental weights as vectors in the ambient epsilon space."""
        out = []
        for f, off, eoff, inv in zip(
            self.factors, self.offsets, self.eps_offsets, self._inv_cartan_blocks
        ):
            if f.type == "T":
                v = [Fraction(0)] * self.eps_dim
                v[eoff] = Fraction(1)
                out.append(v)
                continue
            sr = f.simple_roots_eps
            for i in range(f.rank):
                # varpi_i = sum_j (A^{-1})_{ij} alpha_j
                v = [Fraction(0)] * self.eps_dim
                for j in range(f.rank):
                    c = inv.rows[i][j]
                    if c:
                        for k, x in enumerate(sr[j]):
                            v[eoff + k] += c * x
                out.append(v)
        return out

    def to_eps(self, w: Sequence[int]) -> list[Fraction]:
        v = [Fraction(0)] * self.eps_dim
        for c, f in zip(w, self._fund_eps):
            if c:
                for k, x in enumerate(f):
                    if x:
                        v[k] += c * x
        return v

    def from_eps(self, v: Sequence) -> Weight:
        out = []
        for f, eoff in zip(self.factors, self.eps_offsets):
            out.extend(f.eps_to_fund(v[eoff:eoff + f.eps_dim]))
        return tuple(out)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Inner products (varpi_i, varpi_j) from the epsilon realization."""
        fe = self._fund_eps
        return tuple(tuple(_dot(a, b) for b in fe) for a in fe)

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        g = self.gram
        s = Fraction(0)
        for i, x in enumerate(a):
            if x:
                gi = g[i]
                for j, y in enumerate(b):
                    if y:
                        s += x * y * gi[j]
        return s

    @cached_property
    def _coroot_coords(self) -> dict:
        """Each root's coroot as an integer vector: <w, alpha^vee> = sum_i w_i k_i."""
        out = {}
        for a in self.roots:
            aa = self.inner(a, a)
            k = []
            for i in range(self.rank):
                e = [0] * self.rank
                e[i] = 1
                k.append(int(2 * self.inner(e, a) / aa))
            out[a] = tuple(k)
        return out

    def coroot_pairing(self, w: Sequence[int], root: Sequence[int]) -> Fraction:
        k = self._coroot_coords.get(tuple(root))
        if k is not None:
            return Fraction(sum(x * y for x, y in zip(w, k) if x and y))
        return 2 * self.inner(w, root) / self.inner(root, root)

    # -- Weyl group -----------------------------------------------------------

    def is_dominant(self, w: Sequence[int]) -> bool:
        return all(w[i] >= 0 for i in self.simple_indices)

    def reflect(self, w: Sequence[int], i: int) -> Weight:
        """Simple reflection s_i in fundamental coordinates."""
        c = w[i]
        if c == 0:
            return tuple(w)
        a = self.cartan_matrix[i]
        return tuple(x - c * y for x, y in zip(w, a))

    def to_dominant(self, w: Sequence[int]) -> tuple[Weight, int]:
        """Dominant representative of the Weyl orbit and the parity of the word used."""
        w = list(w)
        sign = 1
        cm = self.cartan_matrix
        idx = self.simple_indices
        while True:
            for i in idx:
                c = w[i]
                if c < 0:
                    a = cm[i]
                    for k in range(len(w)):
                        if a[k]:
                            w[k] -= c * a[k]
                    sign = -sign
                    break
            else:
                return tuple(w), sign

    def orbit(self, w: Sequence[int]) -> list[Weight]:
        """Weyl orbit of w, sorted."""
        w = tuple(w)
        parts = []
        for f, off in zip(self.factors, self.offsets):
            loc = w[off:off + f.rank]
            if f.type == "T":
                parts.append([loc])
            elif f.type == "A":
                parts.append(_type_a_orbit(loc))
            else:
                parts.append(_bfs_orbit(RootSystem([(f.type, f.rank)]), loc))
        out = [()]
        for p in parts:
            out = [a + b for a in out for b in p]
        return sorted(out)

    def dual(self, w: Sequence[int]) -> Weight:
        """Highest weight of the dual module: dominant representative of -w."""
        return self.to_dominant(tuple(-x for x in w))[0]

    def is_root_lattice_below(self, lam: Sequence[int], mu: Sequence[int]) -> bool:
        """True when lam - mu is a nonnegative integer combination of simple roots."""
        diff = tuple(a - b for a, b in zip(lam, mu))
        c = self.root_coords(diff)
        for i in range(self.rank):
            if i in self.torus_coords:
                if c[i] != 0:
                    return False
            elif c[i].denominator != 1 or c[i] < 0:
                return False
        return True

    # -- faces ------------------------------------------------------------------

    def face(self, support) -> "Face":
        sup = frozenset(int(i) for i in support)
        if not sup <= set(self.simple_indices):
            raise RootSystemError(f"face support {sorted(sup)} not among simple indices")
        return Face(sup)

    def full_face(self) -> "Face":
        return Face(frozenset(self.simple_indices))

    def zero_face(self) -> "Face":
        return Face(frozenset())


def _distinct_permutations(items: list):
    items = sorted(items)
    n = len(items)
    yield tuple(items)
    # next lexicographic permutation, which skips repeats automatically
    while True:
        i = n - 2
        while i >= 0 and items[i] >= items[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while items[j] <= items[i]:
            j -= 1
        items[i], items[j] = items[j], items[i]
        items[i + 1:] = reversed(items[i + 1:])
        yield tuple(items)


def _type_a_orbit(a: Sequence[int]) -> list[Weight]:
    # permute the epsilon vector (partial sums from the right), then take differences
    n = len(a)
    e = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        e[i] = e[i + 1] + a[i]
    return [tuple(p[i] - p[i + 1] for i in range(n)) for p in _distinct_permutations(e)]


def _bfs_orbit(rs: "RootSystem", w: Weight) -> list[Weight]:
    seen = {w}
    stack = [w]
    while stack:
        x = stack.pop()
        for i in rs.simple_indices:
            if x[i] != 0:
                y = rs.reflect(x, i)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return list(seen)


@dataclass(frozen=True)
class Face:
    """Face of the dominant chamber spanned by the fundamental weights in ``support``.

    Torus coordinates (central characters) lie in every face, since the
    dominant cone contains them as a linear subspace.
    """

    support: frozenset

    def sorted_support(self) -> tuple[int, ...]:
        return tuple(sorted(self.support))

    def contains_weight(self, rs: RootSystem, w: Sequence[int]) -> bool:
        return all(w[i] == 0 for i in rs.simple_indices if i not in self.support)

    def dim(self, rs: RootSystem) -> int:
        return len(self.support) + len(rs.torus_coords)

    def subspace(self, rs: RootSystem) -> Subspace:
        idx = sorted(self.support | set(rs.torus_coords))
        return Subspace.span(
            [tuple(int(i == j) for j in range(rs.rank)) for i in idx], rs.rank
        )

    def __le__(self, other):
        return self.support <= other.support

    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.sorted_support()) + "}"


@dataclass(frozen=True)
class LeviData:
    face: Face
    levi_simple_roots: tuple[int, ...]
    levi_positive_roots: tuple[Weight, ...]
    pu_positive_roots: tuple[Weight, ...]
    semisimple_rank_of_D: int


def build_root_system(spec) -> RootSystem:
    return RootSystem(parse_spec(spec))


def dominant_weights_up_to(rs: RootSystem, bound: int) -> list[Weight]:
    """All weights with every coordinate in [0, bound], lexicographic order."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    return [tuple(w) for w in product(range(bound + 1), repeat=rs.rank)]


def levi_data(rs: RootSystem, f: Face) -> LeviData:
    levi_simple = tuple(i for i in rs.simple_indices if i not in f.support)
    levi, pu = [], []
    for r in rs.positive_roots:
        c = rs.root_coords(r)
        if all(c[i] == 0 for i in f.support):
            levi.append(r)
        else:
            pu.append(r)
    return LeviData(f, levi_simple, tuple(levi), tuple(pu), len(levi_simple))


def enumerate_faces(rs: RootSystem) -> list[tuple[Face, LeviData]]:
    """All 2^(semisimple rank) faces with their Levi data, smallest support first."""
    idx = rs.simple_indices
    out = []
    for mask in range(1 << len(idx)):
        sup = frozenset(idx[k] for k in range(len(idx)) if mask >> k & 1)
        out.append(Face(sup))
    out.sort(key=lambda f: (len(f.support), f.sorted_support()))
    return [(f, levi_data(rs, f)) for f in out]


def parse_face(rs: RootSystem, text: str) -> Face:
    """Face from the command-line grammar: 1-based indices, "" for {0}, "full"."""
    text = text.strip()
    if text.lower() == "full":
        return rs.full_face()
    if not text:
        return rs.zero_face()
    try:
        idx = [int(t) - 1 for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise RootSystemError(f"bad face spec {text!r}") from exc
    for i in idx:
        if i not in rs.simple_indices:
            raise RootSystemError(f"face index {i + 1} out of range for {rs.spec}")
    return rs.face(idx)
