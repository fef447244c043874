"""Catalog of embeddings G in Ghat with explicit matrix realizations.

Every embedding carries

* the root systems of G and Ghat and the integer weight map Xi(That) -> Xi(T);
* a basis of Lie(G) and of Lie(Ghat) as rational matrices acting on one
  faithful Ghat-module (the *ambient* module), split into Cartan generators
  (one per torus coordinate) and root vectors labelled by their roots;
* the T-weights of the ambient basis vectors.

Names: ``diag:<rs>`` (G diagonal in G x G), ``sym2:<n>`` (SL(n) in SL(S^2 k^n)),
``wedge2:<n>`` (SL(n) in SL(Lambda^2 k^n)), ``tensor:<p>x<q>``
(GL(p) x GL(q) in GL(k^p (x) k^q), tracked on the lattice with a central
degree coordinate).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from .exactq import RationalMatrix, Subspace, kernel_vectors, rank
from .rootsys import Face, Factor, RootSystem, Weight, levi_data

CATALOG_FAMILIES = ("diag:<spec>", "sym2:<n>", "wedge2:<n>", "tensor:<p>x<q>")


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class WeightMap:
    """Integer matrix sending Ghat weight coordinates to G weight coordinates."""

    matrix: tuple[tuple[int, ...], ...]
    source: RootSystem
    target: RootSystem

    def __post_init__(self):
        if len(self.matrix) != self.target.rank:
            raise EmbeddingError("weight map row count must equal rank of G")
        if any(len(r) != self.source.rank for r in self.matrix):
            raise EmbeddingError("weight map column count must equal rank of Ghat")

    def __call__(self, w: Sequence[int]) -> Weight:
        return tuple(sum(a * b for a, b in zip(row, w)) for row in self.matrix)

    def is_surjective(self) -> bool:
        return rank(self.matrix) == self.target.rank

    @classmethod
    def identity(cls, rs: RootSystem) -> "WeightMap":
        n = rs.rank
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), rs, rs)


# -- defining representations of classical factors -------------------------------


def _factor_defining(f: Factor):
    """Weights (epsilon coordinates) of the defining module and its invariant form."""
    n, d = f.rank, f.eps_dim

    def eps(i, c=1):
        v = [Fraction(0)] * d
        v[i] = Fraction(c)
        return v

    zero = [Fraction(0)] * d
    if f.type == "A":
        return [eps(i) for i in range(n + 1)], None
    if f.type == "B":
        w = [eps(i) for i in range(n)] + [zero] + [eps(i, -1) for i in reversed(range(n))]
        N = 2 * n + 1
        J = [[int(j == N - 1 - i) for j in range(N)] for i in range(N)]
        return w, J
    w = [eps(i) for i in range(n)] + [eps(i, -1) for i in reversed(range(n))]
    N = 2 * n
    if f.type == "D":
        J = [[int(j == N - 1 - i) for j in range(N)] for i in range(N)]
    else:
        J = [[(1 if i < n else -1) * int(j == N - 1 - i) for j in range(N)] for i in range(N)]
    return w, J


@lru_cache(maxsize=None)
def classical_defining(f: Factor):
    """Defining matrices of one classical factor.

    Returns ``(weights, root_vectors)``: fundamental-coordinate weights of the
    basis vectors, and a dict root -> matrix with one root vector per root.
    Cartan generators are the diagonal matrices of the weight coordinates.
    """
    weps, J = _factor_defining(f)
    N = len(weps)
    weights = [f.eps_to_fund(w) for w in weps]
    roots = {}
    pos = [f.eps_to_fund(r) for r in f.positive_roots_eps]
    for alpha in pos + [tuple(-x for x in a) for a in pos]:
        cells = [
            (r, c)
            for r in range(N)
            for c in range(N)
            if r != c and tuple(x - y for x, y in zip(weights[r], weights[c])) == alpha
        ]
        if J is None:
            if len(cells) != 1:
                raise AssertionError("type A root space should be one matrix unit")
            (r, c), = cells
            roots[alpha] = RationalMatrix.unit(N, r, c)
            continue
        # X^T J + J X = 0 restricted to the admissible cells
        eqs = []
        for i in range(N):
            for j in range(N):
                row = []
                for r, c in cells:
                    # (X^T J)_{ij} = sum_k X_{ki} J_{kj};  (J X)_{ij} = sum_k J_{ik} X_{kj}
                    v = 0
                    if c == i:
                        v += J[r][j]
                    if c == j:
                        v += J[i][r]
                    row.append(v)
                eqs.append(row)
        ker = kernel_vectors(eqs, len(cells))
        if len(ker) != 1:
            raise AssertionError(f"root space for {alpha} in {f.label()} has dim {len(ker)}")
        m = [[0] * N for _ in range(N)]
        for (r, c), x in zip(cells, ker[0]):
            m[r][c] = x
        roots[alpha] = RationalMatrix(m, N)
    return weights, roots


def _cartan_from_weights(weights: Sequence[Weight], rank_: int) -> list[RationalMatrix]:
    return [RationalMatrix.diagonal([w[i] for w in weights]) for i in range(rank_)]


# -- induced actions ------------------------------------------------------------


def sym2_basis(n: int) -> list[tuple[int, int]]:
    return list(combinations_with_replacement(range(n), 2))


def wedge2_basis(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def sym2_matrix(X: RationalMatrix) -> RationalMatrix:
    """Action of X (derivation) on S^2 in the monomial basis e_a e_b, a <= b."""
    n = X.nrows
    basis = sym2_basis(n)
    index = {b: i for i, b in enumerate(basis)}
    M = [[Fraction(0)] * len(basis) for _ in basis]
    for col, (a, b) in enumerate(basis):
        for c in range(n):
            x = X.rows[c][a]
            if x:
                M[index[tuple(sorted((c, b)))]][col] += x
            y = X.rows[c][b]
            if y:
                M[index[tuple(sorted((a, c)))]][col] += y
    return RationalMatrix(M, len(basis))


def wedge2_matrix(X: RationalMatrix) -> RationalMatrix:
    """Action of X (derivation) on Lambda^2 in the basis e_a ^ e_b, a < b."""
    n = X.nrows
    basis = wedge2_basis(n)
    index = {b: i for i, b in enumerate(basis)}
    M = [[Fraction(0)] * len(basis) for _ in basis]

    def add(i, j, coef, col):
        if i == j:
            return
        if i < j:
            M[index[(i, j)]][col] += coef
        else:
            M[index[(j, i)]][col] -= coef

    for col, (a, b) in enumerate(basis):
        for c in range(n):
            x = X.rows[c][a]
            if x:
                add(c, b, x, col)
            y = X.rows[c][b]
            if y:
                add(a, c, y, col)
    return RationalMatrix(M, len(basis))


# -- the embedding record ------------------------------------------------------------


@dataclass
class Embedding:
    name: str
    g_rs: RootSystem
    ghat_rs: RootSystem
    wm: WeightMap
    ambient_dim: int
    ambient_weights: tuple[Weight, ...]
    ambient_hat_weights: tuple[Weight, ...]
    g_cartan: tuple[RationalMatrix, ...]
    g_roots: dict
    ghat_cartan: tuple[RationalMatrix, ...]
    ghat_roots: dict
    special_linear: bool
    family: str
    n: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def lie_g_basis(self) -> list[RationalMatrix]:
        return list(self.g_cartan) + [self.g_roots[a] for a in self.g_root_order]

    @cached_property
    def g_root_order(self) -> tuple[Weight, ...]:
        return tuple(self.g_rs.positive_roots) + tuple(
            tuple(-x for x in a) for a in self.g_rs.positive_roots
        )

    @property
    def lie_ghat_basis(self) -> list[RationalMatrix]:
        return list(self.ghat_cartan) + [self.ghat_roots[b] for b in sorted(self.ghat_roots)]

    @property
    def derived_g_basis(self) -> list[RationalMatrix]:
        """Lie algebra of the derived group [G, G]."""
        return [self.g_cartan[i] for i in self.g_rs.simple_indices] + [
            self.g_roots[a] for a in self.g_root_order
        ]

    def ghat_root_t_weight(self, beta: Weight) -> Weight:
        return self.wm(beta)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "g": self.g_rs.spec,
            "ghat": self.ghat_rs.spec,
            "ambient_dim": self.ambient_dim,
            "wm": [list(r) for r in self.wm.matrix],
            "ambient_weights": [list(w) for w in self.ambient_weights],
            "g_cartan": [m.to_json() for m in self.g_cartan],
            "g_roots": [
                {"root": list(a), "matrix": self.g_roots[a].to_json()} for a in self.g_root_order
            ],
        }


def catalog() -> list[str]:
    """Name templates of the catalog families."""
    return list(CATALOG_FAMILIES)


def desk_scale_catalog() -> list[str]:
    return ["diag:A1", "diag:A2", "sym2:2", "sym2:3", "wedge2:4", "tensor:2x2"]


def _sl_ghat(N: int, with_center: bool):
    """Root system, ambient weights and Lie algebra of SL(N) (or GL(N)) on k^N."""
    spec = [("A", N - 1)] + ([("T", 1)] if with_center else [])
    rs = RootSystem(spec)
    f = rs.factors[0]
    ws, roots = classical_defining(f)
    if with_center:
        ws = [w + (1,) for w in ws]
        roots = {a + (0,): m for a, m in roots.items()}
    return rs, tuple(ws), roots


def _weight_map_from_ambient(ghat_rs: RootSystem, t_weights: Sequence[Weight], g_rs: RootSystem,
                             with_center: bool) -> WeightMap:
    """Restriction for Ghat = SL(N) (or GL(N) with a degree coordinate) on k^N."""
    N = len(t_weights)
    r = g_rs.rank
    total = [sum(w[i] for w in t_weights) for i in range(r)]
    cols = []
    acc = [0] * r
    for j in range(N - 1):
        acc = [a + b for a, b in zip(acc, t_weights[j])]
        # SL fundamental weight = eps_1 + ... + eps_j - (j/N) * (eps_1 + ... + eps_N)
        col = [Fraction(a) - Fraction((j + 1) * t, N) for a, t in zip(acc, total)]
        cols.append(col)
    if with_center:
        cols.append([Fraction(t, N) for t in total])
    for col in cols:
        if any(x.denominator != 1 for x in col):
            raise EmbeddingError("weight map is not integral")
    mat = tuple(tuple(int(cols[j][i]) for j in range(len(cols))) for i in range(r))
    return WeightMap(mat, ghat_rs, g_rs)


def _sl_defining_matrices(n: int):
    f = Factor("A", n - 1)
    return classical_defining(f)


def _build_diag(spec: str) -> Embedding:
    g = RootSystem([(f.type, f.rank) for f in RootSystem_from(spec).factors])
    if g.torus_coords:
        raise EmbeddingError("diag embeddings need a semisimple root system")
    ghat = RootSystem([(f.type, f.rank) for f in g.factors] * 2)
    # defining module of G: direct sum of defining modules of the factors
    blocks = []
    for f, off in zip(g.factors, g.offsets):
        ws, roots = classical_defining(f)
        blocks.append((f, off, ws, roots))
    dimV = sum(len(b[2]) for b in blocks)
    r = g.rank
    V_weights = []
    g_roots = {}
    pos = 0
    for f, off, ws, roots in blocks:
        for w in ws:
            full = [0] * r
            full[off:off + f.rank] = w
            V_weights.append(tuple(full))
        for a, m in roots.items():
            full = [0] * r
            full[off:off + f.rank] = a
            big = [[0] * dimV for _ in range(dimV)]
            for i, row in enumerate(m.rows):
                for j, x in enumerate(row):
                    big[pos + i][pos + j] = x
            g_roots[tuple(full)] = RationalMatrix(big, dimV)
        pos += len(ws)
    N = 2 * dimV
    ambient_weights = tuple(V_weights) * 2
    ambient_hat = tuple(w + (0,) * r for w in V_weights) + tuple((0,) * r + w for w in V_weights)
    zero = RationalMatrix.zeros(dimV)
    G_roots = {a: m.block_diag(m) for a, m in g_roots.items()}
    H_roots = {}
    for a, m in g_roots.items():
        H_roots[a + (0,) * r] = m.block_diag(zero)
        H_roots[(0,) * r + a] = zero.block_diag(m)
    wm = WeightMap(tuple(tuple(int(i == j) for j in range(r)) * 2 for i in range(r)), ghat, g)
    return Embedding(
        name=f"diag:{g.spec}",
        g_rs=g,
        ghat_rs=ghat,
        wm=wm,
        ambient_dim=N,
        ambient_weights=ambient_weights,
        ambient_hat_weights=ambient_hat,
        g_cartan=tuple(_cartan_from_weights(ambient_weights, r)),
        g_roots=G_roots,
        ghat_cartan=tuple(_cartan_from_weights(ambient_hat, 2 * r)),
        ghat_roots=H_roots,
        special_linear=False,
        family="diag",
    )


def RootSystem_from(spec: str) -> RootSystem:
    from .rootsys import build_root_system

    return build_root_system(spec)


def _build_power(kind: str, n: int) -> Embedding:
    if kind == "sym2":
        if n < 2:
            raise EmbeddingError("sym2:<n> needs n >= 2")
        basis = sym2_basis(n)
        induce = sym2_matrix
    else:
        if n <= 3:
            raise EmbeddingError(
                "wedge2:<n> needs n >= 4 (n = 2: Ghat trivial; n = 3: Lambda^2 V = V*, G = Ghat)"
            )
        basis = wedge2_basis(n)
        induce = wedge2_matrix
    Vw, Vroots = _sl_defining_matrices(n)
    g = RootSystem([("A", n - 1)])
    t_weights = tuple(tuple(x + y for x, y in zip(Vw[a], Vw[b])) for a, b in basis)
    N = len(basis)
    ghat, hat_w, hat_roots = _sl_ghat(N, with_center=False)
    g_roots = {a: induce(m) for a, m in Vroots.items()}
    wm = _weight_map_from_ambient(ghat, t_weights, g, with_center=False)
    return Embedding(
        name=f"{kind}:{n}",
        g_rs=g,
        ghat_rs=ghat,
        wm=wm,
        ambient_dim=N,
        ambient_weights=t_weights,
        ambient_hat_weights=hat_w,
        g_cartan=tuple(_cartan_from_weights(t_weights, g.rank)),
        g_roots=g_roots,
        ghat_cartan=tuple(_cartan_from_weights(hat_w, ghat.rank)),
        ghat_roots=hat_roots,
        special_linear=True,
        family=kind,
        n=n,
    )


def _build_tensor(p: int, q: int) -> Embedding:
    if p < 2 or q < 2:
        raise EmbeddingError("tensor:<p>x<q> needs p, q >= 2")
    Ew, Eroots = _sl_defining_matrices(p)
    Fw, Froots = _sl_defining_matrices(q)
    g = RootSystem([("A", p - 1), ("A", q - 1), ("T", 1)])
    t_weights = tuple(a + b + (1,) for a in Ew for b in Fw)
    N = p * q
    ghat, hat_w, hat_roots = _sl_ghat(N, with_center=True)
    Ip, Iq = RationalMatrix.identity(p), RationalMatrix.identity(q)
    g_roots = {}
    for a, m in Eroots.items():
        g_roots[a + (0,) * (q - 1) + (0,)] = m.kron(Iq)
    for b, m in Froots.items():
        g_roots[(0,) * (p - 1) + b + (0,)] = Ip.kron(m)
    wm = _weight_map_from_ambient(ghat, t_weights, g, with_center=True)
    return Embedding(
        name=f"tensor:{p}x{q}",
        g_rs=g,
        ghat_rs=ghat,
        wm=wm,
        ambient_dim=N,
        ambient_weights=t_weights,
        ambient_hat_weights=hat_w,
        g_cartan=tuple(_cartan_from_weights(t_weights, g.rank)),
        g_roots=g_roots,
        ghat_cartan=tuple(_cartan_from_weights(hat_w, ghat.rank)),
        ghat_roots=hat_roots,
        special_linear=False,
        family="tensor",
        n=N,
    )


@lru_cache(maxsize=None)
def build_embedding(name: str) -> Embedding:
    name = name.strip()
    m = re.fullmatch(r"(diag|sym2|wedge2|tensor):(.+)", name)
    if not m:
        raise EmbeddingError(f"unknown embedding {name!r}; families: {', '.join(CATALOG_FAMILIES)}")
    kind, arg = m.groups()
    if kind == "diag":
        return _build_diag(arg)
    if kind == "tensor":
        mm = re.fullmatch(r"(\d+)x(\d+)", arg)
        if not mm:
            raise EmbeddingError(f"bad tensor spec {arg!r}")
        return _build_tensor(int(mm.group(1)), int(mm.group(2)))
    if not arg.isdigit():
        raise EmbeddingError(f"bad dimension {arg!r}")
    return _build_power(kind, int(arg))


# -- parabolic data ---------------------------------------------------------------


def pair(rs: RootSystem, w: Sequence[int], cochar: Sequence) -> Fraction:
    """<w, lambda> for a cocharacter given in fundamental-coweight coordinates."""
    c = rs.root_coords(w)
    return sum((x * y for x, y in zip(c, cochar) if x and y), Fraction(0))


def rho_check_pairing(rs: RootSystem, w: Sequence[int]) -> Fraction:
    c = rs.root_coords(w)
    return sum((c[i] for i in rs.simple_indices), Fraction(0))


def _s_nontrivial(e: Embedding, support: set, beta_t: Weight) -> bool:
    c = e.g_rs.root_coords(beta_t)
    return any(c[i] != 0 for i in support) or any(c[i] != 0 for i in e.g_rs.torus_coords)


def _generic_search(e: Embedding, coords: list[int], base, need):
    """Deterministic search for coefficients on ``coords`` making ``need`` pairings nonzero."""
    r = e.g_rs.rank
    t = 0
    while True:
        if t == 0:
            coeffs = [1] * len(coords)
        else:
            coeffs = [(t + 1) ** k for k in range(len(coords))]
        lam = list(base)
        for i, c in zip(coords, coeffs):
            lam[i] += c
        if all(pair(e.g_rs, b, lam) != 0 for b in need):
            return [Fraction(x) for x in lam]
        t += 1
        if t > 10_000:
            raise AssertionError("no generic cocharacter found")


def face_cocharacter(e: Embedding, f: Face, coarser: "tuple | None" = None) -> tuple[Fraction, ...]:
    """A cocharacter of the connected center S of L defining the parabolic of f.

    Coefficients are in fundamental-coweight coordinates and are positive on
    the support of f, zero on the other simple indices.  The choice is generic:
    every weight of That on Lie(Ghat) that is nontrivial on S is nonzero on it.
    With ``coarser = (face1, lambda1)`` for a smaller face, the result is
    ``N * lambda1 + mu`` with N large, so that the parabolic of f sits inside
    the parabolic of face1.
    """
    rs = e.g_rs
    support = set(f.support)
    t_weights = {e.wm(b) for b in e.ghat_roots}
    need = [b for b in t_weights if _s_nontrivial(e, support, b)]
    torus = list(rs.torus_coords)
    if coarser is None:
        coords = sorted(support) + torus
        return tuple(_generic_search(e, coords, [0] * rs.rank, need))
    f1, lam1 = coarser
    if not f1.support <= f.support:
        raise EmbeddingError("coarser face must have smaller support")
    vals = [abs(pair(rs, b, lam1)) for b in t_weights]
    nonzero = [v for v in vals if v]
    coords = sorted(support - set(f1.support))
    mu = _generic_search(
        e, coords, [0] * rs.rank, [b for b in need if pair(rs, b, lam1) == 0]
    ) if coords else [Fraction(0)] * rs.rank
    big = max((abs(pair(rs, b, mu)) for b in t_weights), default=Fraction(0))
    small = min(nonzero) if nonzero else Fraction(1)
    N = int(big / small) + 1
    lam = [N * x + y for x, y in zip(lam1, mu)]
    assert all(pair(rs, b, lam) != 0 for b in need)
    return tuple(lam)


@dataclass
class ParabolicData:
    face: Face
    cocharacter: tuple[Fraction, ...]
    levi_simple_roots: tuple[int, ...]
    t_weights_on_puhat_mod_pu: tuple[Weight, ...]
    pu_roots: tuple[Weight, ...]
    puhat_roots: tuple[Weight, ...]
    lhat_roots: tuple[Weight, ...]
    lhat_positive_roots: tuple[Weight, ...]
    pu_matrices: list
    puhat_matrices: list
    levi_l_matrices: list
    borel_bl_matrices: list
    d_matrices: list
    lhat_matrices: list
    dhat_borel_matrices: list

    @property
    def quotient_dim(self) -> int:
        return len(self.puhat_matrices) - len(self.pu_matrices)


def _multiset_difference(big: Sequence, small: Sequence) -> list:
    rem = list(big)
    for x in small:
        rem.remove(x)
    return rem


def parabolic_data(e: Embedding, f: Face, coarser=None) -> ParabolicData:
    """Parabolic, Levi and Borel data of G and Ghat attached to the face f."""
    rs = e.g_rs
    lam = face_cocharacter(e, f, coarser)
    ld = levi_data(rs, f)
    levi_roots = set(ld.levi_positive_roots) | {tuple(-x for x in a) for a in ld.levi_positive_roots}
    puhat, lhat = [], []
    for b in sorted(e.ghat_roots):
        v = pair(rs, e.wm(b), lam)
        if v > 0:
            puhat.append(b)
        elif v == 0:
            lhat.append(b)

    def key(b):
        return (rho_check_pairing(rs, e.wm(b)), rho_check_pairing(e.ghat_rs, b))

    lhat_pos = [b for b in lhat if key(b) > (0, 0)]
    t_hat = [e.wm(b) for b in puhat]
    t_small = list(ld.pu_positive_roots)
    quotient = _multiset_difference(t_hat, t_small)
    cartan = list(e.g_cartan)
    levi_pos = list(ld.levi_positive_roots)
    levi_neg = [tuple(-x for x in a) for a in levi_pos]
    return ParabolicData(
        face=f,
        cocharacter=lam,
        levi_simple_roots=ld.levi_simple_roots,
        t_weights_on_puhat_mod_pu=tuple(sorted(quotient)),
        pu_roots=tuple(ld.pu_positive_roots),
        puhat_roots=tuple(puhat),
        lhat_roots=tuple(lhat),
        lhat_positive_roots=tuple(lhat_pos),
        pu_matrices=[e.g_roots[a] for a in ld.pu_positive_roots],
        puhat_matrices=[e.ghat_roots[b] for b in puhat],
        levi_l_matrices=cartan + [e.g_roots[a] for a in levi_pos + levi_neg],
        borel_bl_matrices=cartan + [e.g_roots[a] for a in levi_pos],
        d_matrices=[e.g_cartan[j] for j in ld.levi_simple_roots]
        + [e.g_roots[a] for a in levi_pos + levi_neg],
        lhat_matrices=list(e.ghat_cartan) + [e.ghat_roots[b] for b in lhat],
        dhat_borel_matrices=list(e.ghat_cartan) + [e.ghat_roots[b] for b in lhat_pos],
    )


def matrix_span(mats: Sequence[RationalMatrix]) -> Subspace:
    if not mats:
        return Subspace.zero(0)
    n = mats[0].nrows * mats[0].ncols
    return Subspace.span([m.flat() for m in mats], n)
