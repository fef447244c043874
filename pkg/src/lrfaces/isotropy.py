"""Torus kernels, flag stabilizers and generic isotropy on the model variety.

For a face F with parabolic data (L, P, Lhat, Phat) the model variety is
``puhat/pu x Lhat/B_Lhat``; L acts on the first factor through the adjoint
action and on the second by left translation.  The defect of F equals the
difference of the reductive isotropy dimensions of L and of B_L at a generic
point, which :func:`delta_theoretical` evaluates on random exact samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .embed import Embedding, ParabolicData, parabolic_data
from .exactq import RationalMatrix, Subspace, kernel_vectors, rank
from .rootsys import Face, Weight

UNAVAILABLE = "unavailable"
NEEDS_REFINEMENT = "needs reductive refinement"
DEFAULT_HEIGHT = 7
DEFAULT_TRIALS = 5


# -- torus kernels --------------------------------------------------------------


def torus_kernel_dim(rank_: int, weights: Sequence[Sequence[int]]) -> int:
    """Dimension of the kernel of a torus of rank ``rank_`` acting with ``weights``."""
    for w in weights:
        if len(w) != rank_:
            raise ValueError(f"weight {tuple(w)} does not have {rank_} coordinates")
    if not weights:
        return rank_
    return rank_ - rank(weights)


def dim_c_dual(e: Embedding) -> int:
    """Kernel dimension of T on Lie(Uhat)/Lie(U): the codimension of C."""
    pd = parabolic_data(e, Face(frozenset(e.g_rs.simple_indices)))
    return torus_kernel_dim(e.g_rs.rank, list(pd.t_weights_on_puhat_mod_pu))


# -- flags ------------------------------------------------------------------------


@dataclass(frozen=True)
class FlagPoint:
    ambient_dim: int
    subspaces: tuple

    def __post_init__(self):
        dims = [s.dim for s in self.subspaces]
        for s in self.subspaces:
            if s.ambient_dim != self.ambient_dim:
                raise ValueError("flag member lives in the wrong space")
        for a, b in zip(self.subspaces, self.subspaces[1:]):
            if not (a.dim < b.dim and b.contains_space(a)):
                raise ValueError(f"flag is not strictly increasing: dims {dims}")

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence], ambient_dim: int) -> "FlagPoint":
        """Chain spanned by the first k vectors, k = 1 .. len(vectors)."""
        subs = [Subspace.span(vectors[:k], ambient_dim) for k in range(1, len(vectors) + 1)]
        return cls(ambient_dim, tuple(subs))

    @classmethod
    def from_chain(cls, chain: Sequence[Sequence[Sequence]], ambient_dim: int) -> "FlagPoint":
        return cls(ambient_dim, tuple(Subspace.span(c, ambient_dim) for c in chain))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.subspaces)

    @property
    def is_complete(self) -> bool:
        return self.dims == tuple(range(1, self.ambient_dim))  or self.dims == tuple(
            range(1, self.ambient_dim + 1)
        )

    def completed(self) -> "FlagPoint":
        """Refine to a complete flag by adding standard basis vectors greedily."""
        n = self.ambient_dim
        subs = []
        prev = Subspace.zero(n)
        for target in list(self.subspaces) + [Subspace.full(n)]:
            cur = prev
            for i in range(n):
                if cur.dim + 1 >= target.dim:
                    break
                unit = [0] * n
                unit[i] = 1
                # pick a vector of target outside cur
                for v in list(target.basis) + [unit]:
                    if target.contains(v) and not cur.contains(v):
                        cur = cur + Subspace.span([v], n)
                        subs.append(cur)
                        break
                else:
                    break
            if target.dim > prev.dim and (not subs or subs[-1] != target):
                subs.append(target)
            prev = target
        out = [s for s in subs if s.dim < n]
        return FlagPoint(n, tuple(out))

    def annihilator(self) -> "FlagPoint":
        """Flag of annihilators in the dual space (standard dot product), reversed."""
        n = self.ambient_dim
        subs = []
        for s in reversed(self.subspaces):
            ann = Subspace.span(kernel_vectors([list(v) for v in s.basis], n), n) if s.dim else Subspace.full(n)
            if 0 < ann.dim:
                subs.append(ann)
        return FlagPoint(n, tuple(subs))

    def to_json(self) -> list:
        return [[[str(x) for x in v] for v in s.basis] for s in self.subspaces]


# -- stabilizer reports -------------------------------------------------------------


@dataclass
class StabilizerReport:
    point_description: str
    basis: list
    dim: int
    reductive_dim: object
    samples_used: int
    trial_dims: list = field(default_factory=list)
    unipotent_radical_dim: object = None

    @property
    def subalgebra(self) -> Subspace:
        if not self.basis:
            return Subspace.zero(0)
        n = self.basis[0].nrows * self.basis[0].ncols
        return Subspace.span([m.flat() for m in self.basis], n)

    @property
    def trials_at_minimum(self) -> int:
        return sum(1 for d in self.trial_dims if d == self.dim)

    def is_bracket_closed(self) -> bool:
        sub = self.subalgebra
        return all(
            sub.contains(a.bracket(b).flat())
            for i, a in enumerate(self.basis)
            for b in self.basis[i + 1:]
        )

    def to_json(self) -> dict:
        return {
            "point": self.point_description,
            "dim": self.dim,
            "reductive_dim": self.reductive_dim,
            "samples_used": self.samples_used,
            "trial_dims": self.trial_dims,
        }


def _independent(mats: Sequence[RationalMatrix]) -> list:
    """A maximal linearly independent sublist."""
    out, rows = [], []
    r = 0
    for m in mats:
        cand = rows + [list(m.flat())]
        if rank(cand) > r:
            rows, r = cand, r + 1
            out.append(m)
    return out


def _combine(coeffs: Sequence, mats: Sequence[RationalMatrix]) -> RationalMatrix:
    n, k = mats[0].nrows, mats[0].ncols
    acc = [[Fraction(0)] * k for _ in range(n)]
    for c, m in zip(coeffs, mats):
        if c:
            for i, row in enumerate(m.rows):
                for j, x in enumerate(row):
                    if x:
                        acc[i][j] += c * x
    return RationalMatrix(acc, k)


def reductive_part_dim(basis: Sequence[RationalMatrix]):
    """dim h - dim r, with r the radical of the trace form on h = span(basis).

    Answers only when r consists of nilpotent matrices (then r is the
    unipotent radical of the algebraic group with Lie algebra h); otherwise
    returns ``UNAVAILABLE``.  Also returns dim r (or None).
    """
    basis = list(basis)
    if not basis:
        return 0, 0
    gram = [[(a @ b).trace() for b in basis] for a in basis]
    rad = kernel_vectors(gram, len(basis))
    rad_mats = [_combine(v, basis) for v in rad]
    if all(m.is_nilpotent() for m in rad_mats):
        return len(basis) - len(rad), len(rad)
    return UNAVAILABLE, None


def flag_stabilizer(e: Embedding | None, flag: FlagPoint, actor: Sequence[RationalMatrix] | str = "g",
                    dual: bool = False) -> StabilizerReport:
    """{X in span(actor) : X W subset W for every member W of the flag}.

    ``actor`` is a list of matrices or one of "g" (Lie G), "derived" ([G, G]),
    "ghat" (Lie Ghat).  With ``dual=True`` the matrices act on the dual module
    through X -> -X^T, the flag being given in dual-basis coordinates.
    """
    if isinstance(actor, str):
        if e is None:
            raise ValueError("named actors need an embedding")
        actor = {"g": e.lie_g_basis, "derived": e.derived_g_basis, "ghat": e.lie_ghat_basis}[actor]
    mats = _independent(actor)
    if dual:
        mats = [-m.T for m in mats]
    if mats and mats[0].nrows != flag.ambient_dim:
        raise ValueError(
            f"flag lives in dimension {flag.ambient_dim}, actor matrices have size {mats[0].nrows}"
        )
    n = flag.ambient_dim
    eqs = []
    for W in flag.subspaces:
        ann = kernel_vectors([list(v) for v in W.basis], n)
        if not ann:
            continue
        for w in W.basis:
            images = [m.apply(w) for m in mats]
            for phi in ann:
                eqs.append([sum(p * x for p, x in zip(phi, img) if p and x) for img in images])
    sol = kernel_vectors(eqs, len(mats)) if eqs else [
        tuple(int(i == j) for j in range(len(mats))) for i in range(len(mats))
    ]
    basis = [_combine(v, mats) for v in sol]
    red, rad = reductive_part_dim(basis)
    return StabilizerReport(
        point_description="flag with member dims " + ",".join(map(str, flag.dims)),
        basis=basis,
        dim=len(basis),
        reductive_dim=red,
        samples_used=1,
        trial_dims=[len(basis)],
        unipotent_radical_dim=rad,
    )


# -- explicit flags -------------------------------------------------------------------


def _upper_coords(M: Sequence[Sequence], strict: bool) -> list:
    n = len(M)
    return [M[i][j] for i in range(n) for j in range(i + (1 if strict else 0), n)]


def sym2_explicit_flag(n: int) -> FlagPoint:
    """<omega_0> in <omega_0, omega_1> in S^2 V*, omega_0 = sum e_i*^2, omega_1 = sum i e_i*^2.

    Coordinates are the dual-basis coordinates M_ij (i <= j) of the symmetric
    matrix of the quadratic form.
    """
    w0 = _upper_coords([[int(i == j) for j in range(n)] for i in range(n)], strict=False)
    w1 = _upper_coords([[(i + 1) * int(i == j) for j in range(n)] for i in range(n)], strict=False)
    return FlagPoint.from_vectors([w0, w1], n * (n + 1) // 2)


def _antisym(n: int, entries: dict) -> list:
    M = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), x in entries.items():
        M[i][j] += x
        M[j][i] -= x
    return M


def _pairing_hyperplane_chain(thetas: Sequence[list], n: int) -> list[Subspace]:
    """Annihilators of <theta_1> in <theta_1, theta_2> in ..., as a decreasing list."""
    N = n * (n - 1) // 2
    out = []
    for k in range(1, len(thetas) + 1):
        rows = [_upper_coords(t, strict=True) for t in thetas[:k]]
        out.append(Subspace.span(kernel_vectors(rows, N), N))
    return out


def wedge2_explicit_flag(n: int) -> FlagPoint:
    """Partial flag of Lambda^2 V* with finite SL(V)-isotropy.

    Basis order of V: e_1..e_p, eps_1..eps_p (and kappa when n is odd).  The
    flag starts with omega_0 = sum e_i* ^ eps_i* and omega_1 = sum i e_i* ^ eps_i*
    (plus the kappa terms when n is odd).  For even n it continues with the
    annihilators of vectors of Lambda^2 V lying in W_i (x) W_j; for odd n with
    omega_2 and the kernel of a vector theta.
    """
    if n < 4:
        raise ValueError("needs dim V >= 4")
    p = n // 2
    N = n * (n - 1) // 2
    e = list(range(p))
    eps = [p + i for i in range(p)]
    w0 = _antisym(n, {(e[i], eps[i]): 1 for i in range(p)})
    if n % 2 == 0:
        w1 = _antisym(n, {(e[i], eps[i]): i + 1 for i in range(p)})
        base = [_upper_coords(w0, True), _upper_coords(w1, True)]

        def theta(i, j, C):
            x, y = (e[i], eps[i]), (e[j], eps[j])
            return _antisym(n, {(x[a], y[b]): C[a][b] for a in range(2) for b in range(2) if C[a][b]})

        I2 = [[1, 0], [0, 1]]
        H = [[1, 0], [0, -1]]
        F = [[0, 1], [1, 0]]
        thetas = [theta(0, 1, I2), theta(0, 1, H), theta(0, 1, F)]
        thetas += [theta(i, i + 1, I2) for i in range(1, p - 1)]
        chain = [Subspace.span(base[:1], N), Subspace.span(base, N)]
        chain += list(reversed(_pairing_hyperplane_chain(thetas, n)))
        return FlagPoint(N, tuple(chain))
    k = n - 1
    ent1 = {(e[i], eps[i]): i + 1 for i in range(p)}
    ent1.update({(e[i], k): 1 for i in range(p)})
    w1 = _antisym(n, ent1)
    # D' = E_12 + E_21 keeps I, D, D' independent
    ent2 = {(e[0], eps[1]): 1, (e[1], eps[0]): 1}
    ent2.update({(eps[i], k): 1 for i in range(p)})
    w2 = _antisym(n, ent2)
    # U = E_12 - E_21: tr U = tr UD = tr UD' = 0
    th = _antisym(n, {(e[0], eps[1]): 1, (e[1], eps[0]): -1})
    vecs = [_upper_coords(w, True) for w in (w0, w1, w2)]
    ker = Subspace.span(kernel_vectors([_upper_coords(th, True)], N), N)
    chain = [Subspace.span(vecs[:i], N) for i in (1, 2, 3)] + [ker]
    return FlagPoint(N, tuple(chain))


def explicit_flag(e: Embedding) -> FlagPoint | None:
    """Explicit dual-module flag with finite [G, G]-isotropy, when one is known."""
    if e.family == "sym2":
        return sym2_explicit_flag(e.n)
    if e.family == "wedge2":
        return wedge2_explicit_flag(e.n)
    return None


# -- sampling -------------------------------------------------------------------------


def _exp_nilpotent(E: RationalMatrix, c: int) -> RationalMatrix:
    n = E.nrows
    out = RationalMatrix.identity(n)
    term = RationalMatrix.identity(n)
    k = 0
    while True:
        k += 1
        term = (term @ E).scale(Fraction(c, k))
        if term.is_zero():
            return out
        out = out + term


def sample_group_element(mats_pairs: Sequence[tuple], rng: random.Random, height: int):
    """Product of exponentials over (E_beta, E_-beta) pairs with random integer times.

    Returns (g, g^-1) exactly.
    """
    n = mats_pairs[0][0].nrows if mats_pairs else 0
    g = RationalMatrix.identity(n) if n else None
    ginv = g
    for Eneg, Epos in mats_pairs:
        for E in (Eneg, Epos):
            c = rng.randint(-height, height)
            if c:
                g = g @ _exp_nilpotent(E, c)
                ginv = _exp_nilpotent(E, -c) @ ginv
    return g, ginv


@dataclass
class ModelPoint:
    a: RationalMatrix
    g: RationalMatrix
    ginv: RationalMatrix
    description: str


def sample_model_point(e: Embedding, pd: ParabolicData, rng: random.Random,
                       height: int = DEFAULT_HEIGHT) -> ModelPoint:
    N = e.ambient_dim
    coeffs = [rng.randint(-height, height) for _ in pd.puhat_matrices]
    a = _combine(coeffs, pd.puhat_matrices) if pd.puhat_matrices else RationalMatrix.zeros(N)
    pairs = []
    for b in pd.lhat_positive_roots:
        nb = tuple(-x for x in b)
        pairs.append((e.ghat_roots[nb], e.ghat_roots[b]))
    if pairs:
        g, ginv = sample_group_element(pairs, rng, height)
    else:
        g = ginv = RationalMatrix.identity(N)
    desc = f"a = {coeffs} on puhat; g = product of {2 * len(pairs)} root exponentials"
    return ModelPoint(a, g, ginv, desc)


def _actor_matrices(pd: ParabolicData, actor: str) -> list:
    table = {
        "L": pd.levi_l_matrices,
        "B_L": pd.borel_bl_matrices,
        "D": pd.d_matrices,
    }
    if actor not in table:
        raise ValueError(f"actor must be one of {sorted(table)}")
    return table[actor]


def stabilizer_at(pd: ParabolicData, actor_mats: Sequence[RationalMatrix], x: ModelPoint) -> list:
    """{X in span(actor) : [X, a] in pu and X in Ad(g) b_Lhat}, as matrices."""
    mats = list(actor_mats)
    if not mats:
        return []
    N = mats[0].nrows
    brackets = [m.bracket(x.a) for m in mats]
    borel = [x.g @ b @ x.ginv for b in pd.dhat_borel_matrices]
    pu = pd.pu_matrices
    m, k, s = len(mats), len(pu), len(borel)
    ncols = m + k + s
    eqs = []
    for r in range(N):
        for c in range(N):
            row = [0] * ncols
            nz = False
            for i, br in enumerate(brackets):
                v = br.rows[r][c]
                if v:
                    row[i] = v
                    nz = True
            for j, P in enumerate(pu):
                v = P.rows[r][c]
                if v:
                    row[m + j] = -v
                    nz = True
            if nz:
                eqs.append(row)
            row = [0] * ncols
            nz = False
            for i, X in enumerate(mats):
                v = X.rows[r][c]
                if v:
                    row[i] = v
                    nz = True
            for j, B in enumerate(borel):
                v = B.rows[r][c]
                if v:
                    row[m + k + j] = -v
                    nz = True
            if nz:
                eqs.append(row)
    sol = kernel_vectors(eqs, ncols)
    xs = [v[:m] for v in sol]
    basis = [_combine(v, mats) for v in xs if any(v)]
    return _independent(basis)


def generic_stabilizer(e: Embedding, f: Face, actor: str = "L", trials: int = DEFAULT_TRIALS,
                       seed: int = 0, height: int = DEFAULT_HEIGHT,
                       pd: ParabolicData | None = None) -> StabilizerReport:
    """Stabilizer of the actor at a random point of the model variety (minimum over trials)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pd = pd or parabolic_data(e, f)
    mats = _independent(_actor_matrices(pd, actor))
    rng = random.Random(seed)
    best = None
    dims = []
    for _ in range(trials):
        x = sample_model_point(e, pd, rng, height)
        basis = stabilizer_at(pd, mats, x)
        dims.append(len(basis))
        if best is None or len(basis) < len(best[0]):
            best = (basis, x)
    basis, x = best
    red, rad = reductive_part_dim(basis)
    return StabilizerReport(
        point_description=x.description,
        basis=basis,
        dim=len(basis),
        reductive_dim=red,
        samples_used=trials,
        trial_dims=dims,
        unipotent_radical_dim=rad,
    )


@dataclass
class TheoreticalDelta:
    face: Face
    value: object
    L: StabilizerReport
    B_L: StabilizerReport

    @property
    def numeric(self) -> bool:
        return isinstance(self.value, int)

    def to_json(self) -> dict:
        return {
            "face": self.face.label(),
            "delta": self.value,
            "L": self.L.to_json(),
            "B_L": self.B_L.to_json(),
        }


def delta_theoretical(e: Embedding, f: Face, trials: int = DEFAULT_TRIALS, seed: int = 0,
                      height: int = DEFAULT_HEIGHT, pd: ParabolicData | None = None) -> TheoreticalDelta:
    """Reductive isotropy of L minus that of B_L at one common generic point."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pd = pd or parabolic_data(e, f)
    Lm = _independent(pd.levi_l_matrices)
    Bm = _independent(pd.borel_bl_matrices)
    rng = random.Random(seed)
    best = None
    dims = []
    for _ in range(trials):
        x = sample_model_point(e, pd, rng, height)
        sl, sb = stabilizer_at(pd, Lm, x), stabilizer_at(pd, Bm, x)
        dims.append((len(sl), len(sb)))
        if best is None or (len(sl), len(sb)) < (len(best[0]), len(best[1])):
            best = (sl, sb, x)
    sl, sb, x = best
    rl, radl = reductive_part_dim(sl)
    rb, radb = reductive_part_dim(sb)
    rep_l = StabilizerReport(x.description, sl, len(sl), rl, trials, [d[0] for d in dims], radl)
    rep_b = StabilizerReport(x.description, sb, len(sb), rb, trials, [d[1] for d in dims], radb)
    if rl == UNAVAILABLE or rb == UNAVAILABLE:
        value = NEEDS_REFINEMENT
    else:
        value = rl - rb
    return TheoreticalDelta(f, value, rep_l, rep_b)


# -- all faces full ------------------------------------------------------------------


@dataclass
class FullFacesReport:
    embedding: str
    result: bool
    witness: FlagPoint | None
    witness_source: str
    stabilizer_dim: int | None
    trial_dims: list

    def to_json(self) -> dict:
        return {
            "embedding": self.embedding,
            "all_faces_full": self.result,
            "witness_source": self.witness_source,
            "stabilizer_dim": self.stabilizer_dim,
            "trial_dims": self.trial_dims,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _column_flag(g: RationalMatrix) -> FlagPoint:
    cols = [list(c) for c in g.T.rows]
    return FlagPoint.from_vectors(cols[:-1], g.nrows)


def all_faces_full_check(e: Embedding, trials: int = DEFAULT_TRIALS, seed: int = 0,
                         height: int = DEFAULT_HEIGHT) -> FullFacesReport:
    """Look for a point of Ghat/Bhat with finite isotropy in [G, G].

    The explicit dual-module flag is tried first (completed, then turned into
    an ambient flag by annihilators); otherwise random complete flags given
    by the columns of random elements of Ghat.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pf = explicit_flag(e)
    if pf is not None:
        full = pf.completed()
        witness = full.annihilator()
        st = flag_stabilizer(e, witness, "derived")
        if st.dim == 0:
            return FullFacesReport(e.name, True, witness, "explicit flag", 0, [0])
    rng = random.Random(seed)
    pos = list(e.ghat_rs.positive_roots)
    pairs = [(e.ghat_roots[tuple(-x for x in b)], e.ghat_roots[b]) for b in pos]
    dims = []
    for _ in range(trials):
        g, _ = sample_group_element(pairs, rng, height)
        flag = _column_flag(g)
        st = flag_stabilizer(e, flag, "derived")
        dims.append(st.dim)
        if st.dim == 0:
            return FullFacesReport(e.name, True, flag, "random flag", 0, dims)
    return FullFacesReport(e.name, False, None, "none found", min(dims), dims)
