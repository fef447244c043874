"""Exact enumeration of the semigroup C = {(mu, nuhat) : (V_mu (x) V_nuhat)^G != 0}.

We use the convention Hom_G(V_mu, V_nuhat) != 0, i.e. mu runs over the
highest weights of the restriction of V_nuhat to G.  Spans (and therefore
all dimensions) agree with the invariant-based convention since mu -> mu*
is a linear automorphism preserving every face.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .embed import Embedding, build_embedding
from .exactq import Subspace, rank
from .repcalc import brauer_decompose, dominant_character, restrict_character, freudenthal_character
from .rootsys import Face, Weight, dominant_weights_up_to, enumerate_faces


@dataclass(frozen=True)
class SemigroupPoint:
    mu: Weight
    nuhat: Weight
    mult: int

    @property
    def vector(self) -> tuple[int, ...]:
        return self.mu + self.nuhat


@dataclass
class SemigroupSample:
    embedding: str
    bound: int
    g_rank: int
    ghat_rank: int
    points: list
    saturated: bool = False
    saturation_detail: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return span_dim([p.vector for p in self.points], self.g_rank + self.ghat_rank)

    def points_in_face(self, f: Face, rs) -> list:
        return [p for p in self.points if f.contains_weight(rs, p.mu)]

    def to_json(self) -> dict:
        return {
            "embedding": self.embedding,
            "bound": self.bound,
            "saturated": self.saturated,
            "saturation_detail": self.saturation_detail,
            "points": [
                {"mu": list(p.mu), "nuhat": list(p.nuhat), "mult": p.mult} for p in self.points
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["mu", "nuhat", "mult"])
        for p in self.points:
            w.writerow([" ".join(map(str, p.mu)), " ".join(map(str, p.nuhat)), p.mult])
        return buf.getvalue()

    @classmethod
    def from_json(cls, data: dict) -> "SemigroupSample":
        e = build_embedding(data["embedding"])
        pts = [SemigroupPoint(tuple(d["mu"]), tuple(d["nuhat"]), d["mult"]) for d in data["points"]]
        return cls(
            data["embedding"], data["bound"], e.g_rs.rank, e.ghat_rs.rank, pts,
            data.get("saturated", False), data.get("saturation_detail", {}),
        )


def span_dim(vectors: Sequence[Sequence], n: int) -> int:
    if not vectors:
        return 0
    return Subspace.span(vectors, n).dim


def branch(e: Embedding, nuhat: Sequence[int]) -> dict:
    """Multiplicities of the G-highest weights in the restriction of V_nuhat."""
    return _branch(e.name, tuple(nuhat))


@lru_cache(maxsize=4096)
def _branch(name: str, nuhat: Weight) -> dict:
    e = build_embedding(name)
    gr = e.g_rs
    mat = e.wm.matrix
    # only G-dominant images matter for the extraction; skip the rest early
    out: dict = {}
    for w0, m in dominant_character(e.ghat_rs, nuhat).items():
        for w in e.ghat_rs.orbit(w0):
            k = tuple(sum(a * b for a, b in zip(row, w) if a and b) for row in mat)
            if gr.is_dominant(k):
                out[k] = out.get(k, 0) + m
    return brauer_decompose(gr, out).terms


def branch_full(e: Embedding, nuhat: Sequence[int]) -> dict:
    """Same as :func:`branch` but through the full restricted character."""
    ch = restrict_character(e.wm, freudenthal_character(e.ghat_rs, tuple(nuhat)))
    return brauer_decompose(e.g_rs, ch).terms


def _points_up_to(e: Embedding, bound: int) -> list:
    pts = []
    for nuhat in dominant_weights_up_to(e.ghat_rs, bound):
        for mu, m in sorted(branch(e, nuhat).items()):
            pts.append(SemigroupPoint(mu, nuhat, m))
    return pts


def _face_spans(e: Embedding, pts: list) -> dict:
    n = e.g_rs.rank + e.ghat_rs.rank
    out = {"C": span_dim([p.vector for p in pts], n)}
    for f, _ in enumerate_faces(e.g_rs):
        out[f.label()] = span_dim(
            [p.vector for p in pts if f.contains_weight(e.g_rs, p.mu)], n
        )
    return out


def enumerate_semigroup(e: Embedding | str, bound: int) -> SemigroupSample:
    """All points of C with every coordinate of nuhat at most ``bound``.

    ``saturated`` is True when each of dim C and dim C_F either agrees with
    the enumeration at ``bound - 1`` or already sits at a proven upper bound.
    """
    if isinstance(e, str):
        e = build_embedding(e)
    if bound < 0:
        raise ValueError("bound must be >= 0")
    pts = _points_up_to(e, bound)
    now = _face_spans(e, pts)
    if bound >= 1:
        prev_pts = [p for p in pts if max(p.nuhat) <= bound - 1]
        before = _face_spans(e, prev_pts)
    else:
        before = {}
    final = _final_spans(e, now)
    saturated = all(before.get(k) == v or k in final for k, v in now.items())
    detail = {"bound": now, "bound_minus_1": before, "at_upper_bound": sorted(final)}
    return SemigroupSample(e.name, bound, e.g_rs.rank, e.ghat_rs.rank, pts, saturated, detail)


def _final_spans(e: Embedding, now: dict) -> set:
    """Span dimensions that already equal a proven upper bound, hence cannot grow.

    dim C <= rank T + rank That always.  Once dim C is final, defects are
    nonnegative, so dim C_F <= dim C - rank T + dim F.
    """
    rt = e.g_rs.rank
    if now["C"] != rt + e.ghat_rs.rank:
        return set()
    out = {"C"}
    for f, _ in enumerate_faces(e.g_rs):
        if now[f.label()] == now["C"] - rt + f.dim(e.g_rs):
            out.add(f.label())
    return out


# ``enumerate`` is the public name; keep the builtin reachable for callers who star-import.
enumerate = enumerate_semigroup  # noqa: A001


def dim_C(sample: SemigroupSample) -> int:
    return sample.dim


def c_face(sample: SemigroupSample, f: Face) -> list:
    """Points of C_F = C intersected with F x Xi(That)."""
    rs = build_embedding(sample.embedding).g_rs
    return sample.points_in_face(f, rs)


def dim_c_face(sample: SemigroupSample, f: Face) -> int:
    return span_dim([p.vector for p in c_face(sample, f)], sample.g_rank + sample.ghat_rank)


@dataclass
class DeltaResult:
    face: Face
    delta: int
    dim_C: int
    dim_C_F: int
    dim_F: int
    rank_T: int
    saturated: bool

    @property
    def warning(self) -> str | None:
        if self.saturated:
            return None
        return "enumeration not saturated; spans may still grow with the bound"

    def to_json(self) -> dict:
        return {
            "face": self.face.label(),
            "delta": self.delta,
            "dim_C": self.dim_C,
            "dim_C_F": self.dim_C_F,
            "dim_F": self.dim_F,
            "rank_T": self.rank_T,
            "saturated": self.saturated,
            "warning": self.warning,
        }


def delta_direct(sample: SemigroupSample, f: Face) -> DeltaResult:
    """delta_F = dim C - dim C_F + dim F - rank T, from the enumerated points.

    On a truncated enumeration that has not reached saturation the value is
    only provisional (it can even be negative when C is not yet spanned).
    """
    rs = build_embedding(sample.embedding).g_rs
    dc = sample.dim
    dcf = dim_c_face(sample, f)
    df = f.dim(rs)
    d = dc - dcf + df - rs.rank
    return DeltaResult(f, d, dc, dcf, df, rs.rank, sample.saturated)


def delta_all_faces(sample: SemigroupSample) -> list[DeltaResult]:
    rs = build_embedding(sample.embedding).g_rs
    return [delta_direct(sample, f) for f, _ in enumerate_faces(rs)]


# -- moment polytope slices ---------------------------------------------------------


def moment_polytope_slice(e: Embedding | str, nuhat: Sequence[int], nmax: int) -> list:
    """Points mu / n of the slice P_nuhat for n = 1 .. nmax (exact rationals)."""
    if isinstance(e, str):
        e = build_embedding(e)
    nuhat = tuple(nuhat)
    pts = set()
    for n in range(1, nmax + 1):
        for mu in branch(e, tuple(n * x for x in nuhat)):
            pts.add(tuple(Fraction(x, n) for x in mu))
    return sorted(pts)


def affine_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


@dataclass
class PolytopeCheck:
    nuhat: Weight
    interior: bool
    dim_P: int
    dim_P_cap_F: int
    dim_cone_P: int
    dim_cone_P_cap_F: int
    lhs: int
    rhs: int
    in_window: bool

    @property
    def identity_holds(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "nuhat": list(self.nuhat),
            "interior": self.interior,
            "dim_P": self.dim_P,
            "dim_P_cap_F": self.dim_P_cap_F,
            "dim_cone_P": self.dim_cone_P,
            "dim_cone_P_cap_F": self.dim_cone_P_cap_F,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "identity_holds": self.identity_holds,
            "in_window": self.in_window,
        }


def polytope_check(e: Embedding, f: Face, nuhat: Sequence[int], nmax: int,
                   sample: SemigroupSample) -> PolytopeCheck:
    """Compare dim P - dim(P cap F) with rank T - dim F on one slice.

    dim of a set means the dimension of its linear span.  The cone version
    uses the points (mu, n) instead of mu / n.  ``in_window`` tests the
    transversality of the slice against the enumerated cone: both
    dim Ptilde = dim C - dim pi(C) + 1 and the same for C_F.
    """
    rs = e.g_rs
    nuhat = tuple(nuhat)
    slice_pts = []
    for n in range(1, nmax + 1):
        for mu in branch(e, tuple(n * x for x in nuhat)):
            slice_pts.append((mu, n))
    r = rs.rank
    P = [tuple(Fraction(x, n) for x in mu) for mu, n in slice_pts]
    PF = [p for (mu, _), p in zip(slice_pts, P) if f.contains_weight(rs, mu)]
    cone = [mu + (n,) for mu, n in slice_pts]
    coneF = [mu + (n,) for mu, n in slice_pts if f.contains_weight(rs, mu)]
    dP, dPF = span_dim(P, r), span_dim(PF, r)
    dcP, dcPF = span_dim(cone, r + 1), span_dim(coneF, r + 1)
    interior = all(nuhat[i] > 0 for i in e.ghat_rs.simple_indices)
    n_all = r + e.ghat_rs.rank
    pts_F = [p for p in sample.points if f.contains_weight(rs, p.mu)]
    pi_C = span_dim([p.nuhat for p in sample.points], e.ghat_rs.rank)
    pi_CF = span_dim([p.nuhat for p in pts_F], e.ghat_rs.rank)
    dC = sample.dim
    dCF = span_dim([p.vector for p in pts_F], n_all)
    in_window = interior and dcP == dC - pi_C + 1 and dcPF == dCF - pi_CF + 1
    return PolytopeCheck(
        nuhat, interior, dP, dPF, dcP, dcPF, dP - dPF, r - f.dim(rs), in_window
    )


@dataclass
class PolmomReport:
    embedding: str
    face: Face
    dim_C: int
    rank_sum: int
    hypotheses: dict
    checks: list

    @property
    def ok(self) -> bool:
        window = [c for c in self.checks if c.in_window]
        return bool(window) and all(c.identity_holds for c in window)

    def to_json(self) -> dict:
        return {
            "embedding": self.embedding,
            "face": self.face.label(),
            "dim_C": self.dim_C,
            "rank_T_plus_rank_That": self.rank_sum,
            "hypotheses": self.hypotheses,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }


def polmom_check(e: Embedding | str, f: Face, samples: int, bound: int, nmax: int = 3,
                 sample: SemigroupSample | None = None) -> PolmomReport:
    """Test dim P_nuhat - dim(P_nuhat cap F) = rank T - dim F on several slices.

    Slices are taken at dominant nuhat with coordinates at most ``bound``,
    interior ones first.  The hypotheses (C spans everything, F is full) are
    evaluated and reported; a violation does not stop the computation.
    """
    if isinstance(e, str):
        e = build_embedding(e)
    if sample is None:
        sample = enumerate_semigroup(e, bound)
    d = delta_direct(sample, f)
    rank_sum = e.g_rs.rank + e.ghat_rs.rank
    hyp = {
        "C_spans_everything": sample.dim == rank_sum,
        "face_is_full": d.delta == 0,
        "saturated": sample.saturated,
    }
    cands = [w for w in dominant_weights_up_to(e.ghat_rs, bound) if any(w)]
    cands.sort(key=lambda w: (not all(w[i] > 0 for i in e.ghat_rs.simple_indices), w))
    checks = [polytope_check(e, f, w, nmax, sample) for w in cands[:samples]]
    return PolmomReport(e.name, f, sample.dim, rank_sum, hyp, checks)


def sample_to_json(sample: SemigroupSample) -> str:
    return json.dumps(sample.to_json(), sort_keys=True)
