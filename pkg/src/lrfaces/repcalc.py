"""Characters of irreducible modules and their decompositions.

Characters are sparse maps from weights (fundamental coordinates) to
multiplicities.  Weight multiplicities come from Freudenthal's recursion run on
dominant weights only; the rest of the character is filled in by Weyl orbits.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Mapping, Sequence

from .rootsys import RootSystem, Weight


class NotAModuleCharacter(ValueError):
    """Raised when highest-weight extraction meets a negative multiplicity."""


class NonDominantWeight(ValueError):
    pass


def _check_dominant(rs: RootSystem, lam: Sequence[int]):
    if len(lam) != rs.rank:
        raise ValueError(f"weight {tuple(lam)} has wrong length for {rs.spec}")
    if not rs.is_dominant(lam):
        raise NonDominantWeight(f"{tuple(lam)} is not dominant for {rs.spec}")


@dataclass
class CharacterMultiset:
    rs: RootSystem
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(k): v for k, v in self.terms.items() if v}

    def __getitem__(self, w) -> int:
        return self.terms.get(tuple(w), 0)

    def __eq__(self, other):
        return (
            isinstance(other, CharacterMultiset)
            and self.rs == other.rs
            and self.terms == other.terms
        )

    @property
    def total(self) -> int:
        return sum(self.terms.values())

    def __add__(self, other: "CharacterMultiset") -> "CharacterMultiset":
        out = Counter(self.terms)
        for k, v in other.terms.items():
            out[k] += v
        return CharacterMultiset(self.rs, dict(out))

    def scaled(self, c: int) -> "CharacterMultiset":
        return CharacterMultiset(self.rs, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "CharacterMultiset") -> "CharacterMultiset":
        """Character of the tensor product."""
        out: dict = {}
        for a, m in self.terms.items():
            for b, n in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + m * n
        return CharacterMultiset(self.rs, out)

    def dominant_part(self) -> dict:
        return {k: v for k, v in self.terms.items() if self.rs.is_dominant(k)}

    def is_weyl_invariant(self) -> bool:
        rs = self.rs
        for w, m in self.terms.items():
            for i in rs.simple_indices:
                if self.terms.get(rs.reflect(w, i), 0) != m:
                    return False
        return True

    def in_root_coords(self) -> dict:
        return {self.rs.root_coords(k): v for k, v in self.terms.items()}


@dataclass
class DecompositionResult:
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(k): v for k, v in self.terms.items() if v}

    def dimension(self, rs: RootSystem) -> int:
        return sum(m * weyl_dim(rs, lam) for lam, m in self.terms.items())

    def __eq__(self, other):
        if isinstance(other, DecompositionResult):
            return self.terms == other.terms
        if isinstance(other, Mapping):
            return self.terms == {tuple(k): v for k, v in other.items() if v}
        return NotImplemented

    def __repr__(self):
        return f"DecompositionResult({dict(sorted(self.terms.items()))})"


def weyl_dim(rs: RootSystem, lam: Sequence[int]) -> int:
    """Weyl dimension formula, exact."""
    _check_dominant(rs, lam)
    num = Fraction(1)
    lr = tuple(a + b for a, b in zip(lam, rs.rho))
    for alpha in rs.positive_roots:
        num *= rs.coroot_pairing(lr, alpha) / rs.coroot_pairing(rs.rho, alpha)
    assert num.denominator == 1
    return int(num)


class _FactorData:
    """Integer-scaled inner products for one root system, for fast recursion."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        den = 1
        for row in rs.gram:
            for x in row:
                den = lcm(den, x.denominator)
        self.gram = [[int(x * den) for x in row] for row in rs.gram]
        self.pos = rs.positive_roots
        self.galpha = [
            [sum(self.gram[i][j] * a[j] for j in range(rs.rank)) for i in range(rs.rank)]
            for a in self.pos
        ]
        self.alpha_sq = [sum(x * y for x, y in zip(a, g)) for a, g in zip(self.pos, self.galpha)]

    def norm(self, w) -> int:
        g = self.gram
        return sum(w[i] * g[i][j] * w[j] for i in range(len(w)) if w[i] for j in range(len(w)) if w[j])


@lru_cache(maxsize=None)
def _factor_data(rs: RootSystem) -> _FactorData:
    return _FactorData(rs)


def _dominant_weights_below(rs: RootSystem, lam: Weight) -> set:
    seen = {lam}
    stack = [lam]
    pos = [(a, rs._coroot_coords[a]) for a in rs.positive_roots]
    while stack:
        mu = stack.pop()
        for a, k in pos:
            # mu - alpha is a weight of V_mu exactly when <mu, alpha^vee> > 0
            if sum(x * y for x, y in zip(mu, k)) > 0:
                nu, _ = rs.to_dominant(tuple(x - y for x, y in zip(mu, a)))
                if nu not in seen:
                    seen.add(nu)
                    stack.append(nu)
    return seen


@lru_cache(maxsize=None)
def dominant_character(rs: RootSystem, lam: Weight) -> dict:
    """Multiplicities of the dominant weights of V_lam (Freudenthal recursion)."""
    lam = tuple(lam)
    _check_dominant(rs, lam)
    if len(rs.factors) > 1:
        parts = []
        for f, off in zip(rs.factors, rs.offsets):
            sub = RootSystem([(f.type, f.rank)])
            parts.append(dominant_character(sub, lam[off:off + f.rank]))
        out = {(): 1}
        for p in parts:
            out = {a + b: m * n for a, m in out.items() for b, n in p.items()}
        return out
    if rs.factors[0].type == "T":
        return {lam: 1}
    fd = _factor_data(rs)
    dom = _dominant_weights_below(rs, lam)
    # process from the top: larger depth of lam - mu comes later
    def depth(mu):
        return sum(rs.root_coords(tuple(a - b for a, b in zip(lam, mu))))

    order = sorted(dom, key=lambda mu: (depth(mu), mu))
    lr = tuple(a + b for a, b in zip(lam, rs.rho))
    top = fd.norm(lr)
    mult = {lam: 1}
    for mu in order[1:]:
        mr = tuple(a + b for a, b in zip(mu, rs.rho))
        denom = top - fd.norm(mr)
        s = 0
        for a, ga, asq in zip(fd.pos, fd.galpha, fd.alpha_sq):
            base = sum(x * y for x, y in zip(mu, ga))
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                d, _ = rs.to_dominant(nu)
                m = mult.get(d)
                if m is None:
                    if d not in dom:
                        break
                    raise AssertionError("Freudenthal order violated")
                s += m * (base + k * asq)
                k += 1
        num = 2 * s
        if num % denom:
            raise AssertionError(f"non-integral multiplicity at {mu} in V_{lam}")
        mult[mu] = num // denom
    return {k: v for k, v in mult.items() if v}


def freudenthal_character(rs: RootSystem, lam: Sequence[int]) -> CharacterMultiset:
    """Full weight multiset of the irreducible module with highest weight lam."""
    lam = tuple(lam)
    return CharacterMultiset(rs, dict(_full_character(rs, lam)))


@lru_cache(maxsize=256)
def _full_character(rs: RootSystem, lam: Weight) -> tuple:
    dom = dominant_character(rs, lam)
    out = []
    for mu, m in dom.items():
        for w in rs.orbit(mu):
            out.append((w, m))
    return tuple(out)


def _reflect_shifted(rs: RootSystem, w: Weight):
    """Bring w + rho to the dominant chamber; return (result - rho, sign) or None on a wall."""
    shifted = tuple(a + b for a, b in zip(w, rs.rho))
    d, sign = rs.to_dominant(shifted)
    if any(d[i] == 0 for i in rs.simple_indices):
        return None
    return tuple(a - b for a, b in zip(d, rs.rho)), sign


def tensor_decompose(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> DecompositionResult:
    """Decomposition of V_lam (x) V_mu by Klimyk's formula."""
    lam, mu = tuple(lam), tuple(mu)
    _check_dominant(rs, lam)
    _check_dominant(rs, mu)
    acc: dict = {}
    for w, m in _full_character(rs, mu):
        r = _reflect_shifted(rs, tuple(a + b for a, b in zip(lam, w)))
        if r is None:
            continue
        nu, sign = r
        acc[nu] = acc.get(nu, 0) + sign * m
    if any(v < 0 for v in acc.values()):
        raise AssertionError("Klimyk cancellation left a negative multiplicity")
    return DecompositionResult(acc)


def _extraction_key(rs: RootSystem, w: Weight):
    return rs.root_coords(w)


def brauer_decompose(rs: RootSystem, ch: CharacterMultiset | Mapping) -> DecompositionResult:
    """Split a Weyl-invariant character into irreducibles.

    Highest weights are peeled off one at a time, always taking the largest
    remaining dominant weight in lexicographic order of simple-root
    coordinates (a linear extension of the dominance order).
    """
    terms = ch.terms if isinstance(ch, CharacterMultiset) else dict(ch)
    rem = {k: v for k, v in terms.items() if v and rs.is_dominant(k)}
    for k, v in rem.items():
        if v < 0:
            raise NotAModuleCharacter(f"negative multiplicity {v} at {k}")
    out: dict = {}
    keys: dict = {}

    def key(w):
        k = keys.get(w)
        if k is None:
            k = keys[w] = (_extraction_key(rs, w), w)
        return k

    while rem:
        top = max(rem, key=key)
        c = rem[top]
        out[top] = c
        for w, m in dominant_character(rs, top).items():
            v = rem.get(w, 0) - c * m
            if v < 0:
                raise NotAModuleCharacter(
                    f"extracting V_{top} leaves multiplicity {v} at weight {w}"
                )
            if v:
                rem[w] = v
            else:
                rem.pop(w, None)
    return DecompositionResult(out)


def restrict_character(wm, ch: CharacterMultiset) -> CharacterMultiset:
    """Push a character forward along an integer weight map."""
    mat = wm.matrix
    if any(len(row) != ch.rs.rank for row in mat):
        raise ValueError(
            f"weight map expects {len(mat[0]) if mat else 0} coordinates, character has {ch.rs.rank}"
        )
    out: dict = {}
    for w, m in ch.terms.items():
        k = tuple(sum(a * b for a, b in zip(row, w) if a and b) for row in mat)
        out[k] = out.get(k, 0) + m
    return CharacterMultiset(wm.target, out)
