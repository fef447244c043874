"""Independent oracles used to freeze expected values.

Nothing here touches Freudenthal or Klimyk: characters come from the Weyl
character formula (alternating sums over the Weyl group, divided by the Weyl
denominator as a power series), decompositions from greedy highest-weight
subtraction of those characters.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product

from lrfaces.rootsys import RootSystem


def _depth(rs: RootSystem, top, w) -> int:
    return sum(rs.root_coords(tuple(a - b for a, b in zip(top, w))))


def weyl_character(rs: RootSystem, lam) -> dict:
    return dict(_weyl_character(rs, tuple(lam)))


@lru_cache(maxsize=None)
def _weyl_character(rs: RootSystem, lam) -> tuple:
    lr = tuple(a + b for a, b in zip(lam, rs.rho))
    numer = Counter()
    for w in rs.orbit(lr):
        _, sign = rs.to_dominant(w)
        numer[tuple(a - b for a, b in zip(w, rs.rho))] += sign
    lowest = tuple(-x for x in rs.dual(lam))
    depth_max = _depth(rs, lam, lowest)
    cur = dict(numer)
    for alpha in rs.positive_roots:
        nxt = Counter()
        for w, c in cur.items():
            k = 0
            while True:
                v = tuple(x - k * y for x, y in zip(w, alpha))
                if _depth(rs, lam, v) > depth_max:
                    break
                nxt[v] += c
                k += 1
        cur = {k: v for k, v in nxt.items() if v}
    return tuple(cur.items())


def character_product(a: dict, b: dict) -> dict:
    out = Counter()
    for x, m in a.items():
        for y, n in b.items():
            out[tuple(p + q for p, q in zip(x, y))] += m * n
    return dict(out)


def greedy_decompose(rs: RootSystem, ch: dict) -> dict:
    rem = Counter({k: v for k, v in ch.items() if v})
    out = {}
    while rem:
        dom = [w for w in rem if rs.is_dominant(w)]
        # a weight with no dominant weight above it in the support
        top = next(
            w for w in dom
            if not any(u != w and rs.is_root_lattice_below(u, w) for u in dom)
        )
        c = rem[top]
        assert c > 0
        out[top] = c
        for w, m in weyl_character(rs, top).items():
            rem[w] -= c * m
            if rem[w] == 0:
                del rem[w]
    return out


def tensor_oracle(rs: RootSystem, lam, mu) -> dict:
    return greedy_decompose(
        rs, character_product(weyl_character(rs, lam), weyl_character(rs, mu))
    )


def dominant_box(rs: RootSystem, bound: int):
    return [tuple(w) for w in product(range(bound + 1), repeat=rs.rank)]
