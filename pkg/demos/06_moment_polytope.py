"""Slices of the moment polytope for the diagonal SL2 and the codimension identity."""
from lrfaces.embed import build_embedding
from lrfaces.lrsemigroup import moment_polytope_slice, polmom_check

pts = moment_polytope_slice("diag:A1", (1, 1), 3)
print("P_(1,1) from exact slices n <= 3:", [str(p[0]) for p in pts])

e = build_embedding("diag:A1")
r = polmom_check(e, e.g_rs.zero_face(), 4, 2, 3)
print("hypotheses:", r.hypotheses)
for c in r.checks:
    tag = "window" if c.in_window else "outside"
    print(f"  nuhat {c.nuhat}: {c.lhs} vs {c.rhs} ({tag})")
