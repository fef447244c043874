"""Predict dim C from torus weights on the full-face quotient and compare with enumeration."""
from lrfaces import isotropy as iso
from lrfaces.cli import desk_bound
from lrfaces.embed import build_embedding, desk_scale_catalog
from lrfaces.lrsemigroup import enumerate_semigroup

print(f"{'embedding':12} {'rk T':>4} {'rk That':>7} {'ker':>3} {'pred':>4} {'dim C':>5}")
for name in desk_scale_catalog():
    e = build_embedding(name)
    k = iso.dim_c_dual(e)
    s = enumerate_semigroup(e, desk_bound(name))
    pred = e.g_rs.rank + e.ghat_rs.rank - k
    print(f"{name:12} {e.g_rs.rank:4} {e.ghat_rs.rank:7} {k:3} {pred:4} {s.dim:5}")
