"""Explicit flags in the dual of Sym^2 and Lambda^2 with finite isotropy."""
from lrfaces import isotropy as iso
from lrfaces.embed import build_embedding

for name in ("sym2:2", "sym2:3", "sym2:4", "wedge2:4", "wedge2:5", "wedge2:6"):
    e = build_embedding(name)
    flag = iso.explicit_flag(e)
    st = iso.flag_stabilizer(e, flag, "derived", dual=True)
    first = iso.FlagPoint(flag.ambient_dim, flag.subspaces[:1])
    st1 = iso.flag_stabilizer(e, first, "derived", dual=True)
    print(f"{name:9} flag dims {flag.dims}: first line fixed by dim {st1.dim}, whole flag by dim {st.dim}")

# the random route finds a witness for the tensor case, and none for the diagonal
for name in ("tensor:2x2", "diag:A1"):
    r = iso.all_faces_full_check(build_embedding(name), seed=1)
    print(f"{name:10} all faces full: {r.result} via {r.witness_source}")
