"""Compare defects computed from the semigroup with generic reductive isotropy dimensions."""
from lrfaces import isotropy as iso
from lrfaces.cli import desk_bound
from lrfaces.embed import build_embedding
from lrfaces.lrsemigroup import delta_all_faces, enumerate_semigroup

for name in ("diag:A1", "diag:A2", "diag:B2", "sym2:3"):
    e = build_embedding(name)
    s = enumerate_semigroup(e, desk_bound(name))
    print(f"\n{name}")
    for d in delta_all_faces(s):
        t = iso.delta_theoretical(e, d.face, seed=0)
        print(f"  {d.face.label():8} direct {d.delta}  isotropy {t.value}"
              f"  (L_x reductive {t.L.reductive_dim}, B_L_x reductive {t.B_L.reductive_dim})")
