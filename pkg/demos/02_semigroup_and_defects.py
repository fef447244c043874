"""Enumerate the semigroup for the diagonal SL2 and SL3 and read off face defects."""
from lrfaces.lrsemigroup import delta_all_faces, enumerate_semigroup

for name, bound in (("diag:A1", 4), ("diag:A2", 3)):
    s = enumerate_semigroup(name, bound)
    print(f"\n{name}, bound {bound}: {len(s.points)} points, dim C = {s.dim}, saturated = {s.saturated}")
    for d in delta_all_faces(s):
        print(f"  face {d.face.label():8} dim C_F = {d.dim_C_F}  dim F = {d.dim_F}  delta = {d.delta}")

# only the origin face is deficient, by exactly rank G
