"""Weight multiplicities, dimensions and tensor products for a few small groups."""
from lrfaces.repcalc import freudenthal_character, tensor_decompose, weyl_dim
from lrfaces.rootsys import build_root_system

a2 = build_root_system("A2")
adj = freudenthal_character(a2, (1, 1))
print("adjoint of SL3: dim", adj.total, "zero weight multiplicity", adj[(0, 0)])

# V(1,0) x V(0,1) = adjoint + trivial
print("V(1,0) x V(0,1) =", dict(tensor_decompose(a2, (1, 0), (0, 1)).terms))

for spec, lam in (("B2", (0, 2)), ("C3", (2, 0, 0)), ("D4", (0, 1, 0, 0))):
    print(f"{spec} {lam}: dim {weyl_dim(build_root_system(spec), lam)}")
