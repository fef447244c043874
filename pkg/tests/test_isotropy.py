import random

import pytest
from hypothesis import given, settings, strategies as st

from lrfaces import isotropy as iso
from lrfaces.embed import build_embedding
from lrfaces.exactq import RationalMatrix, Subspace
from lrfaces.rootsys import enumerate_faces


def test_torus_kernel_examples():
    assert iso.torus_kernel_dim(2, []) == 2
    assert iso.torus_kernel_dim(1, [(2,)]) == 0
    assert iso.torus_kernel_dim(2, [(1, 0), (2, 0)]) == 1
    with pytest.raises(ValueError):
        iso.torus_kernel_dim(2, [(1, 0, 0)])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.tuples(
    st.just(r),
    st.lists(st.lists(st.integers(-3, 3), min_size=r, max_size=r), max_size=5),
    st.lists(st.lists(st.integers(-2, 2), min_size=r, max_size=r), min_size=r, max_size=r),
)))
def test_torus_kernel_invariant_under_change_of_basis(args):
    r, ws, g = args
    if RationalMatrix(g).inverse is None or Subspace.span(g, r).dim < r:
        return
    moved = [[sum(w[i] * g[i][j] for i in range(r)) for j in range(r)] for w in ws]
    combos = moved + [[a + b for a, b in zip(moved[0], moved[-1])]] if moved else moved
    assert iso.torus_kernel_dim(r, ws) == iso.torus_kernel_dim(r, combos)


@pytest.mark.parametrize("name,expected", [("diag:A1", 0), ("sym2:2", 0), ("sym2:3", 0), ("wedge2:4", 0), ("diag:A2", 0), ("tensor:2x2", 1)])
def test_dim_c_dual(name, expected):
    assert iso.dim_c_dual(build_embedding(name)) == expected


def test_reductive_part_dim_on_known_algebras():
    E = RationalMatrix([[0, 1], [0, 0]])
    F = RationalMatrix([[0, 0], [1, 0]])
    H = RationalMatrix([[1, 0], [0, -1]])
    assert iso.reductive_part_dim([H, E, F]) == (3, 0)
    assert iso.reductive_part_dim([H, E]) == (1, 1)
    assert iso.reductive_part_dim([E]) == (0, 1)
    assert iso.reductive_part_dim([]) == (0, 0)
    # semisimple but isotropic for the trace form: the heuristic must refuse
    X = RationalMatrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    assert iso.reductive_part_dim([X])[0] == iso.UNAVAILABLE


def test_flag_point_validation():
    with pytest.raises(ValueError):
        iso.FlagPoint.from_chain([[[1, 0, 0], [0, 1, 0]], [[1, 0, 0]]], 3)
    f = iso.FlagPoint.from_vectors([[1, 0, 0]], 3)
    assert f.completed().dims == (1, 2)
    assert f.annihilator().dims == (2,)


def test_empty_flag_stabilizes_everything():
    e = build_embedding("sym2:3")
    st_ = iso.flag_stabilizer(e, iso.FlagPoint(6, ()), "g")
    assert st_.dim == len(e.lie_g_basis)


def test_flag_dimension_mismatch():
    e = build_embedding("sym2:2")
    with pytest.raises(ValueError):
        iso.flag_stabilizer(e, iso.FlagPoint.from_vectors([[1, 0]], 2), "g")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sym2_explicit_flag_is_finite(n):
    e = build_embedding(f"sym2:{n}")
    flag = iso.sym2_explicit_flag(n)
    assert flag.dims == (1, 2)
    assert iso.flag_stabilizer(e, flag, "derived", dual=True).dim == 0
    # the first member alone is stabilized by so(n)
    first = iso.FlagPoint(flag.ambient_dim, flag.subspaces[:1])
    assert iso.flag_stabilizer(e, first, "derived", dual=True).dim == n * (n - 1) // 2


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_wedge2_explicit_flag_is_finite(n):
    e = build_embedding(f"wedge2:{n}")
    assert iso.flag_stabilizer(e, iso.wedge2_explicit_flag(n), "derived", dual=True).dim == 0


def test_wedge2_first_line_is_symplectic():
    e = build_embedding("wedge2:4")
    flag = iso.wedge2_explicit_flag(4)
    first = iso.FlagPoint(flag.ambient_dim, flag.subspaces[:1])
    assert iso.flag_stabilizer(e, first, "derived", dual=True).dim == 10


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["sym2:2", "sym2:3", "tensor:2x2", "diag:A1"]), st.integers(0, 10_000))
def test_flag_and_annihilator_have_same_stabilizer(name, seed):
    e = build_embedding(name)
    rng = random.Random(seed)
    N = e.ambient_dim
    k = rng.randint(1, N - 1)
    vecs = [[rng.randint(-2, 2) for _ in range(N)] for _ in range(k)]
    if Subspace.span(vecs, N).dim < k:
        return
    flag = iso.FlagPoint.from_vectors(vecs, N)
    a = iso.flag_stabilizer(e, flag, "g")
    b = iso.flag_stabilizer(e, flag.annihilator(), "g", dual=True)
    assert a.dim == b.dim
    assert a.is_bracket_closed()


def test_generic_stabilizer_diag_a1():
    e = build_embedding("diag:A1")
    f0 = e.g_rs.zero_face()
    d = iso.generic_stabilizer(e, f0, "D")
    assert (d.dim, d.reductive_dim) == (1, 1)
    assert d.trials_at_minimum >= 3
    assert d.is_bracket_closed()
    assert iso.generic_stabilizer(e, f0, "B_L").dim == 0


def test_generic_stabilizer_sym2_3_full_face():
    e = build_embedding("sym2:3")
    r = iso.generic_stabilizer(e, e.g_rs.full_face(), "D")
    assert r.dim == 0
    assert iso.generic_stabilizer(e, e.g_rs.full_face(), "L").dim == 0


def test_generic_stabilizer_rejects_bad_args():
    e = build_embedding("diag:A1")
    with pytest.raises(ValueError):
        iso.generic_stabilizer(e, e.g_rs.zero_face(), "Q")
    with pytest.raises(ValueError):
        iso.generic_stabilizer(e, e.g_rs.zero_face(), "L", trials=0)


def test_generic_minimum_is_stable_across_trials():
    e = build_embedding("diag:A2")
    r = iso.generic_stabilizer(e, e.g_rs.zero_face(), "L", trials=5, seed=3)
    assert r.dim == 2 and r.trials_at_minimum >= 3


@pytest.mark.parametrize("name,expected", [
    ("diag:A1", {"{}": 1, "{1}": 0}),
    ("sym2:2", {"{}": 0, "{1}": 0}),
    ("diag:A1xA1", {"{}": 2, "{1}": 1, "{2}": 1, "{1,2}": 0}),
])
def test_delta_theoretical_values(name, expected):
    e = build_embedding(name)
    got = {f.label(): iso.delta_theoretical(e, f).value for f, _ in enumerate_faces(e.g_rs)}
    assert got == expected


def test_delta_theoretical_is_seed_deterministic():
    e = build_embedding("diag:A2")
    f = e.g_rs.zero_face()
    a = iso.delta_theoretical(e, f, seed=11).to_json()
    b = iso.delta_theoretical(e, f, seed=11).to_json()
    assert a == b


@pytest.mark.parametrize("name,expected,source", [
    ("sym2:2", True, "explicit flag"),
    ("sym2:3", True, "explicit flag"),
    ("wedge2:4", True, "explicit flag"),
    ("tensor:2x2", True, "random flag"),
    ("diag:A1", False, "none found"),
])
def test_all_faces_full_check(name, expected, source):
    e = build_embedding(name)
    r = iso.all_faces_full_check(e)
    assert r.result is expected and r.witness_source == source
    if r.result:
        assert r.witness.is_complete
        assert iso.flag_stabilizer(e, r.witness, "derived").dim == 0
    else:
        assert r.stabilizer_dim == 1
