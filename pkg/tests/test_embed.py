import pytest

from lrfaces.embed import (
    EmbeddingError,
    build_embedding,
    face_cocharacter,
    matrix_span,
    pair,
    parabolic_data,
)
from lrfaces.exactq import span_intersection
from lrfaces.rootsys import enumerate_faces

NAMES = ["diag:A1", "diag:A2", "diag:B2", "diag:C2", "sym2:2", "sym2:3", "wedge2:4", "wedge2:5", "tensor:2x2", "tensor:2x3"]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@pytest.mark.parametrize("name", NAMES)
def test_cartan_action_on_root_vectors(name):
    e = build_embedding(name)
    for roots, cartan in ((e.g_roots, e.g_cartan), (e.ghat_roots, e.ghat_cartan)):
        for a, m in roots.items():
            assert not m.is_zero()
            for i, H in enumerate(cartan):
                assert H.bracket(m) == m.scale(a[i])


@pytest.mark.parametrize("name", ["diag:A2", "diag:B2", "sym2:3", "wedge2:4", "tensor:2x2"])
def test_root_vector_brackets_close(name):
    e = build_embedding(name)
    cart = matrix_span(e.g_cartan)
    for a, x in e.g_roots.items():
        for b, y in e.g_roots.items():
            z = x.bracket(y)
            s = _add(a, b)
            if all(v == 0 for v in s):
                assert cart.contains(z.flat()) and not z.is_zero()
            elif s in e.g_roots:
                assert matrix_span([e.g_roots[s]]).contains(z.flat())
            else:
                assert z.is_zero()


@pytest.mark.parametrize("name", NAMES)
def test_lie_g_sits_in_lie_ghat_and_weights_match(name):
    e = build_embedding(name)
    g, gh = matrix_span(e.lie_g_basis), matrix_span(e.lie_ghat_basis)
    assert g.dim == e.g_rs.rank + len(e.g_rs.roots)
    assert gh.dim == e.ghat_rs.rank + len(e.ghat_rs.roots)
    assert gh.contains_space(g)
    for w, wh in zip(e.ambient_weights, e.ambient_hat_weights):
        assert e.wm(wh) == tuple(w)
    # ambient T-weights read off from the Cartan matrices directly
    for k, w in enumerate(e.ambient_weights):
        assert tuple(H.rows[k][k] for H in e.g_cartan) == tuple(w)
    assert e.wm.is_surjective()


def test_weight_map_values():
    assert build_embedding("diag:A1").wm.matrix == ((1, 1),)
    assert build_embedding("sym2:2").wm.matrix == ((2, 2),)
    t = build_embedding("tensor:2x2").wm.matrix
    assert t[-1] == (0, 0, 0, 1)
    assert build_embedding("sym2:3").ambient_dim == 6
    assert build_embedding("wedge2:5").ambient_dim == 10


@pytest.mark.parametrize("bad", ["wedge2:3", "wedge2:2", "sym2:1", "tensor:1x3", "diag:A1xT1", "foo:1", "sym2:x", "tensor:2by2"])
def test_invalid_embeddings(bad):
    with pytest.raises(Exception) as exc:
        build_embedding(bad)
    assert isinstance(exc.value, ValueError)


@pytest.mark.parametrize("name", NAMES[:-2] + ["tensor:2x2"])
def test_parabolic_invariants(name):
    e = build_embedding(name)
    g = matrix_span(e.lie_g_basis)
    for f, _ in enumerate_faces(e.g_rs):
        pd = parabolic_data(e, f)
        lam = pd.cocharacter
        assert all(lam[i] > 0 for i in f.support)
        assert all(lam[i] == 0 for i in e.g_rs.simple_indices if i not in f.support)
        pu = matrix_span(pd.pu_matrices) if pd.pu_matrices else None
        puh = matrix_span(pd.puhat_matrices) if pd.puhat_matrices else None
        if puh is None:
            assert pu is None
        else:
            inter = span_intersection(puh, g)
            assert inter.dim == (pu.dim if pu else 0)
        lhat = matrix_span(pd.lhat_matrices)
        assert span_intersection(lhat, g).dim == len(pd.levi_l_matrices)
        for X in pd.levi_l_matrices:
            for P in pd.puhat_matrices:
                assert puh.contains(X.bracket(P).flat())
        bhat = matrix_span(pd.dhat_borel_matrices)
        for B in pd.borel_bl_matrices:
            assert bhat.contains(B.flat())
        assert len(pd.t_weights_on_puhat_mod_pu) == pd.quotient_dim


def test_quotient_weights_sym2_2():
    e = build_embedding("sym2:2")
    pd = parabolic_data(e, e.g_rs.full_face())
    assert sorted(x[0] for x in pd.t_weights_on_puhat_mod_pu) == [2, 4]


def test_all_ones_cocharacter_can_be_degenerate():
    # on sym2:3 the full face needs a non-constant cocharacter
    e = build_embedding("sym2:3")
    lam = face_cocharacter(e, e.g_rs.full_face())
    assert lam[0] != lam[1]
    for b in e.ghat_roots:
        w = e.wm(b)
        if any(w):
            assert pair(e.g_rs, w, lam) != 0


@pytest.mark.parametrize("name", ["diag:A2", "sym2:3", "wedge2:4", "tensor:2x2"])
def test_refined_cocharacters_nest_parabolics(name):
    e = build_embedding(name)
    faces = [f for f, _ in enumerate_faces(e.g_rs)]
    for f1 in faces:
        lam1 = face_cocharacter(e, f1)
        pd1 = parabolic_data(e, f1)
        for f2 in faces:
            if f1 <= f2:
                pd2 = parabolic_data(e, f2, coarser=(f1, lam1))
                assert set(pd1.puhat_roots) <= set(pd2.puhat_roots)
                assert set(pd2.lhat_roots) <= set(pd1.lhat_roots)
