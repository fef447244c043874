import pytest
from hypothesis import given, settings, strategies as st

from lrfaces.repcalc import (
    CharacterMultiset,
    NonDominantWeight,
    NotAModuleCharacter,
    brauer_decompose,
    freudenthal_character,
    tensor_decompose,
    weyl_dim,
)
from lrfaces.rootsys import build_root_system
from oracles import dominant_box, greedy_decompose, tensor_oracle, weyl_character


@pytest.mark.parametrize("spec,bound", [("A1", 4), ("A2", 2), ("B2", 2), ("C2", 2), ("A1xA1", 2), ("A3", 1)])
def test_freudenthal_matches_weyl_character(spec, bound):
    rs = build_root_system(spec)
    for lam in dominant_box(rs, bound):
        assert freudenthal_character(rs, lam).terms == weyl_character(rs, lam), lam


@pytest.mark.parametrize("spec", ["A1", "A2", "B2", "D4", "C3"])
def test_totals_equal_weyl_dimension(spec):
    rs = build_root_system(spec)
    for lam in dominant_box(rs, 2 if rs.rank <= 2 else 1):
        ch = freudenthal_character(rs, lam)
        assert ch.total == weyl_dim(rs, lam)
        assert ch.is_weyl_invariant()


def test_known_dimensions():
    # adjoint representations and a few standard modules
    assert weyl_dim(build_root_system("A2"), (1, 1)) == 8
    assert weyl_dim(build_root_system("B2"), (0, 2)) == 10
    assert weyl_dim(build_root_system("C3"), (2, 0, 0)) == 21
    assert weyl_dim(build_root_system("D4"), (0, 1, 0, 0)) == 28
    assert freudenthal_character(build_root_system("A2"), (1, 1))[(0, 0)] == 2


def test_clebsch_gordan():
    rs = build_root_system("A1")
    for a in range(5):
        for b in range(5):
            want = {(c,): 1 for c in range(abs(a - b), a + b + 1, 2)}
            assert tensor_decompose(rs, (a,), (b,)) == want


@pytest.mark.parametrize("spec", ["A1", "A2", "A1xA1"])
def test_klimyk_matches_oracle(spec):
    rs = build_root_system(spec)
    box = dominant_box(rs, 2)
    for a in box:
        for b in box:
            assert tensor_decompose(rs, a, b).terms == tensor_oracle(rs, a, b), (a, b)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "A1xA2"]), st.data())
def test_tensor_product_is_commutative_and_dimension_multiplicative(spec, data):
    rs = build_root_system(spec)
    w = st.lists(st.integers(0, 2), min_size=rs.rank, max_size=rs.rank).map(tuple)
    a, b = data.draw(w), data.draw(w)
    d = tensor_decompose(rs, a, b)
    assert d == tensor_decompose(rs, b, a)
    assert d.dimension(rs) == weyl_dim(rs, a) * weyl_dim(rs, b)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "C2"]), st.data())
def test_brauer_inverts_character_sums(spec, data):
    rs = build_root_system(spec)
    w = st.lists(st.integers(0, 2), min_size=rs.rank, max_size=rs.rank).map(tuple)
    terms = data.draw(st.dictionaries(w, st.integers(1, 3), min_size=1, max_size=4))
    ch = CharacterMultiset(rs, {})
    for lam, m in terms.items():
        ch = ch + freudenthal_character(rs, lam).scaled(m)
    assert brauer_decompose(rs, ch) == terms
    assert greedy_decompose(rs, ch.terms) == terms


def test_brauer_rejects_non_characters():
    rs = build_root_system("A2")
    bad = freudenthal_character(rs, (1, 1)) + freudenthal_character(rs, (0, 0)).scaled(-3)
    with pytest.raises(NotAModuleCharacter):
        brauer_decompose(rs, bad)


def test_non_dominant_input_raises():
    rs = build_root_system("A2")
    with pytest.raises(NonDominantWeight):
        weyl_dim(rs, (-1, 0))
    with pytest.raises(NonDominantWeight):
        tensor_decompose(rs, (1, 0), (0, -1))


def test_extraction_order_respects_dominance():
    # (0,3) lies below (1,1)+... only in root order; fundamental-lex order would start wrong
    rs = build_root_system("A2")
    ch = freudenthal_character(rs, (1, 1)) + freudenthal_character(rs, (0, 3))
    assert brauer_decompose(rs, ch) == {(1, 1): 1, (0, 3): 1}
