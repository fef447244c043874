import pytest
from hypothesis import given, settings, strategies as st

from lrfaces.rootsys import (
    RootSystemError,
    build_root_system,
    dominant_weights_up_to,
    enumerate_faces,
    levi_data,
    parse_face,
)

WEYL_ORDER = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "D4": 192, "A1xA1": 4, "A1xB2": 16}
POS_ROOTS = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "B3": 9, "C3": 9, "D4": 12, "A1xA1": 2, "A1xB2": 5}


@pytest.mark.parametrize("spec", sorted(WEYL_ORDER))
def test_orbit_of_rho_is_regular(spec):
    rs = build_root_system(spec)
    assert len(rs.orbit(rs.rho)) == WEYL_ORDER[spec]
    assert len(rs.positive_roots) == POS_ROOTS[spec]


def test_cartan_matrices():
    assert build_root_system("A2").cartan_matrix == ((2, -1), (-1, 2))
    # row i is the simple root alpha_i in fundamental coordinates
    assert build_root_system("B2").cartan_matrix == ((2, -2), (-1, 2))
    assert build_root_system("C2").cartan_matrix == ((2, -1), (-2, 2))
    d4 = build_root_system("D4").cartan_matrix
    assert d4[1] == (-1, 2, -1, -1)
    assert build_root_system("A1xT1").cartan_matrix == ((2, 0), (0, 0))


def test_bad_specs():
    for bad in ["", "E6", "B1", "D2", "A0", "Ax"]:
        with pytest.raises(RootSystemError):
            build_root_system(bad)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["A2", "B2", "C3", "A1xA2", "D4"]), st.data())
def test_to_dominant_is_in_orbit_and_dominant(spec, data):
    rs = build_root_system(spec)
    w = tuple(data.draw(st.lists(st.integers(-4, 4), min_size=rs.rank, max_size=rs.rank)))
    d, sign = rs.to_dominant(w)
    assert rs.is_dominant(d)
    assert d in rs.orbit(w)
    assert rs.inner(d, d) == rs.inner(w, w)
    assert sign in (1, -1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A2", "B3", "C2", "A1xA1"]), st.data())
def test_root_coords_round_trip(spec, data):
    rs = build_root_system(spec)
    w = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=rs.rank, max_size=rs.rank)))
    c = rs.root_coords(w)
    assert rs.from_root_coords([x for x in c]) == w if all(x.denominator == 1 for x in c) else True
    assert rs.from_eps(rs.to_eps(w)) == w


def test_face_dimensions_count_torus_coordinates():
    rs = build_root_system("A1xA1xT1")
    faces = [f for f, _ in enumerate_faces(rs)]
    assert len(faces) == 4
    assert [f.dim(rs) for f in faces] == [1, 2, 2, 3]
    assert faces[0].contains_weight(rs, (0, 0, 5))
    assert not faces[0].contains_weight(rs, (1, 0, 0))


def test_levi_data_a2():
    rs = build_root_system("A2")
    ld = levi_data(rs, rs.face([0]))
    assert ld.levi_simple_roots == (1,)
    assert len(ld.pu_positive_roots) == 2
    zero = levi_data(rs, rs.zero_face())
    assert len(zero.levi_positive_roots) == 3 and not zero.pu_positive_roots


def test_parse_face_grammar():
    rs = build_root_system("A3")
    assert parse_face(rs, "").support == frozenset()
    assert parse_face(rs, "full").support == frozenset({0, 1, 2})
    assert parse_face(rs, "1,3").support == frozenset({0, 2})
    with pytest.raises(RootSystemError):
        parse_face(rs, "4")
    with pytest.raises(RootSystemError):
        parse_face(rs, "a")


def test_dominant_box():
    rs = build_root_system("A2")
    assert len(dominant_weights_up_to(rs, 2)) == 9
    assert dominant_weights_up_to(rs, 0) == [(0, 0)]
