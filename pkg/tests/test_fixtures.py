import pytest
from hypothesis import given, settings, strategies as st

from hvdihedral.exactmath import Cyc
from hvdihedral.fixtures import dump_series, dump_series2, load_series, load_series2
from hvdihedral.quadratic import QuadOrder, characters_of_order, class_group, optimal_form_coeffs


@st.composite
def series(draw):
    n = draw(st.sampled_from([1, 3, 4, 6]))
    phi = len(Cyc.zero(n).coeffs)
    coeffs = draw(st.lists(st.lists(st.integers(-10 ** 6, 10 ** 6), min_size=phi, max_size=phi),
                           min_size=1, max_size=30))
    return n, [Cyc(n, c) for c in coeffs]


@settings(max_examples=50, deadline=None)
@given(series())
def test_series_round_trip(s):
    n, coeffs = s
    head, back = load_series(dump_series(coeffs, n, -23, "lbl"))
    assert back == coeffs
    assert head["n"] == str(n) and head["disc"] == "-23" and head["label"] == "lbl"


def test_series_rejects_bad_text():
    text = dump_series([Cyc(3, [1, 2]), Cyc(3, [0, 1])], 3, -23)
    with pytest.raises(ValueError):
        load_series(text.replace("truncation=1", "truncation=4"))
    with pytest.raises(ValueError):
        load_series(text.split("\n", 1)[1])
    with pytest.raises(ValueError):
        dump_series([Cyc(3, [1]) / 2], 3, -23)


def test_series2_round_trip():
    G = class_group(QuadOrder(-23))
    F = optimal_form_coeffs(characters_of_order(G, 3)[0], 8)
    head, back = load_series2(dump_series2(F, -23))
    assert back.a == F.a and (back.bound_m, back.bound_n, back.u, back.scale) == (F.bound_m, F.bound_n, F.u, F.scale)
