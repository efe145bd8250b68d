from fractions import Fraction

import pytest

from corpus import fixtures
from surfskein.kauffman_states import A, B
from surfskein.laurent import DELTA, LaurentPolynomial
from surfskein.oracle.generator import GeneratorSpec, generate
from surfskein.skein_poly import (
    NotAdequate,
    TooManyCrossings,
    bracket_decomposition,
    bracket_zero,
    coefficient_formula,
    jones_j0,
    make_key,
    normalize_class,
)

# contractible parts computed by the recursive oracle, then frozen
BRACKET_ZERO = {
    "curl_positive": [[3, -1]],
    "curl_negative": [[-3, -1]],
    "hopf_s2": [[-4, -1], [4, -1]],
    "trefoil_s2": [[-7, 1], [-3, -1], [5, -1]],
    "figure_eight_s2": [[-8, 1], [-4, -1], [0, 1], [4, -1], [8, 1]],
    "torus_link_2_4_s2": [[-10, -1], [-6, 1], [-2, -1], [6, -1]],
    "torus_knot_2_5_s2": [[-13, 1], [-9, -1], [-5, 1], [-1, -1], [7, -1]],
    "trefoil_sum_s2": [[-14, 1], [-10, -2], [-6, 1], [-2, -2], [2, 2], [10, 1]],
    "doubled_square_s2": [[-12, -1], [-8, 1], [-4, -3], [0, 2], [4, -2], [8, 2], [12, -1]],
    "torus4": [[-8, 1], [-4, -2], [0, 1], [4, 1]],
    "torus8": [[-14, -1], [-10, 5], [-6, -11], [-2, 7], [2, 7], [6, -11], [10, 5], [14, -1]],
    "torus_annular": [[-5, -1], [-1, 2], [3, 1]],
    "genus2_reduced": [
        [-23, -1], [-19, 8], [-15, -33], [-11, 88], [-7, -152], [-3, 143],
        [1, -31], [5, 134], [9, -106], [13, 41], [17, -9], [21, 1],
    ],
}

# keyed cleared numerators from the recursive oracle, then frozen
TORUS8_KEYS = {
    "2x(0, 1)": [[-8, 2], [-4, -8], [0, 8], [4, -8], [8, 2]],
    "2x(1, 0)": [[-8, 2], [-4, -8], [0, 8], [4, -8], [8, 2]],
    "4x(0, 1)": [[0, 1]],
    "4x(1, 0)": [[0, 1]],
    "2x(1, 1)": [[0, 2]],
    "2x(1, -1)": [[0, 2]],
}


def fx(name):
    return fixtures()[name]


@pytest.mark.parametrize("name", sorted(BRACKET_ZERO))
@pytest.mark.parametrize("engine", ["python", "compiled"])
def test_bracket_zero_frozen(name, engine):
    assert bracket_zero(fx(name), engine=engine).polynomial.to_pairs() == BRACKET_ZERO[name]


def test_unknown_engine():
    with pytest.raises(ValueError):
        bracket_zero(fx("trefoil_s2"), engine="gpu")


def test_crossing_limit():
    with pytest.raises(TooManyCrossings):
        bracket_zero(fx("torus8"), max_crossings=7)


def test_torus8_decomposition():
    dec = bracket_decomposition(fx("torus8"))
    assert {str(k): v.to_pairs() for k, v in dec.terms.items()} == TORUS8_KEYS
    assert dec.total_states == 256
    assert not any(k.signature_only for k in dec.terms)


def test_torus4_decomposition_keys():
    dec = bracket_decomposition(fx("torus4"))
    assert {str(k): v.to_pairs() for k, v in dec.terms.items()} == {
        "2x(0, 1)": [[-2, -1], [2, 1]],
        "2x(1, 0)": [[-2, -1], [2, 1]],
    }


def test_cleared_numerator_value():
    dec = bracket_decomposition(fx("torus8"))
    key = make_key(1, [(0, 1)] * 4)
    # a lone state with no contractible circle leaves a 1/delta coefficient
    assert dec.value(key) is None
    assert bracket_decomposition(fx("torus4")).terms[make_key(1, [(1, 0)] * 2)] == LaurentPolynomial.from_pairs(
        [(-2, -1), (2, 1)]
    )


def test_genus2_keys_are_flagged():
    dec = bracket_decomposition(generate(GeneratorSpec(2, 6, 1)))
    assert dec.terms and all(k.signature_only for k in dec.terms)
    assert all(k.to_json()["signature_only"] for k in dec.terms)


def test_torus_key_normalization():
    assert normalize_class((0, -2)) == (0, 2)
    assert make_key(1, [(0, -1), (0, 1)]) == make_key(1, [(0, 1), (0, 1)])
    key = make_key(1, [(1, -1)] * 3)
    assert key.multiplicity == 3 and key.slope == (1, -1)


def test_state_partition():
    for name in ("torus4", "torus8", "torus_annular"):
        dec = bracket_decomposition(fx(name))
        assert dec.total_states == 1 << fx(name).num_crossings


def test_extreme_coefficient_accessors():
    z = bracket_zero(fx("torus8"))
    assert (z.a_top, z.a_second, z.b_bottom, z.b_second) == (-1, 5, -1, 5)
    assert z.degree_residues() == {2}


def test_j0_known_values():
    assert str(jones_j0(fx("trefoil_s2"))) == "t^-1 + t^-3 - t^-4"
    assert str(jones_j0(fx("figure_eight_s2"))) == "t^2 - t + 1 - t^-1 + t^-2"
    assert str(jones_j0(fx("hopf_s2"))) == "-t^(-1/2) - t^(-5/2)"
    assert jones_j0(fx("trefoil_s2")).to_json() == [["-4", -1], ["-3", 1], ["-1", 1]]


@pytest.mark.parametrize("name", ["curl_positive", "curl_negative"])
def test_curls_normalize_to_one(name):
    assert jones_j0(fx(name)).terms() == [(Fraction(0), 1)]


def test_predictions_torus8():
    for side in (A, B):
        p = coefficient_formula(fx("torus8"), side)
        assert (p.circles, p.e_prime, p.top, p.second) == (4, 8, 1, 5)


def test_prediction_annular():
    p = coefficient_formula(fx("torus_annular"), B)
    assert (p.circles, p.e_prime, p.second) == (2, 3, 2)
    assert abs(bracket_zero(fx("torus_annular")).b_second) == 2


def test_prediction_needs_adequacy():
    with pytest.raises(NotAdequate):
        coefficient_formula(fx("torus4"), A)


def test_delta():
    assert DELTA == LaurentPolynomial.from_pairs([(2, -1), (-2, -1)])
